//! Dirichlet characters stored as exponent vectors against the generators
//! of [`CharacterGroup`].

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use super::factor::mul_mod;
use super::group::{reduce, unit_group, CharacterGroup};
use crate::{Error, Result};

/// `e(num / den) = exp(2 pi i num / den)` with `0 <= num < den`, reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let num = num % den;
        let g = num.gcd(&den);
        RootOfUnity { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&other.den);
        let a = mul_mod(self.num, den / self.den, den);
        let b = mul_mod(other.num, den / other.den, den);
        RootOfUnity::new((a + b) % den, den)
    }

    pub fn conj(self) -> RootOfUnity {
        RootOfUnity::new(self.den - self.num, self.den)
    }

    pub fn to_complex(self) -> Complex64 {
        root_to_complex(self.num, self.den)
    }
}

/// `e(k / n)` as a complex double; exact at the fourth roots of unity.
pub fn root_to_complex(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = std::f64::consts::TAU * (k as f64 / n as f64);
    Complex64::from_polar(1.0, theta)
}

/// A Dirichlet character modulo `q`: `chi(prod g_i^{l_i}) = prod e(a_i l_i / n_i)`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    exponents: Vec<u64>,
    /// `a_i * (N / n_i) mod N` with `N` the group exponent.
    weights: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl DirichletCharacter {
    /// Character with the given exponents (reduced modulo the generator orders).
    pub fn new(group: Arc<CharacterGroup>, exponents: &[u64]) -> Self {
        assert_eq!(exponents.len(), group.rank(), "exponent vector has wrong length");
        let big_n = group.exponent();
        let exponents: Vec<u64> =
            exponents.iter().zip(group.orders()).map(|(&a, &n)| a % n).collect();
        let weights = exponents
            .iter()
            .zip(group.orders())
            .map(|(&a, &n)| mul_mod(a, big_n / n, big_n))
            .collect();
        DirichletCharacter { group, exponents, weights }
    }

    pub fn principal(q: u64) -> Self {
        let group = unit_group(q);
        let zeros = vec![0; group.rank()];
        DirichletCharacter::new(group, &zeros)
    }

    pub fn group(&self) -> &Arc<CharacterGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `q:[a_1,a_2,...]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        format!("{}:[{}]", self.modulus(), parts.join(","))
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.orders())
            .fold(1, |acc, (&a, &n)| acc.lcm(&(n / a.gcd(&n))))
    }

    /// Value at `n` as `k` with `chi(n) = e(k / N)`, `N = group().exponent()`.
    #[inline]
    pub fn exponent_at(&self, n: i64) -> Option<u64> {
        self.group.weighted_log(&self.weights, n)
    }

    pub fn value(&self, n: i64) -> Option<RootOfUnity> {
        self.exponent_at(n).map(|k| RootOfUnity::new(k, self.group.exponent()))
    }

    /// `chi(n)`; zero off the units.
    pub fn eval(&self, n: i64) -> Complex64 {
        match self.exponent_at(n) {
            Some(k) => root_to_complex(k, self.group.exponent()),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `chi(x)` for rational `x`: zero unless `x` is an integer.
    pub fn eval_rational(&self, x: Ratio<i64>) -> Complex64 {
        if x.is_integer() {
            self.eval(x.to_integer())
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Values at `0, 1, ..., q - 1`.
    pub fn table(&self) -> Vec<Complex64> {
        (0..self.modulus() as i64).map(|n| self.eval(n)).collect()
    }

    pub fn conj(&self) -> DirichletCharacter {
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(self.group.orders())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        DirichletCharacter::new(Arc::clone(&self.group), &exps)
    }

    /// `chi(-1)` as `+1` or `-1`.
    pub fn parity(&self) -> i8 {
        let k = self.exponent_at(-1).expect("-1 is a unit");
        if k == 0 {
            1
        } else {
            debug_assert_eq!(2 * k, self.group.exponent());
            -1
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == -1
    }

    /// Smallest `d | q` such that `chi` is trivial on units `= 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        let mut f = 1u64;
        let mut idx = 0usize;
        for (p, e, _) in self.group.factorization().prime_powers() {
            if p == 2 {
                match e {
                    1 => {}
                    2 => {
                        if self.exponents[idx] != 0 {
                            f *= 4;
                        }
                        idx += 1;
                    }
                    _ => {
                        let sign = self.exponents[idx];
                        let b = self.exponents[idx + 1];
                        let n5 = self.group.orders()[idx + 1];
                        if b != 0 {
                            let ord = n5 / b.gcd(&n5);
                            f *= 4 * ord;
                        } else if sign != 0 {
                            f *= 4;
                        }
                        idx += 2;
                    }
                }
            } else {
                let a = self.exponents[idx];
                let n = self.group.orders()[idx];
                if a != 0 {
                    let mut ord = n / a.gcd(&n);
                    let mut pf = p;
                    while ord % p == 0 {
                        ord /= p;
                        pf *= p;
                    }
                    f *= pf;
                }
                idx += 1;
            }
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character inducing `self`.
    pub fn star(&self) -> DirichletCharacter {
        let f = self.conductor();
        if f == self.modulus() {
            return self.clone();
        }
        let q = self.modulus();
        from_generator_values(unit_group(f), |h| {
            let lift = lift_unit(h, f, q);
            self.value(lift as i64).expect("lift is a unit")
        })
    }

    /// The character modulo `m` (a multiple of `q`) induced by `self`.
    pub fn lift(&self, m: u64) -> Result<DirichletCharacter> {
        product(self, &DirichletCharacter::principal(1), m)
    }
}

/// Smallest `n = h (mod f)` with `n >= 0` coprime to `q`.
fn lift_unit(h: u64, f: u64, q: u64) -> u64 {
    let mut n = h % f;
    while n.gcd(&q) != 1 {
        n += f;
    }
    n
}

/// Builds the character of `group` whose value on each generator is given.
fn from_generator_values(
    group: Arc<CharacterGroup>,
    value_at: impl Fn(u64) -> RootOfUnity,
) -> DirichletCharacter {
    let exps: Vec<u64> = group
        .generators()
        .iter()
        .zip(group.orders())
        .map(|(&g, &n)| {
            let v = value_at(g);
            // v^n = 1, so v = e(a / n) with a = num * n / den
            debug_assert_eq!(n % v.den(), 0, "value is not an n-th root of unity");
            v.num() * (n / v.den())
        })
        .collect();
    DirichletCharacter::new(group, &exps)
}

/// All characters modulo `q`, principal first, lexicographic in the exponents.
pub fn characters(q: u64) -> Vec<DirichletCharacter> {
    let group = unit_group(q);
    let orders = group.orders().to_vec();
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut exps = vec![0u64; orders.len()];
    for _ in 0..total {
        out.push(DirichletCharacter::new(Arc::clone(&group), &exps));
        for i in (0..exps.len()).rev() {
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
    out
}

/// Primitive characters modulo `q` in enumeration order.
pub fn primitive_characters(q: u64) -> Vec<DirichletCharacter> {
    characters(q).into_iter().filter(|c| c.is_primitive()).collect()
}

/// The character modulo `m` agreeing with `chi * psi` on units mod `m`.
pub fn product(
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    m: u64,
) -> Result<DirichletCharacter> {
    for q in [chi.modulus(), psi.modulus()] {
        if m == 0 || m % q != 0 {
            return Err(Error::NotDivisible { divisor: q, n: m });
        }
    }
    Ok(from_generator_values(unit_group(m), |h| {
        let a = chi.value(h as i64).expect("unit mod m is a unit mod q");
        let b = psi.value(h as i64).expect("unit mod m is a unit mod q");
        a.mul(b)
    }))
}

/// Number of primitive characters modulo `q` with `chi(-1) = sign`.
pub fn count_primitive_with_parity(q: u64, sign: i8) -> usize {
    characters(q)
        .iter()
        .filter(|c| c.is_primitive() && c.parity() == sign)
        .count()
}

/// Number of primitive `psi` modulo `m` with `psi xi` of conductor at least
/// `min_conductor` and with the given parity, taken of `psi xi` when
/// `parity_of_product` is set and of `psi` otherwise. `xi` has modulus dividing `m`.
pub fn count_primitive_twists(
    m: u64,
    xi: &DirichletCharacter,
    sign: i8,
    parity_of_product: bool,
    min_conductor: u64,
) -> Result<usize> {
    let mut count = 0;
    for psi in primitive_characters(m) {
        let prod = product(&psi, xi, m)?;
        let parity = if parity_of_product { prod.parity() } else { psi.parity() };
        if parity == sign && prod.conductor() >= min_conductor {
            count += 1;
        }
    }
    Ok(count)
}

/// Reduces `n` modulo `q` into `[0, q)`.
pub fn residue(n: i64, q: u64) -> u64 {
    reduce(n, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    /// Minimal d | q such that chi is trivial on all units = 1 mod d.
    fn brute_conductor(chi: &DirichletCharacter) -> u64 {
        let q = chi.modulus();
        (1..=q)
            .filter(|d| q % d == 0)
            .find(|&d| {
                (0..q as i64)
                    .filter(|&n| n.gcd(&(q as i64)) == 1 && (n as u64) % d == 1 % d)
                    .all(|n| chi.exponent_at(n) == Some(0))
            })
            .unwrap()
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(characters(1).len(), 1);
        assert!(characters(1)[0].is_principal());
        assert_eq!(characters(5).len(), 4);
        let chars = characters(12);
        assert_eq!(chars.len(), 4);
        assert!(chars[0].is_principal());
        assert_eq!(chars.iter().filter(|c| c.is_principal()).count(), 1);
        let conductors: BTreeSet<u64> = chars.iter().map(|c| c.conductor()).collect();
        assert_eq!(conductors, BTreeSet::from([1, 3, 4, 12]));
        assert_eq!(chars[1].exponents(), &[0, 1]);
    }

    #[test]
    fn evaluation_examples() {
        assert!(close(characters(6)[0].eval(5), Complex64::new(1.0, 0.0)));
        for chi in characters(6) {
            assert_eq!(chi.eval_rational(Ratio::new(1, 2)), Complex64::new(0.0, 0.0));
        }
        let chi3 = &characters(3)[1];
        assert_eq!(chi3.eval(2), Complex64::new(-1.0, 0.0));
        assert_eq!(chi3.eval(3), Complex64::new(0.0, 0.0));
        assert_eq!(chi3.eval_rational(Ratio::new(4, 2)), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(DirichletCharacter::principal(10).parity(), 1);
        assert_eq!(characters(3)[1].parity(), -1);
        assert_eq!(characters(4)[1].parity(), -1);
    }

    #[test]
    fn multiplicativity() {
        for q in [7u64, 8, 9, 12, 15, 16, 20, 27] {
            for chi in characters(q) {
                for m in 0..q as i64 {
                    for n in 0..q as i64 {
                        assert!(close(chi.eval(m * n), chi.eval(m) * chi.eval(n)));
                    }
                }
            }
        }
    }

    #[test]
    fn conductor_matches_brute_force() {
        for q in 1..=100u64 {
            for chi in characters(q) {
                assert_eq!(chi.conductor(), brute_conductor(&chi), "{chi}");
            }
        }
    }

    #[test]
    fn star_of_mod6_character() {
        let chi3 = characters(3)[1].clone();
        let lifted = chi3.lift(6).unwrap();
        assert_eq!(lifted.conductor(), 3);
        assert_eq!(lifted.star(), chi3);
        assert_eq!(chi3.star(), chi3);
        assert_eq!(DirichletCharacter::principal(6).conductor(), 1);
    }

    #[test]
    fn star_soundness_exhaustive() {
        for q in 1..=100u64 {
            for chi in characters(q) {
                let star = chi.star();
                assert!(star.is_primitive());
                assert_eq!(star.modulus(), chi.conductor());
                assert_eq!(star.star(), star);
                for n in 0..q as i64 {
                    if n.gcd(&(q as i64)) == 1 {
                        assert_eq!(chi.value(n), star.value(n), "{chi} at {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let chi3 = characters(3)[1].clone();
        let chi4 = characters(4)[1].clone();
        let p1 = DirichletCharacter::principal(3);
        assert_eq!(product(&chi3, &p1, 3).unwrap(), chi3);
        assert!(product(&chi3, &chi3, 3).unwrap().is_principal());
        let chi12 = product(&chi3, &chi4, 12).unwrap();
        assert_eq!(chi12.parity(), 1);
        assert_eq!(chi12.conductor(), 12);
        assert_eq!(
            product(&chi3, &chi4, 6),
            Err(Error::NotDivisible { divisor: 4, n: 6 })
        );
    }

    #[test]
    fn product_values_exhaustive() {
        for (q1, q2, m) in [(3u64, 4u64, 12u64), (5, 10, 20), (9, 6, 36), (8, 12, 48)] {
            for chi in characters(q1) {
                for psi in characters(q2) {
                    let prod = product(&chi, &psi, m).unwrap();
                    for n in 0..m as i64 {
                        let expect = if n.gcd(&(m as i64)) == 1 {
                            chi.eval(n) * psi.eval(n)
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        assert!(close(prod.eval(n), expect));
                    }
                }
            }
        }
    }

    #[test]
    fn parity_counts_small() {
        assert_eq!(count_primitive_with_parity(3, -1), 1);
        assert_eq!(count_primitive_with_parity(3, 1), 0);
        assert_eq!(count_primitive_with_parity(8, 1) + count_primitive_with_parity(8, -1), 2);
    }

    #[test]
    fn parity_classes_are_balanced() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 125, 243] {
            let bound = crate::chargroup::phi_star(q) as i64 / 2 - 1;
            for sign in [1, -1] {
                assert!(count_primitive_with_parity(q, sign) as i64 >= bound, "q = {q}");
            }
        }
    }

    #[test]
    fn twist_counts() {
        // mod 5 the primitive characters are 5:[1], 5:[2], 5:[3]; only 5:[2] is even
        let quad = characters(5)[2].clone();
        assert_eq!(count_primitive_twists(5, &quad, 1, false, 5).unwrap(), 0);
        assert_eq!(count_primitive_twists(5, &quad, -1, false, 5).unwrap(), 2);
        let trivial = DirichletCharacter::principal(1);
        for q in [7u64, 16, 27] {
            for sign in [1, -1] {
                assert_eq!(
                    count_primitive_twists(q, &trivial, sign, true, q).unwrap(),
                    count_primitive_with_parity(q, sign)
                );
            }
        }
        assert!(count_primitive_twists(9, &characters(5)[1], 1, true, 1).is_err());
    }

    #[test]
    fn conj_is_inverse() {
        for chi in characters(21) {
            assert!(product(&chi, &chi.conj(), 21).unwrap().is_principal());
        }
    }

    #[test]
    fn root_arithmetic() {
        let a = RootOfUnity::new(1, 3);
        let b = RootOfUnity::new(2, 6);
        assert_eq!(a, b);
        assert_eq!(a.mul(a.conj()), RootOfUnity::ONE);
        assert_eq!(RootOfUnity::new(1, 4).to_complex(), Complex64::new(0.0, 1.0));
    }
}
