//! Bernoulli functions, Gauss sums and `L(1, chi)` for odd characters.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use crate::chargroup::{
    dirichlet_convolve, mobius, product, residue, root_to_complex, DirichletCharacter,
};
use crate::{Error, Result};

pub type Rational = Ratio<i64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
fn div_pi_i(z: Complex64) -> Complex64 {
    z / (PI * I)
}

/// First Bernoulli function: `0` on integers, `x - floor(x) - 1/2` otherwise.
pub fn b1(x: Rational) -> Rational {
    if x.is_integer() {
        Rational::from_integer(0)
    } else {
        x - x.floor() - Rational::new(1, 2)
    }
}

/// `B1(m / n)` as a double, computed from the integer residue.
#[inline]
pub fn b1_frac(m: i64, n: u64) -> f64 {
    let r = residue(m, n);
    if r == 0 {
        0.0
    } else {
        (2 * r as i64 - n as i64) as f64 / (2 * n) as f64
    }
}

/// `tau(chi, l) = sum_{n mod q} chi(n) e(n l / q)`, by direct summation.
pub fn gauss_sum(chi: &DirichletCharacter, l: i64) -> Complex64 {
    let q = chi.modulus();
    let big_n = chi.group().exponent();
    let l = residue(l, q);
    (0..q)
        .filter_map(|n| {
            let k = chi.exponent_at(n as i64)?;
            Some(root_to_complex(k, big_n) * root_to_complex(n * l % q, q))
        })
        .sum()
}

/// `tau(psi, l)` through the primitive character inducing a non-principal `psi`:
///
/// `tau(psi*) sum_{k | l, k | d/q(psi)} k conj(psi*)(l/k) psi*(d/(k q(psi))) mu(d/(k q(psi)))`.
pub fn gauss_sum_via_primitive(psi: &DirichletCharacter, l: i64) -> Result<Complex64> {
    if psi.is_principal() {
        return Err(Error::Principal(psi.label()));
    }
    Ok(gauss_sum_induced(psi, l))
}

/// Same formula without the non-principal restriction; for principal `psi`
/// it reduces to the Ramanujan sum.
pub(crate) fn gauss_sum_induced(psi: &DirichletCharacter, l: i64) -> Complex64 {
    let star = psi.star();
    let f = star.modulus();
    let m = psi.modulus() / f;
    let star_bar = star.conj();
    let inner: Complex64 = crate::chargroup::divisors(m)
        .into_iter()
        .filter(|&k| l % k as i64 == 0)
        .map(|k| {
            let rest = (m / k) as i64;
            star_bar.eval(l / k as i64) * star.eval(rest) * (k as f64 * mobius(rest as u64) as f64)
        })
        .sum();
    gauss_sum(&star, 1) * inner
}

/// `B1,chi(x) = sum_{r mod q} conj(chi)(r) B1((x + r) / q)` for primitive `chi`.
pub fn b1_chi(chi: &DirichletCharacter, x: Rational) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive(chi.label()));
    }
    Ok(b1_chi_unchecked(chi, x))
}

pub(crate) fn b1_chi_unchecked(chi: &DirichletCharacter, x: Rational) -> Complex64 {
    let q = chi.modulus() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..q {
        let v = chi.eval(r);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let b = b1((x + r) / q);
        acc += v.conj() * (*b.numer() as f64 / *b.denom() as f64);
    }
    acc
}

/// Truncation of `-tau(conj chi)/(2 pi i) sum_{l != 0} chi(l)/l e(l x / q)` to
/// `0 < |l| <= terms`, pairing `l` with `-l`.
pub fn b1_chi_series(chi: &DirichletCharacter, x: Rational, terms: u64) -> Complex64 {
    let q = chi.modulus() as f64;
    let xf = *x.numer() as f64 / *x.denom() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..=terms as i64 {
        let theta = std::f64::consts::TAU * (l as f64) * xf / q;
        let e_plus = Complex64::from_polar(1.0, theta);
        let pair = chi.eval(l) * e_plus - chi.eval(-l) * e_plus.conj();
        acc += pair / l as f64;
    }
    -gauss_sum(&chi.conj(), 1) / (2.0 * PI * I) * acc
}

/// `L(1, chi)` together with the character and modulus it was evaluated at.
#[derive(Debug, Clone)]
pub struct LValue {
    pub character: DirichletCharacter,
    pub modulus: u64,
    pub value: Complex64,
}

/// `L(1, chi)` for an odd character modulo `M`.
///
/// The primitive value comes from `L(1, chi*) = -pi i B1,chi*(0) / tau(conj chi*)`;
/// an imprimitive `chi` picks up `prod (1 - chi*(p)/p)` over `p | M`, `p` not dividing `q(chi)`.
pub fn l_one(chi: &DirichletCharacter) -> Result<LValue> {
    if !chi.is_odd() {
        return Err(Error::EvenCharacter(chi.label()));
    }
    let star = chi.star();
    let f = star.modulus();
    let b = b1_chi_unchecked(&star, Rational::from_integer(0));
    let mut value = -PI * I * b / gauss_sum(&star.conj(), 1);
    for p in chi.group().factorization().primes() {
        if f % p != 0 {
            value *= Complex64::new(1.0, 0.0) - star.eval(p as i64) / p as f64;
        }
    }
    Ok(LValue { character: chi.clone(), modulus: chi.modulus(), value })
}

/// Closed form of `sum_{r mod c} chi(r) B1(r/c)` for `chi` modulo `d | c`.
pub fn char_sum_b1(chi: &DirichletCharacter, c: u64) -> Result<Complex64> {
    let d = chi.modulus();
    if c == 0 || c % d != 0 {
        return Err(Error::NotDivisible { divisor: d, n: c });
    }
    if !chi.is_odd() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let star = chi.star();
    let conv: Complex64 = dirichlet_convolve(
        |k| star.eval(k as i64) * mobius(k) as f64,
        |_| Complex64::new(1.0, 0.0),
        d,
    );
    let l = l_one(&star.conj())?.value;
    Ok(-div_pi_i(gauss_sum(&star, 1)) * conv * l)
}

/// `sum_{r mod c} chi(r) B1(r/c)` by direct summation.
pub fn char_sum_b1_brute(chi: &DirichletCharacter, c: u64) -> Complex64 {
    (0..c as i64).map(|r| chi.eval(r) * b1_frac(r, c)).sum()
}

/// Closed form of `sum_{t mod c} psi(t/(c/d)) B1,chi(t/(c/q))` for `psi` modulo
/// `d | c` and primitive `chi` modulo `q | c`.
pub fn char_sum_b1chi(psi: &DirichletCharacter, chi: &DirichletCharacter, c: u64) -> Result<Complex64> {
    let (d, q) = (psi.modulus(), chi.modulus());
    for m in [d, q] {
        if c == 0 || c % m != 0 {
            return Err(Error::NotDivisible { divisor: m, n: c });
        }
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive(chi.label()));
    }
    if chi.parity() * psi.parity() == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let star = psi.star();
    let f = star.modulus();
    let conv: Complex64 = dirichlet_convolve(
        |k| chi.eval(k as i64),
        |m| star.eval(m as i64) * mobius(m) as f64,
        d / f,
    );
    let twisted = product(chi, &star.conj(), q.lcm(&f))?;
    let l = l_one(&twisted)?.value;
    Ok(-div_pi_i(gauss_sum(&chi.conj(), 1) * gauss_sum(&star, 1)) * conv * l)
}

/// The same sum evaluated term by term.
pub fn char_sum_b1chi_brute(
    psi: &DirichletCharacter,
    chi: &DirichletCharacter,
    c: u64,
) -> Result<Complex64> {
    let (d, q) = (psi.modulus() as i64, chi.modulus() as i64);
    let c = c as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for t in 0..c {
        let v = psi.eval_rational(Rational::new(t, c / d));
        if v.norm_sqr() == 0.0 {
            continue;
        }
        acc += v * b1_chi(chi, Rational::new(t, c / q))?;
    }
    Ok(acc)
}
