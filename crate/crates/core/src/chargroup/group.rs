//! The unit group `(Z/qZ)^x` as a product of cyclic factors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::factor::{factor_u64, mul_mod, pow_mod, Factorization};

/// Prime-power components up to this size get a full discrete-log table.
const TABLE_LIMIT: u64 = 1 << 22;

/// `(Z/qZ)^x` written as `prod <g_i>` with `g_i` of order `n_i`.
///
/// Generators are listed prime by prime in increasing order. An odd prime
/// power contributes one primitive root; `4` contributes `-1`; `2^e` with
/// `e >= 3` contributes `-1` followed by `5`. Every generator is a residue
/// mod `q` that is `1` modulo the other prime-power components.
#[derive(Debug)]
pub struct CharacterGroup {
    modulus: u64,
    factorization: Factorization,
    components: Vec<Component>,
    generators: Vec<u64>,
    orders: Vec<u64>,
    exponent: u64,
}

#[derive(Debug)]
struct Component {
    prime: u64,
    pe: u64,
    first: usize,
    kind: Kind,
    table: OnceLock<Vec<u32>>,
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    /// `2^1`: the group is trivial.
    Trivial,
    /// Cyclic, generated by `root` (a residue mod `pe`).
    Cyclic { root: u64, order: u64 },
    /// `2^e`, `e >= 3`: `{+-1} x <5>` with `<5>` of order `order5`.
    TwoPower { order5: u64 },
}

/// Returns the (cached) unit group modulo `q`.
///
/// # Panics
/// If `q == 0`.
pub fn unit_group(q: u64) -> Arc<CharacterGroup> {
    assert!(q >= 1, "modulus must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CharacterGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(&q) {
        return Arc::clone(g);
    }
    let group = Arc::new(CharacterGroup::build(q));
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(q).or_insert(group))
}

impl CharacterGroup {
    fn build(q: u64) -> Self {
        let factorization = factor_u64(q);
        let mut components = Vec::new();
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e, pe) in factorization.prime_powers() {
            let first = generators.len();
            let lift = |r: u64| crt_lift(r, pe, q);
            let kind = if p == 2 {
                match e {
                    1 => Kind::Trivial,
                    2 => {
                        generators.push(lift(3));
                        orders.push(2);
                        Kind::Cyclic { root: 3, order: 2 }
                    }
                    _ => {
                        let order5 = pe / 4;
                        generators.push(lift(pe - 1));
                        orders.push(2);
                        generators.push(lift(5));
                        orders.push(order5);
                        Kind::TwoPower { order5 }
                    }
                }
            } else {
                let root = primitive_root_prime_power(p, e);
                let order = pe / p * (p - 1);
                generators.push(lift(root));
                orders.push(order);
                Kind::Cyclic { root, order }
            };
            components.push(Component { prime: p, pe, first, kind, table: OnceLock::new() });
        }
        let exponent = orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        CharacterGroup { modulus: q, factorization, components, generators, orders, exponent }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `lcm` of the generator orders; every character value is an `exponent`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `phi(q)`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_unit(&self, n: i64) -> bool {
        let r = reduce(n, self.modulus);
        self.factorization.primes().all(|p| r % p != 0)
    }

    /// Discrete logarithms of `n` against the generators, or `None` for a non-unit.
    pub fn logs(&self, n: i64) -> Option<Vec<u64>> {
        let mut out = vec![0; self.rank()];
        self.logs_into(n, &mut out).then_some(out)
    }

    /// Writes the discrete logarithms into `out` (length `rank()`); false for non-units.
    pub fn logs_into(&self, n: i64, out: &mut [u64]) -> bool {
        let r = reduce(n, self.modulus);
        for comp in &self.components {
            let local = r % comp.pe;
            if local % comp.prime == 0 {
                return false;
            }
            match comp.kind {
                Kind::Trivial => {}
                Kind::Cyclic { root, order } => {
                    out[comp.first] = comp.dlog(local, root, order);
                }
                Kind::TwoPower { order5 } => {
                    let (sign, m) = if local % 4 == 1 { (0, local) } else { (1, comp.pe - local) };
                    out[comp.first] = sign;
                    out[comp.first + 1] = comp.dlog(m, 5, order5);
                }
            }
        }
        true
    }

    /// `sum_i weights[i] * log_i(n) mod exponent`, without allocating.
    pub(crate) fn weighted_log(&self, weights: &[u64], n: i64) -> Option<u64> {
        let r = reduce(n, self.modulus);
        let big_n = self.exponent;
        let mut acc = 0u64;
        for comp in &self.components {
            let local = r % comp.pe;
            if local % comp.prime == 0 {
                return None;
            }
            match comp.kind {
                Kind::Trivial => {}
                Kind::Cyclic { root, order } => {
                    let w = weights[comp.first];
                    if w != 0 {
                        acc = (acc + mul_mod(w, comp.dlog(local, root, order), big_n)) % big_n;
                    }
                }
                Kind::TwoPower { order5 } => {
                    let (sign, m) = if local % 4 == 1 { (0, local) } else { (1, comp.pe - local) };
                    if sign == 1 {
                        acc = (acc + weights[comp.first]) % big_n;
                    }
                    let w = weights[comp.first + 1];
                    if w != 0 {
                        acc = (acc + mul_mod(w, comp.dlog(m, 5, order5), big_n)) % big_n;
                    }
                }
            }
        }
        Some(acc)
    }

    /// Residue mod `q` equal to `prod g_i^{e_i}`.
    pub fn element(&self, exponents: &[u64]) -> u64 {
        let q = self.modulus;
        self.generators
            .iter()
            .zip(exponents)
            .fold(1 % q, |acc, (&g, &e)| mul_mod(acc, pow_mod(g, e, q), q))
    }
}

impl Component {
    fn dlog(&self, x: u64, base: u64, order: u64) -> u64 {
        if self.pe <= TABLE_LIMIT {
            let table = self.table.get_or_init(|| {
                let mut t = vec![u32::MAX; self.pe as usize];
                let mut y = 1u64;
                for k in 0..order {
                    t[y as usize] = k as u32;
                    y = mul_mod(y, base, self.pe);
                }
                t
            });
            let v = table[x as usize];
            debug_assert!(v != u32::MAX, "{x} not in <{base}> mod {}", self.pe);
            v as u64
        } else {
            baby_step_giant_step(base, x, order, self.pe)
        }
    }
}

pub(crate) fn reduce(n: i64, q: u64) -> u64 {
    (n as i128).rem_euclid(q as i128) as u64
}

/// `x` with `x = r mod pe` and `x = 1 mod q / pe`.
fn crt_lift(r: u64, pe: u64, q: u64) -> u64 {
    let rest = q / pe;
    if rest == 1 {
        return r % pe;
    }
    // x = 1 + rest * t with rest * t = r - 1 (mod pe)
    let inv = mod_inverse(rest % pe, pe).expect("coprime CRT components");
    let t = mul_mod((r + pe - 1) % pe, inv, pe);
    (1 + (rest as u128 * t as u128) % q as u128) as u64 % q
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let phi_p = p - 1;
    let prime_factors: Vec<u64> = factor_u64(phi_p).primes().collect();
    let g = (2..p)
        .find(|&g| prime_factors.iter().all(|&r| pow_mod(g, phi_p / r, p) != 1))
        .unwrap_or(1); // p = 2 never reaches here; p = 3 gives 2
    if e == 1 {
        return g;
    }
    let p2 = p * p;
    if pow_mod(g, phi_p, p2) == 1 {
        g + p
    } else {
        g
    }
}

fn baby_step_giant_step(base: u64, target: u64, order: u64, m: u64) -> u64 {
    let step = (order as f64).sqrt().ceil() as u64 + 1;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut y = 1u64;
    for j in 0..step {
        baby.entry(y).or_insert(j);
        y = mul_mod(y, base, m);
    }
    let giant = mod_inverse(pow_mod(base, step, m), m).expect("unit base");
    let mut gamma = target % m;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return (i * step + j) % order;
        }
        gamma = mul_mod(gamma, giant, m);
    }
    panic!("{target} is not a power of {base} mod {m}");
}
