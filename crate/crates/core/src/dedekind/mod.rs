//! The generalized Dedekind sum
//!
//! `S(a, c) = sum_{j mod c} sum_{n mod q1} conj(chi2)(j) conj(chi1)(n) B1(j/c) B1(n/q1 + a j/c)`
//!
//! evaluated four ways: the double sum itself, the single sum against
//! `B1,chi1`, the form with one Bernoulli factor replaced by `j/c`, and the
//! cotangent expansion. The first and third are accumulated exactly as
//! integer combinations of roots of unity.

mod gamma;
mod symmetry;

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::analytic::{b1, b1_chi, b1_frac, gauss_sum, Rational};
use crate::chargroup::{residue, root_to_complex, DirichletCharacter};
use crate::{Error, Result};

pub use gamma::{crossed_hom_residual, random_gamma0, s_matrix, GammaMatrix};
pub use symmetry::{
    inverse_residuals, negate_residual, scale_residual, InverseResiduals,
};

/// `(1 / scale) * sum_k coeffs[k] e(k / den)`, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSum {
    den: u64,
    scale: i64,
    coeffs: Vec<i64>,
}

impl CyclotomicSum {
    pub fn to_complex(&self) -> Complex64 {
        let total: Complex64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| root_to_complex(k as u64, self.den) * c as f64)
            .sum();
        total / self.scale as f64
    }

    /// The exact value when every contributing root of unity is `+1` or `-1`.
    pub fn as_rational(&self) -> Option<Rational> {
        let mut num = 0i64;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = k as u64;
            if k == 0 {
                num += c;
            } else if 2 * k == self.den {
                num -= c;
            } else {
                return None;
            }
        }
        Some(Rational::new(num, self.scale))
    }
}

/// A pair of characters `(chi1 mod q1, chi2 mod q2)`.
///
/// Any pair is accepted; the original setting (both nontrivial primitive,
/// `chi1 chi2(-1) = 1`) is reported by [`CharacterPair::is_standard`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterPair {
    pub chi1: DirichletCharacter,
    pub chi2: DirichletCharacter,
}

impl CharacterPair {
    pub fn new(chi1: DirichletCharacter, chi2: DirichletCharacter) -> Self {
        CharacterPair { chi1, chi2 }
    }

    /// `q1 q2`.
    pub fn level(&self) -> u64 {
        self.chi1.modulus() * self.chi2.modulus()
    }

    /// `chi1 chi2(-1)`.
    pub fn parity(&self) -> i8 {
        self.chi1.parity() * self.chi2.parity()
    }

    pub fn is_standard(&self) -> bool {
        self.check_standard().is_ok()
    }

    /// Names the first failed hypothesis of the nontrivial-primitive setting.
    pub fn check_standard(&self) -> Result<()> {
        for (name, chi) in [("chi1", &self.chi1), ("chi2", &self.chi2)] {
            if chi.is_principal() {
                return Err(Error::Hypothesis(format!("{name} = {chi} is trivial")));
            }
            if !chi.is_primitive() {
                return Err(Error::Hypothesis(format!("{name} = {chi} is not primitive")));
            }
        }
        if self.parity() != 1 {
            return Err(Error::Hypothesis(format!(
                "chi1 chi2(-1) = -1 for ({}, {})",
                self.chi1, self.chi2
            )));
        }
        Ok(())
    }

    pub fn context(&self, c: u64) -> Result<DedekindContext> {
        DedekindContext::new(self.chi1.clone(), self.chi2.clone(), c)
    }
}

/// Everything needed to evaluate `S(a, c)` for a fixed pair and a fixed `c`.
#[derive(Debug)]
pub struct DedekindContext {
    pair: CharacterPair,
    c: u64,
    b1_table: Vec<Rational>,
    b1chi1_table: Option<Vec<Complex64>>,
    /// lcm of the two groups' exponents; character values are `e(k / den)`.
    den: u64,
    chi1_bar: Vec<Option<u64>>,
    chi2_bar: Vec<Option<u64>>,
    unit_sums: OnceLock<Vec<(u64, Complex64)>>,
}

impl DedekindContext {
    pub fn new(chi1: DirichletCharacter, chi2: DirichletCharacter, c: u64) -> Result<Self> {
        let pair = CharacterPair::new(chi1, chi2);
        let level = pair.level();
        if c == 0 || c % level != 0 {
            return Err(Error::LevelViolation { c: c as i64, level });
        }
        let ci = c as i64;
        let b1_table = (0..ci).map(|j| b1(Rational::new(j, ci))).collect();
        let q1 = pair.chi1.modulus() as i64;
        let b1chi1_table = pair.chi1.is_primitive().then(|| {
            (0..ci)
                .map(|t| b1_chi(&pair.chi1, Rational::new(t * q1, ci)).expect("primitive"))
                .collect()
        });
        let n1 = pair.chi1.group().exponent();
        let n2 = pair.chi2.group().exponent();
        let den = n1.lcm(&n2);
        let conj_table = |chi: &DirichletCharacter, n_chi: u64| -> Vec<Option<u64>> {
            (0..chi.modulus() as i64)
                .map(|n| chi.exponent_at(n).map(|k| ((n_chi - k) % n_chi) * (den / n_chi)))
                .collect()
        };
        let chi1_bar = conj_table(&pair.chi1, n1);
        let chi2_bar = conj_table(&pair.chi2, n2);
        Ok(DedekindContext {
            pair,
            c,
            b1_table,
            b1chi1_table,
            den,
            chi1_bar,
            chi2_bar,
            unit_sums: OnceLock::new(),
        })
    }

    pub fn pair(&self) -> &CharacterPair {
        &self.pair
    }

    pub fn chi1(&self) -> &DirichletCharacter {
        &self.pair.chi1
    }

    pub fn chi2(&self) -> &DirichletCharacter {
        &self.pair.chi2
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn q1(&self) -> u64 {
        self.pair.chi1.modulus()
    }

    pub fn q2(&self) -> u64 {
        self.pair.chi2.modulus()
    }

    /// `B1(j / c)` for `j = 0..c`.
    pub fn b1_table(&self) -> &[Rational] {
        &self.b1_table
    }

    /// `B1,chi1(t q1 / c)` for `t = 0..c`, present when `chi1` is primitive.
    pub fn b1chi1_table(&self) -> Option<&[Complex64]> {
        self.b1chi1_table.as_deref()
    }

    fn chi2_bar_at(&self, j: u64) -> Option<u64> {
        self.chi2_bar[(j % self.q2()) as usize]
    }

    /// Exact double sum over `j mod c`, `n mod q1`.
    pub fn s_direct_exact(&self, a: i64) -> CyclotomicSum {
        let c = self.c;
        let ci = c as i64;
        let step = c / self.q1();
        let a = residue(a, c);
        let mut coeffs = vec![0i64; self.den as usize];
        for j in 1..c {
            let Some(k2) = self.chi2_bar_at(j) else { continue };
            let bj = 2 * j as i64 - ci;
            let aj = (a as u128 * j as u128 % c as u128) as u64;
            for (n, k1) in self.chi1_bar.iter().enumerate() {
                let Some(k1) = k1 else { continue };
                let m = (n as u64 * step + aj) % c;
                if m == 0 {
                    continue;
                }
                coeffs[((k1 + k2) % self.den) as usize] += bj * (2 * m as i64 - ci);
            }
        }
        CyclotomicSum { den: self.den, scale: 4 * ci * ci, coeffs }
    }

    pub fn s_direct(&self, a: i64) -> Complex64 {
        self.s_direct_exact(a).to_complex()
    }

    /// `sum_{j=1}^{c-1} sum_{n mod q1} (j/c) conj(chi2)(j) conj(chi1)(n) B1(n/q1 + a j/c)`, exactly.
    ///
    /// Dropping the second Bernoulli factor relies on
    /// `sum_j sum_n conj(chi2)(j) conj(chi1)(n) B1(n/q1 + a j/c) = 0`, which
    /// holds only for `chi1 chi2(-1) = 1`; odd pairs are rejected.
    pub fn s_single_b1_exact(&self, a: i64) -> Result<CyclotomicSum> {
        if self.pair.parity() != 1 {
            return Err(Error::Hypothesis(format!(
                "single-Bernoulli form needs chi1 chi2(-1) = 1 for ({}, {})",
                self.pair.chi1, self.pair.chi2
            )));
        }
        let c = self.c;
        let ci = c as i64;
        let step = c / self.q1();
        let a = residue(a, c);
        let mut coeffs = vec![0i64; self.den as usize];
        for j in 1..c {
            let Some(k2) = self.chi2_bar_at(j) else { continue };
            let aj = (a as u128 * j as u128 % c as u128) as u64;
            for (n, k1) in self.chi1_bar.iter().enumerate() {
                let Some(k1) = k1 else { continue };
                let m = (n as u64 * step + aj) % c;
                if m == 0 {
                    continue;
                }
                coeffs[((k1 + k2) % self.den) as usize] += j as i64 * (2 * m as i64 - ci);
            }
        }
        Ok(CyclotomicSum { den: self.den, scale: 2 * ci * ci, coeffs })
    }

    pub fn s_single_b1(&self, a: i64) -> Result<Complex64> {
        Ok(self.s_single_b1_exact(a)?.to_complex())
    }

    /// `sum_{j mod c} sum_{n mod q1} conj(chi2)(j) conj(chi1)(n) B1(n/q1 + a j/c)`.
    pub fn bernoulli_pair_sum(&self, a: i64) -> Complex64 {
        let c = self.c;
        let step = c / self.q1();
        let a = residue(a, c);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..c {
            let Some(k2) = self.chi2_bar_at(j) else { continue };
            let aj = (a as u128 * j as u128 % c as u128) as u64;
            for (n, k1) in self.chi1_bar.iter().enumerate() {
                let Some(k1) = k1 else { continue };
                let m = (n as u64 * step + aj) % c;
                acc += root_to_complex((k1 + k2) % self.den, self.den) * b1_frac(m as i64, c);
            }
        }
        acc
    }

    /// `sum_{j mod c} conj(chi2)(j) B1(j/c) B1,chi1(a j / (c/q1))`; needs `chi1` primitive.
    pub fn s_b1chi(&self, a: i64) -> Result<Complex64> {
        let table = self
            .b1chi1_table
            .as_ref()
            .ok_or_else(|| Error::NotPrimitive(self.pair.chi1.label()))?;
        let c = self.c;
        let a = residue(a, c);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..c {
            let Some(k2) = self.chi2_bar_at(j) else { continue };
            let t = (a as u128 * j as u128 % c as u128) as usize;
            acc += root_to_complex(k2, self.den) * b1_frac(j as i64, c) * table[t];
        }
        Ok(acc)
    }

    /// Cotangent form
    ///
    /// `-1/(4 c q2) sum'_{s mod c} sum'_{r mod q2} cot(pi (r/q2 - a s/c)) cot(pi s/c) tau(conj chi1, s) tau(conj chi2, r)`.
    ///
    /// The first cotangent is what `cot(r' pi / c)` becomes once `r'` (running
    /// mod `c` subject to `r' + a s = 0 mod c/q2`) is rewritten as
    /// `-a s + r c/q2`; with that reading the Gauss-sum argument
    /// `(r' + a s) q2 / c` is just `r`. Terms whose cotangent argument is a
    /// multiple of `pi` are omitted.
    pub fn s_cotangent(&self, a: i64) -> Complex64 {
        let (c, q1, q2) = (self.c, self.q1(), self.q2());
        let chi1_bar = self.pair.chi1.conj();
        let chi2_bar = self.pair.chi2.conj();
        let tau1: Vec<Complex64> = (0..q1 as i64).map(|s| gauss_sum(&chi1_bar, s)).collect();
        let tau2: Vec<Complex64> = (0..q2 as i64).map(|r| gauss_sum(&chi2_bar, r)).collect();
        let a = residue(a, c);
        let step = c / q2;
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 1..c {
            let t1 = tau1[(s % q1) as usize];
            if t1.norm_sqr() == 0.0 {
                continue;
            }
            let cot_s = cot_frac(s, c);
            let as_ = (a as u128 * s as u128 % c as u128) as u64;
            for (r, t2) in tau2.iter().enumerate() {
                let m = (r as u64 * step + c - as_) % c;
                if m == 0 {
                    continue;
                }
                acc += t1 * *t2 * (cot_frac(m, c) * cot_s);
            }
        }
        -acc / (4.0 * c as f64 * q2 as f64)
    }

    /// Cotangent form specialised to primitive characters, where
    /// `tau(conj chi, s) = tau(conj chi) chi(s)`.
    pub fn s_cotangent_primitive(&self, a: i64) -> Result<Complex64> {
        for chi in [&self.pair.chi1, &self.pair.chi2] {
            if !chi.is_primitive() {
                return Err(Error::NotPrimitive(chi.label()));
            }
        }
        let (c, q2) = (self.c, self.q2());
        let chi1 = &self.pair.chi1;
        let chi2 = &self.pair.chi2;
        let a = residue(a, c);
        let step = c / q2;
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 1..c {
            let v1 = chi1.eval(s as i64);
            if v1.norm_sqr() == 0.0 {
                continue;
            }
            let cot_s = cot_frac(s, c);
            let as_ = (a as u128 * s as u128 % c as u128) as u64;
            for r in 1..q2 {
                let v2 = chi2.eval(r as i64);
                let m = (r * step + c - as_) % c;
                if m == 0 || v2.norm_sqr() == 0.0 {
                    continue;
                }
                acc += v1 * v2 * (cot_frac(m, c) * cot_s);
            }
        }
        let pre = gauss_sum(&chi1.conj(), 1) * gauss_sum(&chi2.conj(), 1);
        Ok(-pre * acc / (4.0 * c as f64 * q2 as f64))
    }

    /// `S(a, c)` by the fastest available route: `s_b1chi` when `chi1` is
    /// primitive, the direct double sum otherwise.
    pub fn s(&self, a: i64) -> Complex64 {
        self.s_b1chi(a).unwrap_or_else(|_| self.s_direct(a))
    }

    /// `(a, S(a, c))` for every unit `a` in `[1, c)` (`a = 0` when `c = 1`).
    pub fn unit_sums(&self) -> &[(u64, Complex64)] {
        self.unit_sums.get_or_init(|| {
            let c = self.c;
            let units: Vec<u64> = (0..c).filter(|a| a.gcd(&c) == 1).collect();
            units.into_par_iter().map(|a| (a, self.s(a as i64))).collect()
        })
    }
}

/// `cot(pi m / n)` for `m` not divisible by `n`.
#[inline]
fn cot_frac(m: u64, n: u64) -> f64 {
    1.0 / (PI * (m % n) as f64 / n as f64).tan()
}

/// Classical Dedekind sum `s(h, k) = sum_{j mod k} B1(j/k) B1(h j/k)`, exactly.
pub fn classical_s(h: i64, k: i64) -> Result<Rational> {
    if k <= 0 {
        return Err(Error::NotPositive(k));
    }
    let g = h.gcd(&k);
    if g != 1 {
        return Err(Error::NotCoprime { a: h, c: k, gcd: g });
    }
    let mut num = 0i64;
    for j in 1..k {
        let m = (h * j).rem_euclid(k);
        if m != 0 {
            num += (2 * j - k) * (2 * m - k);
        }
    }
    Ok(Rational::new(num, 4 * k * k))
}
