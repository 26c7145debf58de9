//! Integer matrices of determinant one and the `Gamma0` view of `S`.

use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;

use super::CharacterPair;
use crate::{Error, Result};

/// `(a b; c d)` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaMatrix {
    pub const IDENTITY: GammaMatrix = GammaMatrix { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::Determinant { a, b, c, d, det });
        }
        Ok(GammaMatrix { a, b, c, d })
    }

    /// The matrix with first column `(a, c)`, `0 <= d < c` and `d = a^{-1} (mod c)`.
    pub fn from_ac(a: i64, c: i64) -> Result<Self> {
        if c <= 0 {
            return Err(Error::NotPositive(c));
        }
        let e = a.extended_gcd(&c);
        if e.gcd != 1 {
            return Err(Error::NotCoprime { a, c, gcd: e.gcd.abs() });
        }
        let d = e.x.rem_euclid(c);
        let b = (a * d - 1) / c;
        GammaMatrix::new(a, b, c, d)
    }

    pub fn mul(&self, o: &GammaMatrix) -> GammaMatrix {
        GammaMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> GammaMatrix {
        GammaMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> GammaMatrix {
        GammaMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn in_gamma0(&self, level: u64) -> bool {
        self.c.rem_euclid(level as i64) == 0
    }
}

/// `S(gamma)` for `gamma` in `Gamma0(q1 q2)`.
///
/// Uses `S(a, c)` when `c >= 1`; sets `S = 0` when `c = 0` and
/// `S(gamma) = S(-gamma)` when `c < 0`. These conventions are the ones that
/// keep the crossed-homomorphism relation exact, given `chi1 conj(chi2)(-1) = 1`.
pub fn s_matrix(pair: &CharacterPair, g: &GammaMatrix) -> Result<Complex64> {
    let level = pair.level();
    if !g.in_gamma0(level) {
        return Err(Error::LevelViolation { c: g.c, level });
    }
    match g.c.signum() {
        0 => Ok(Complex64::new(0.0, 0.0)),
        -1 => s_matrix(pair, &g.neg()),
        _ => Ok(pair.context(g.c as u64)?.s(g.a)),
    }
}

/// `S(g1 g2) - S(g1) - chi1 conj(chi2)(d1) S(g2)`.
pub fn crossed_hom_residual(
    pair: &CharacterPair,
    g1: &GammaMatrix,
    g2: &GammaMatrix,
) -> Result<Complex64> {
    let twist = pair.chi1.eval(g1.d) * pair.chi2.eval(g1.d).conj();
    let prod = g1.mul(g2);
    Ok(s_matrix(pair, &prod)? - s_matrix(pair, g1)? - twist * s_matrix(pair, g2)?)
}

/// A random element of `Gamma0(level)` with lower-left entry `k * level`,
/// `|k| <= max_mult`; `k = 0` gives `+-(1 b; 0 1)`.
pub fn random_gamma0<R: Rng + ?Sized>(rng: &mut R, level: u64, max_mult: i64) -> GammaMatrix {
    let level = level as i64;
    let k = rng.gen_range(-max_mult..=max_mult);
    let c = k * level;
    let g = if c == 0 {
        let b = rng.gen_range(-20..=20);
        GammaMatrix { a: 1, b, c: 0, d: 1 }
    } else {
        let bound = 4 * c.abs();
        let a = loop {
            let a = rng.gen_range(-bound..=bound);
            if a.gcd(&c) == 1 {
                break a;
            }
        };
        let e = a.extended_gcd(&c);
        // a x + c y = 1 with gcd = +-1 normalised to +1
        let (x, y) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
        let shift = rng.gen_range(-3..=3);
        // (a, -y; c, x) has determinant a x + c y = 1; shift by T^shift on the right
        let base = GammaMatrix { a, b: -y, c, d: x };
        base.mul(&GammaMatrix { a: 1, b: shift, c: 0, d: 1 })
    };
    if rng.gen_bool(0.5) { g.neg() } else { g }
}
