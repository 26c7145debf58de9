//! Residuals of the symmetry laws of `S(a, c)`.

use num_complex::Complex64;

use super::{CharacterPair, DedekindContext, GammaMatrix};
use crate::chargroup::residue;
use crate::{Error, Result};

/// `S(a, c) - S(alpha a, alpha c)`, both from the double sum.
pub fn scale_residual(pair: &CharacterPair, a: i64, c: u64, alpha: u64) -> Result<Complex64> {
    if alpha == 0 {
        return Err(Error::NotPositive(0));
    }
    let base = pair.context(c)?.s_direct(a);
    let scaled = pair.context(alpha * c)?.s_direct(alpha as i64 * a);
    Ok(base - scaled)
}

/// `S(-a, c) + chi2(-1) S(a, c)`.
pub fn negate_residual(ctx: &DedekindContext, a: i64) -> Complex64 {
    ctx.s(-a) + ctx.s(a) * f64::from(ctx.chi2().parity())
}

/// Residuals of the inverse law in its two printed renditions.
#[derive(Debug, Clone, Copy)]
pub struct InverseResiduals {
    /// `S(a', c) - chi1(-a) conj(chi2)(a) S(a, c)` with `a a' = 1 (mod c)`.
    pub statement: Complex64,
    /// `S(d, c) - chi1(-1) chi2(d) S(a, c)` with `d` from the matrix completing `(a, c)`.
    pub rewritten: Complex64,
}

/// Both renditions differ by the factor `chi1(a)`; they agree exactly when
/// `chi1(a) = 1` or `S(a, c) = 0`.
pub fn inverse_residuals(ctx: &DedekindContext, a: i64) -> Result<InverseResiduals> {
    let c = ctx.c() as i64;
    let g = GammaMatrix::from_ac(residue(a, c as u64) as i64, c)?;
    let a_inv = g.d;
    debug_assert_eq!((a * a_inv).rem_euclid(c), 1 % c);
    let (chi1, chi2) = (ctx.chi1(), ctx.chi2());
    let s_a = ctx.s(a);
    let statement = ctx.s(a_inv) - chi1.eval(-a) * chi2.eval(a).conj() * s_a;
    let rewritten = ctx.s(g.d) - chi1.eval(-1) * chi2.eval(g.d) * s_a;
    Ok(InverseResiduals { statement, rewritten })
}
