//! Fourier analysis of `a -> S(a, c)` on `(Z/cZ)^x` and the second moment.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{gauss_sum, l_one};
use crate::chargroup::{
    characters, dirichlet_convolve, divisors, euler_phi, is_prime, mobius, product, sigma0,
    DirichletCharacter,
};
use crate::dedekind::{classical_s, DedekindContext};
use crate::{Error, Result};

/// `g(psi; c)` together with its divisor expansion.
#[derive(Debug, Clone)]
pub struct GFactor {
    pub psi: DirichletCharacter,
    pub value: Complex64,
    /// `(d, term)` for `d | c` with `q(psi) | d`; the terms sum to `value`.
    pub divisor_terms: Vec<(u64, Complex64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContextInfo {
    pub q1: u64,
    pub q2: u64,
    pub chi1: String,
    pub chi2: String,
    pub c: u64,
}

impl ContextInfo {
    pub fn of(ctx: &DedekindContext) -> Self {
        ContextInfo {
            q1: ctx.q1(),
            q2: ctx.q2(),
            chi1: ctx.chi1().label(),
            chi2: ctx.chi2().label(),
            c: ctx.c(),
        }
    }
}

/// One `psi` of the second-moment sum.
#[derive(Debug, Clone, Serialize)]
pub struct PsiTerm {
    pub psi: String,
    /// `|L(1, conj(psi*) chi1)|^2`
    pub l_chi1_sq: f64,
    /// `|L(1, (psi chi2)*)|^2`
    pub l_chi2_sq: f64,
    pub g_sq: f64,
    /// Product of the three.
    pub term: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub context: ContextInfo,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / lhs`, or `|rhs|` when `lhs = 0`.
    pub residual: f64,
    pub per_psi: Vec<PsiTerm>,
}

fn check_character_mod_c(ctx: &DedekindContext, xi: &DirichletCharacter) -> Result<()> {
    if xi.modulus() != ctx.c() {
        return Err(Error::NotDivisible { divisor: xi.modulus(), n: ctx.c() });
    }
    Ok(())
}

/// `sum_{(a, c) = 1} S(a, c) xi(a)`, summed in increasing `a`.
pub fn fourier_brute(ctx: &DedekindContext, xi: &DirichletCharacter) -> Result<Complex64> {
    check_character_mod_c(ctx, xi)?;
    Ok(ctx.unit_sums().iter().map(|&(a, s)| s * xi.eval(a as i64)).sum())
}

/// `(f mu * 1)(n)` for a character `f`.
fn mu_twist_conv_one(f: &DirichletCharacter, n: u64) -> Complex64 {
    dirichlet_convolve(
        |k| f.eval(k as i64) * mobius(k) as f64,
        |_| Complex64::new(1.0, 0.0),
        n,
    )
}

/// `(chi * mu psi)(n)`.
fn conv_mu_twist(chi: &DirichletCharacter, psi: &DirichletCharacter, n: u64) -> Complex64 {
    dirichlet_convolve(
        |k| chi.eval(k as i64),
        |m| psi.eval(m as i64) * mobius(m) as f64,
        n,
    )
}

/// `(psi chi2)*` for `psi` modulo `c`.
fn psi_chi2_star(ctx: &DedekindContext, psi: &DirichletCharacter) -> Result<DirichletCharacter> {
    Ok(product(psi, ctx.chi2(), ctx.c())?.star())
}

/// `conj(psi*) chi1` at modulus `lcm(q(psi), q1)`.
fn psi_bar_star_chi1(ctx: &DedekindContext, psi: &DirichletCharacter) -> Result<DirichletCharacter> {
    let star = psi.star();
    let m = star.modulus().lcm(&ctx.q1());
    product(&star.conj(), ctx.chi1(), m)
}

pub fn g_factor(ctx: &DedekindContext, psi: &DirichletCharacter) -> Result<GFactor> {
    check_character_mod_c(ctx, psi)?;
    let c = ctx.c();
    let (chi1, chi2) = (ctx.chi1(), ctx.chi2());
    let psi_star = psi.star();
    let f = psi_star.modulus();
    let twisted_bar = psi_chi2_star(ctx, psi)?.conj();
    let front = gauss_sum(&twisted_bar, 1) * gauss_sum(&psi_star, 1) * gauss_sum(&chi1.conj(), 1);
    let divisor_terms: Vec<(u64, Complex64)> = divisors(c)
        .into_iter()
        .filter(|d| d % f == 0)
        .map(|d| {
            let inner = chi2.eval((c / d) as i64).conj() / euler_phi(d) as f64
                * mu_twist_conv_one(&twisted_bar, d)
                * conv_mu_twist(chi1, &psi_star, d / f);
            (d, front * inner)
        })
        .collect();
    let value = divisor_terms.iter().map(|t| t.1).sum();
    Ok(GFactor { psi: psi.clone(), value, divisor_terms })
}

fn require_standard(ctx: &DedekindContext) -> Result<()> {
    ctx.pair().check_standard()
}

/// The closed form of the transform:
/// `phi(c) / (pi i)^2 L(1, (xi chi2)*) L(1, conj(xi*) chi1) g(xi; c)` when
/// `xi chi1(-1) = -1`, and `0` otherwise.
pub fn fourier_closed(ctx: &DedekindContext, xi: &DirichletCharacter) -> Result<Complex64> {
    require_standard(ctx)?;
    fourier_closed_unchecked(ctx, xi)
}

fn fourier_closed_unchecked(ctx: &DedekindContext, xi: &DirichletCharacter) -> Result<Complex64> {
    check_character_mod_c(ctx, xi)?;
    if xi.parity() * ctx.chi1().parity() == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let l2 = l_one(&psi_chi2_star(ctx, xi)?)?.value;
    let l1 = l_one(&psi_bar_star_chi1(ctx, xi)?)?.value;
    let g = g_factor(ctx, xi)?.value;
    Ok(-(euler_phi(ctx.c()) as f64) / (PI * PI) * l2 * l1 * g)
}

/// `sum_{(a, c) = 1} |S(a, c)|^2`.
pub fn second_moment_brute(ctx: &DedekindContext) -> f64 {
    ctx.unit_sums().iter().map(|(_, s)| s.norm_sqr()).sum()
}

/// Both sides of the second-moment identity with the per-`psi` breakdown.
pub fn second_moment_closed(ctx: &DedekindContext) -> Result<MomentReport> {
    require_standard(ctx)?;
    second_moment_closed_extended(ctx)
}

/// [`second_moment_closed`] without the hypothesis check, for probing pairs
/// outside the nontrivial-primitive setting. Nothing is claimed about the result.
pub fn second_moment_closed_extended(ctx: &DedekindContext) -> Result<MomentReport> {
    let c = ctx.c();
    let odd: Vec<DirichletCharacter> = characters(c)
        .into_iter()
        .filter(|psi| psi.parity() * ctx.chi1().parity() == -1)
        .collect();
    let per_psi = odd
        .par_iter()
        .map(|psi| {
            let l1 = l_one(&psi_bar_star_chi1(ctx, psi)?)?.value.norm_sqr();
            let l2 = l_one(&psi_chi2_star(ctx, psi)?)?.value.norm_sqr();
            let g = g_factor(ctx, psi)?.value.norm_sqr();
            Ok(PsiTerm { psi: psi.label(), l_chi1_sq: l1, l_chi2_sq: l2, g_sq: g, term: l1 * l2 * g })
        })
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = per_psi.iter().map(|t| t.term).sum();
    let rhs = euler_phi(c) as f64 / PI.powi(4) * total;
    let lhs = second_moment_brute(ctx);
    Ok(MomentReport {
        context: ContextInfo::of(ctx),
        lhs,
        rhs,
        residual: relative_residual(lhs, rhs),
        per_psi,
    })
}

pub fn relative_residual(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        rhs.abs()
    } else {
        (lhs - rhs).abs() / lhs.abs()
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// `sum_{a mod p} s(a, p)^2` from the classical sum.
pub fn walum_lhs(p: u64) -> Result<f64> {
    require_odd_prime(p)?;
    let p = p as i64;
    (1..p).map(|a| classical_s(a, p).map(|s| (s * s).to_f64().unwrap_or(f64::NAN))).sum::<Result<f64>>()
}

/// `p^2 / (pi^4 (p - 1)) sum_{psi odd mod p} |L(1, psi)|^4`.
pub fn walum_rhs(p: u64) -> Result<f64> {
    require_odd_prime(p)?;
    let mut total = 0.0;
    for psi in characters(p).iter().filter(|psi| psi.is_odd()) {
        total += l_one(psi)?.value.norm_sqr().powi(2);
    }
    let pf = p as f64;
    Ok(pf * pf / (PI.powi(4) * (pf - 1.0)) * total)
}

/// The least unit `a` with `|S(a, c)| > 1e-10`.
pub fn nonvanishing_witness(ctx: &DedekindContext) -> Result<u64> {
    require_standard(ctx)?;
    ctx.unit_sums()
        .iter()
        .find(|(_, s)| s.norm() > 1e-10)
        .map(|&(a, _)| a)
        .ok_or_else(|| {
            Error::Identity(format!(
                "S(a, {}) vanishes for every unit a with chi1 = {}, chi2 = {}",
                ctx.c(),
                ctx.chi1(),
                ctx.chi2()
            ))
        })
}

/// One row of the growth sweep.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsRow {
    pub c: u64,
    pub q1: u64,
    pub q2: u64,
    pub moment: f64,
    /// `moment / (q1 c^2)`
    pub ratio: f64,
    /// Least-squares slope of `log moment` on `log c` over this and all earlier rows.
    pub slope_running: Option<f64>,
    /// Upper envelope for `ratio` assembled from the trivial bounds on each factor.
    #[serde(skip)]
    pub envelope: f64,
}

#[derive(Debug, Clone)]
pub struct BoundsSweep {
    pub rows: Vec<BoundsRow>,
    pub slope: Option<f64>,
}

/// Slope of the least-squares line through `points`; `None` below two distinct abscissae.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Bound on `moment / (q1 c^2)` from `|L(1, chi)| <= 2 + log c` and
/// `|g(psi; c)|^2 <= q1 c q(psi) (sigma0(c)^2 sum_{d | c, q(psi) | d} 1/phi(d))^2`.
pub fn moment_envelope(ctx: &DedekindContext) -> f64 {
    let c = ctx.c();
    let cf = c as f64;
    let q1 = ctx.q1() as f64;
    let s0 = sigma0(c) as f64;
    let divs = divisors(c);
    let total: f64 = characters(c)
        .iter()
        .filter(|psi| psi.parity() * ctx.chi1().parity() == -1)
        .map(|psi| {
            let f = psi.conductor();
            let inv: f64 = divs.iter().filter(|d| *d % f == 0).map(|&d| 1.0 / euler_phi(d) as f64).sum();
            q1 * cf * f as f64 * (s0 * s0 * inv).powi(2)
        })
        .sum();
    let l_bound = (2.0 + cf.ln()).powi(4);
    euler_phi(c) as f64 / PI.powi(4) * l_bound * total / (q1 * cf * cf)
}

/// Second moments for each `c` in `c_list`, in the given order.
pub fn bounds_sweep(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    c_list: &[u64],
) -> Result<BoundsSweep> {
    let mut rows = Vec::with_capacity(c_list.len());
    let mut points = Vec::with_capacity(c_list.len());
    for &c in c_list {
        let ctx = DedekindContext::new(chi1.clone(), chi2.clone(), c)?;
        let moment = second_moment_brute(&ctx);
        let ratio = moment / (ctx.q1() as f64 * (c as f64).powi(2));
        if moment > 0.0 {
            points.push(((c as f64).ln(), moment.ln()));
        }
        rows.push(BoundsRow {
            c,
            q1: ctx.q1(),
            q2: ctx.q2(),
            moment,
            ratio,
            slope_running: least_squares_slope(&points),
            envelope: moment_envelope(&ctx),
        });
    }
    let slope = least_squares_slope(&points);
    Ok(BoundsSweep { rows, slope })
}
