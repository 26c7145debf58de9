//! Acceptance criteria 1-9. Each test prints one `criterion N: PASS|FAIL` line.

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use dedekind::analytic::{
    b1_chi, char_sum_b1, char_sum_b1_brute, char_sum_b1chi, gauss_sum, gauss_sum_via_primitive,
};
use dedekind::chargroup::{
    characters, count_primitive_twists, count_primitive_with_parity, divisors, euler_phi, factorize,
    phi_star, primitive_characters, DirichletCharacter,
};
use dedekind::dedekind::{
    classical_s, crossed_hom_residual, inverse_residuals, negate_residual, random_gamma0,
    scale_residual, CharacterPair, GammaMatrix,
};
use dedekind::moments::{
    bounds_sweep, fourier_brute, fourier_closed, relative_residual, second_moment_closed,
    walum_lhs, walum_rhs,
};

fn report(n: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} {detail}");
    assert!(pass, "criterion {n} failed: {detail}");
}

/// Nontrivial primitive pairs with `chi1 chi2(-1) = 1`, drawn from the given moduli.
fn standard_pairs(moduli: &[u64]) -> Vec<CharacterPair> {
    let mut out = Vec::new();
    for &q1 in moduli {
        for &q2 in moduli {
            for chi1 in primitive_characters(q1) {
                for chi2 in primitive_characters(q2) {
                    let pair = CharacterPair::new(chi1.clone(), chi2);
                    if pair.is_standard() {
                        out.push(pair);
                    }
                }
            }
        }
    }
    out
}

/// Every standard context with `c <= cmax`.
fn standard_contexts(cmax: u64) -> Vec<(CharacterPair, u64)> {
    let moduli: Vec<u64> = (3..=cmax / 3).collect();
    let mut out = Vec::new();
    for &q1 in &moduli {
        for &q2 in &moduli {
            if q1 * q2 > cmax {
                continue;
            }
            for chi1 in primitive_characters(q1) {
                for chi2 in primitive_characters(q2) {
                    let pair = CharacterPair::new(chi1.clone(), chi2);
                    if !pair.is_standard() {
                        continue;
                    }
                    for c in (q1 * q2..=cmax).step_by((q1 * q2) as usize) {
                        out.push((pair.clone(), c));
                    }
                }
            }
        }
    }
    out
}

fn units(c: u64) -> impl Iterator<Item = i64> {
    (1..=c as i64).filter(move |a| a.gcd(&(c as i64)) == 1)
}

#[test]
fn criterion_1_second_moment_identity() {
    let moduli = [3, 4, 5, 7, 8, 9, 11, 12, 13];
    let mut cases = Vec::new();
    for pair in standard_pairs(&moduli) {
        let level = pair.level();
        for m in 1..=3 {
            if m * level <= 400 {
                cases.push((pair.clone(), m * level));
            }
        }
    }
    let worst = cases
        .par_iter()
        .map(|(pair, c)| {
            let ctx = pair.context(*c).unwrap();
            let r = second_moment_closed(&ctx).unwrap();
            (r.residual, format!("({}, {}, c={c})", pair.chi1, pair.chi2))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0f64, String::new()), |acc, x| if x.0 > acc.0 { x } else { acc });
    report(
        1,
        worst.0 < 1e-7 && !cases.is_empty(),
        &format!("{} contexts, max relative residual {:.3e} at {}", cases.len(), worst.0, worst.1),
    );
}

#[test]
fn criterion_2_fourier_transform() {
    let contexts = standard_contexts(120);
    let results: Vec<(f64, f64, usize)> = contexts
        .par_iter()
        .map(|(pair, c)| {
            let ctx = pair.context(*c).unwrap();
            let phi = euler_phi(*c) as f64;
            let (mut scaled, mut zero, mut n) = (0.0f64, 0.0f64, 0);
            for xi in characters(*c) {
                let brute = fourier_brute(&ctx, &xi).unwrap();
                let closed = fourier_closed(&ctx, &xi).unwrap();
                scaled = scaled.max((brute - closed).norm() / phi);
                if xi.parity() * pair.chi1.parity() == 1 {
                    zero = zero.max(brute.norm());
                }
                n += 1;
            }
            (scaled, zero, n)
        })
        .collect();
    let scaled = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let zero = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let n: usize = results.iter().map(|r| r.2).sum();
    report(
        2,
        scaled < 1e-7 && zero < 1e-8,
        &format!(
            "{} contexts, {n} characters, max |closed - brute|/phi(c) {scaled:.3e}, max zero-branch {zero:.3e}",
            contexts.len()
        ),
    );
}

#[test]
fn criterion_3_walum() {
    let primes: Vec<u64> = (3..=101).filter(|&p| is_odd_prime(p)).collect();
    let worst = primes
        .iter()
        .map(|&p| relative_residual(walum_lhs(p).unwrap(), walum_rhs(p).unwrap()))
        .fold(0.0, f64::max);
    let exact: Ratio<i64> = (1..3).map(|a| classical_s(a, 3).unwrap().pow(2)).sum();
    let rhs3 = walum_rhs(3).unwrap();
    let p3 = exact == Ratio::new(1, 162) && (rhs3 - 1.0 / 162.0).abs() < 1e-10;
    report(
        3,
        worst < 1e-8 && p3,
        &format!(
            "{} primes, max relative residual {worst:.3e}; p = 3: lhs = {exact}, rhs = {rhs3:.15}",
            primes.len()
        ),
    );
}

fn is_odd_prime(p: u64) -> bool {
    p > 2 && factorize(p as i64).unwrap().factors() == [(p, 1)]
}

#[test]
fn criterion_4_four_formulas() {
    let contexts = standard_contexts(60);
    let worst = contexts
        .par_iter()
        .map(|(pair, c)| {
            let ctx = pair.context(*c).unwrap();
            let mut worst = 0.0f64;
            for a in units(*c) {
                let vals = [
                    ctx.s_direct(a),
                    ctx.s_b1chi(a).unwrap(),
                    ctx.s_single_b1(a).unwrap(),
                    ctx.s_cotangent(a),
                ];
                for i in 0..4 {
                    for j in i + 1..4 {
                        worst = worst.max((vals[i] - vals[j]).norm());
                    }
                }
            }
            worst
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max);
    report(
        4,
        worst < 1e-8 && !contexts.is_empty(),
        &format!("{} contexts, max pairwise difference {worst:.3e}", contexts.len()),
    );
}

/// Every pair of characters `(chi1 mod q1, chi2 mod q2)` with `q1 q2 <= 60`.
fn all_pairs(max_level: u64) -> Vec<CharacterPair> {
    let mut out = Vec::new();
    for q1 in 1..=max_level {
        for q2 in 1..=max_level / q1 {
            for chi1 in characters(q1) {
                for chi2 in characters(q2) {
                    out.push(CharacterPair::new(chi1.clone(), chi2));
                }
            }
        }
    }
    out
}

#[test]
fn criterion_5_symmetry_laws() {
    let pairs = all_pairs(60);
    // (scaling, vanishing, negation, inverse, rewritten disagreements, cases)
    let stats: Vec<[f64; 6]> = pairs
        .par_iter()
        .map(|pair| {
            let c = pair.level();
            let mut s = [0.0f64; 6];
            for a in units(c) {
                for alpha in [2, 3] {
                    s[0] = s[0].max(scale_residual(pair, a, c, alpha).unwrap().norm());
                }
            }
            for c in [c, 2 * c] {
                let ctx = pair.context(c).unwrap();
                if pair.parity() == -1 {
                    for a in 0..c as i64 {
                        s[1] = s[1].max(ctx.s_direct(a).norm());
                    }
                    continue;
                }
                for a in units(c) {
                    s[2] = s[2].max(negate_residual(&ctx, a).norm());
                    let inv = inverse_residuals(&ctx, a).unwrap();
                    s[3] = s[3].max(inv.statement.norm());
                    if inv.rewritten.norm() > 1e-9 {
                        s[4] += 1.0;
                    }
                    s[5] += 1.0;
                }
            }
            s
        })
        .collect();
    let max = |i: usize| stats.iter().map(|s| s[i]).fold(0.0, f64::max);
    let sum = |i: usize| stats.iter().map(|s| s[i]).sum::<f64>();
    let (scale, vanish, negate, inverse) = (max(0), max(1), max(2), max(3));
    let pass = [scale, vanish, negate, inverse].iter().all(|&r| r < 1e-9);
    report(
        5,
        pass,
        &format!(
            "{} pairs; scaling {scale:.2e}, vanishing {vanish:.2e}, negation {negate:.2e}, inverse {inverse:.2e}; \
             matrix rewriting S(d,c) = chi1(-1)chi2(d)S(a,c) disagrees in {} of {} cases (all with chi1(a) != 1)",
            pairs.len(),
            sum(4),
            sum(5)
        ),
    );
}

#[test]
fn criterion_6_crossed_homomorphism() {
    let chi = |q: u64, i: usize| primitive_characters(q)[i].clone();
    let contexts = [
        (chi(3, 0), chi(3, 0)),
        (chi(4, 0), chi(4, 0)),
        (chi(3, 0), chi(4, 0)),
        (chi(5, 0), chi(5, 2)),
        (chi(5, 1), chi(7, 1)),
    ];
    let mut worst = 0.0f64;
    let (mut zero, mut negative, mut total) = (0, 0, 0);
    for (i, (chi1, chi2)) in contexts.iter().enumerate() {
        let pair = CharacterPair::new(chi1.clone(), chi2.clone());
        assert!(pair.is_standard(), "{chi1} {chi2}");
        let mut rng = ChaCha8Rng::seed_from_u64(7 + i as u64);
        for _ in 0..100 {
            let g1 = random_gamma0(&mut rng, pair.level(), 3);
            let g2 = random_gamma0(&mut rng, pair.level(), 3);
            for (x, y) in [(g1, g2), (g1, g1.inverse()), (g1.neg(), g2)] {
                let prod: GammaMatrix = x.mul(&y);
                zero += usize::from(prod.c == 0);
                negative += usize::from(prod.c < 0);
                total += 1;
                worst = worst.max(crossed_hom_residual(&pair, &x, &y).unwrap().norm());
            }
        }
    }
    report(
        6,
        worst < 1e-8 && zero > 0 && negative > 0,
        &format!("{total} products over 5 contexts ({zero} with c = 0, {negative} with c < 0), max residual {worst:.3e}"),
    );
}

#[test]
fn criterion_7_lemma_suites() {
    // orthogonality over divisors
    let orth = (1..=60u64)
        .into_par_iter()
        .map(|c| {
            let mut table: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); c as usize]; c as usize];
            for d in divisors(c) {
                let w = 1.0 / euler_phi(d) as f64;
                for psi in characters(d) {
                    let vals: Vec<Complex64> =
                        (0..c as i64).map(|m| psi.eval_rational(Ratio::new(m, (c / d) as i64))).collect();
                    for m in 0..c as usize {
                        if vals[m].norm_sqr() == 0.0 {
                            continue;
                        }
                        for n in 0..c as usize {
                            table[m][n] += vals[m] * vals[n].conj() * w;
                        }
                    }
                }
            }
            let mut worst = 0.0f64;
            for m in 0..c as usize {
                for n in 0..c as usize {
                    let expect = if m == n { 1.0 } else { 0.0 };
                    worst = worst.max((table[m][n] - expect).norm());
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    // sums over units
    let mut units_sum = 0.0f64;
    for c in 1..=60u64 {
        for q in divisors(c) {
            for chi in characters(q) {
                let s: Complex64 = units(c).map(|a| chi.eval(a)).sum();
                let expect = if chi.is_principal() { euler_phi(c) as f64 } else { 0.0 };
                units_sum = units_sum.max((s - expect).norm());
            }
        }
    }

    // character sums against B1
    let b1_sums = (1..=120u64)
        .into_par_iter()
        .map(|c| {
            let mut worst = 0.0f64;
            for d in divisors(c) {
                for chi in characters(d) {
                    let closed = char_sum_b1(&chi, c).unwrap();
                    worst = worst.max((closed - char_sum_b1_brute(&chi, c)).norm());
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    // character sums against B1,chi
    let b1chi_sums = (1..=120u64)
        .into_par_iter()
        .map(|c| {
            let mut worst = 0.0f64;
            let ci = c as i64;
            for q in divisors(c) {
                for chi in primitive_characters(q) {
                    let table: Vec<Complex64> =
                        (0..ci).map(|t| b1_chi(&chi, Ratio::new(t * q as i64, ci)).unwrap()).collect();
                    for d in divisors(c) {
                        let step = c / d;
                        for psi in characters(d) {
                            let brute: Complex64 = (0..d)
                                .map(|t| psi.eval(t as i64) * table[(t * step) as usize])
                                .sum();
                            let closed = char_sum_b1chi(&psi, &chi, c).unwrap();
                            worst = worst.max((closed - brute).norm());
                        }
                    }
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    // Gauss sums of imprimitive characters
    let mut gauss = 0.0f64;
    for d in 1..=60u64 {
        for psi in characters(d).into_iter().filter(|p| !p.is_principal()) {
            for l in 0..d as i64 {
                let via = gauss_sum_via_primitive(&psi, l).unwrap();
                gauss = gauss.max((via - gauss_sum(&psi, l)).norm());
            }
        }
    }

    let pass = orth < 1e-10 && units_sum < 1e-10 && b1_sums < 1e-9 && b1chi_sums < 1e-9 && gauss < 1e-9;
    report(
        7,
        pass,
        &format!(
            "orthogonality {orth:.2e}, unit sums {units_sum:.2e}, B1 sums {b1_sums:.2e}, \
             B1,chi sums {b1chi_sums:.2e}, Gauss sums {gauss:.2e}"
        ),
    );
}

fn prime_powers_upto(n: u64) -> Vec<(u64, u32, u64)> {
    (2..=n)
        .filter_map(|m| {
            let f = factorize(m as i64).unwrap();
            let pp: Vec<_> = f.prime_powers().collect();
            (pp.len() == 1).then(|| pp[0])
        })
        .collect()
}

/// Cases where the Lemma 4.3 count of primitive `psi` modulo `p^n` of a given
/// parity (of `psi`, and separately of `psi xi`) is zero.
fn lemma_4_3_counterexamples(max: u64) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (p, n, pn) in prime_powers_upto(max) {
        for k in 0..=n {
            for xi in characters(p.pow(k)) {
                let parts = [(1, n > k, pn), (2, p > 3, pn), (3, ![3, 4, 8].contains(&pn), pn / p)];
                for (part, applies, min_conductor) in parts {
                    if !applies {
                        continue;
                    }
                    for of_product in [false, true] {
                        for sign in [1i8, -1] {
                            if count_primitive_twists(pn, &xi, sign, of_product, min_conductor).unwrap() == 0 {
                                let whose = if of_product { "psi xi" } else { "psi" };
                                out.insert(format!(
                                    "part {part}, p^n = {pn}, xi = {xi}, {whose} {}",
                                    if sign == 1 { "even" } else { "odd" }
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_8_counting() {
    let phi_ok = (1..=500u64).all(|n| phi_star(n) == primitive_characters(n).len() as u64);
    let listed = [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 125, 243];
    let parity_ok = listed.iter().all(|&q| {
        let bound = phi_star(q) as i64 / 2 - 1;
        [1, -1].iter().all(|&s| count_primitive_with_parity(q, s) as i64 >= bound)
    });
    let remark_ok = (0..=3u32).all(|k| {
        characters(2u64.pow(k))
            .iter()
            .all(|xi| count_primitive_twists(8, xi, -1, true, 4).unwrap() > 0)
    });
    let bad = lemma_4_3_counterexamples(243);
    let detail = format!(
        "phi* for n <= 500 {}; parity bound {}; p^n = 8 remark {}; Lemma 4.3 empty cases: {}",
        if phi_ok { "ok" } else { "MISMATCH" },
        if parity_ok { "ok" } else { "VIOLATED" },
        if remark_ok { "ok" } else { "VIOLATED" },
        if bad.is_empty() { "none".to_string() } else { bad.iter().cloned().collect::<Vec<_>>().join("; ") }
    );
    report(8, phi_ok && parity_ok && remark_ok && bad.is_empty(), &detail);
}

#[test]
fn criterion_9_growth() {
    let mut lines = Vec::new();
    let mut pass = true;
    for q in [3u64, 4] {
        let chi: DirichletCharacter = primitive_characters(q)[0].clone();
        let level = q * q;
        let cs: Vec<u64> = (1..).map(|k| k * level).take_while(|&c| c <= 2000).collect();
        let sweep = bounds_sweep(&chi, &chi, &cs).unwrap();
        let slope = sweep.slope.unwrap_or(f64::NAN);
        let positive = sweep.rows.iter().all(|r| r.moment > 0.0);
        pass &= positive && (1.7..=2.3).contains(&slope);
        lines.push(format!("({chi}, {chi}) {} rows, slope {slope:.4}, all M2 > 0: {positive}", cs.len()));
    }
    report(9, pass, &lines.join("; "));
}
