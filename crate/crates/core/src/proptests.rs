//! Randomized invariants.

use num_integer::Integer;
use num_rational::Ratio;
use proptest::prelude::*;

use crate::chargroup::{
    characters, dirichlet_convolve, euler_phi, factorize, mobius, phi_star, product,
};
use crate::dedekind::{classical_s, scale_residual, CharacterPair, DedekindContext};

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (1i64..400, 1i64..400).prop_filter("coprime", |(h, k)| h.gcd(k) == 1)
}

/// Characters mod `q` for small `q`, indexed modulo the group order.
fn character(q: u64, i: usize) -> crate::chargroup::DirichletCharacter {
    let all = characters(q);
    all[i % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reciprocity((h, k) in coprime_pair()) {
        let lhs = classical_s(h, k).unwrap() + classical_s(k, h).unwrap();
        let rhs = (Ratio::new(h, k) + Ratio::new(k, h) + Ratio::new(1, h * k)) / 12 - Ratio::new(1, 4);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_multiplies_back(n in 1i64..=1_000_000_000_000) {
        let f = factorize(n).unwrap();
        let prod: u64 = f.prime_powers().map(|(_, _, pe)| pe).product();
        prop_assert_eq!(prod, n as u64);
    }

    #[test]
    fn characters_are_multiplicative(q in 1u64..150, i in 0usize..1000, m in -500i64..500, n in -500i64..500) {
        let chi = character(q, i);
        let lhs = chi.eval(m * n);
        let rhs = chi.eval(m) * chi.eval(n);
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert!((chi.eval(m) - chi.eval(m + q as i64)).norm() < 1e-12);
    }

    #[test]
    fn conductor_divides_and_induces(q in 1u64..150, i in 0usize..1000, n in 0i64..1000) {
        let chi = character(q, i);
        let f = chi.conductor();
        prop_assert_eq!(q % f, 0);
        if n.gcd(&(q as i64)) == 1 {
            prop_assert!((chi.star().eval(n) - chi.eval(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn product_respects_values(q in 1u64..40, i in 0usize..100, j in 0usize..100, n in 0i64..500) {
        let (chi, psi) = (character(q, i), character(q, j));
        let prod = product(&chi, &psi, q).unwrap();
        prop_assert!((prod.eval(n) - chi.eval(n) * psi.eval(n)).norm() < 1e-12);
    }

    #[test]
    fn phi_star_is_mobius_convolution(n in 1u64..3000) {
        let conv: i64 = dirichlet_convolve(mobius, |k| euler_phi(k) as i64, n);
        prop_assert_eq!(conv, phi_star(n) as i64);
    }

    #[test]
    fn sum_is_periodic_and_formulas_agree(
        q1 in 1u64..8, q2 in 1u64..8, i in 0usize..100, j in 0usize..100, m in 1u64..3, a in -200i64..200,
    ) {
        let pair = CharacterPair::new(character(q1, i), character(q2, j));
        let c = m * q1 * q2;
        let ctx = DedekindContext::new(pair.chi1.clone(), pair.chi2.clone(), c).unwrap();
        let direct = ctx.s_direct(a);
        prop_assert!((direct - ctx.s_direct(a + c as i64)).norm() < 1e-12);
        prop_assert!((direct - ctx.s_cotangent(a)).norm() < 1e-9);
        if let Ok(v) = ctx.s_b1chi(a) {
            prop_assert!((direct - v).norm() < 1e-9);
        }
        if pair.parity() == -1 {
            prop_assert!(direct.norm() < 1e-12);
        }
    }

    #[test]
    fn scaling_is_invisible(q1 in 1u64..6, q2 in 1u64..6, i in 0usize..50, j in 0usize..50, alpha in 1u64..5, a in 1i64..100) {
        let pair = CharacterPair::new(character(q1, i), character(q2, j));
        let c = q1 * q2;
        prop_assert!(scale_residual(&pair, a, c, alpha).unwrap().norm() < 1e-9);
    }
}
