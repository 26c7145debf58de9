//! Classical multiplicative functions and Dirichlet convolution.

use std::ops::{Add, Mul};

use num_traits::Zero;

use super::factor::factor_u64;

pub fn divisors(n: u64) -> Vec<u64> {
    factor_u64(n).divisors()
}

pub fn mobius(n: u64) -> i64 {
    let f = factor_u64(n);
    if f.factors().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .prime_powers()
        .map(|(p, _, pe)| pe / p * (p - 1))
        .product()
}

pub fn sigma0(n: u64) -> u64 {
    factor_u64(n).factors().iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Number of primitive characters modulo `n`.
///
/// Multiplicative, with `p - 2` at a prime and `p^e (1 - 1/p)^2` at `p^e`, `e > 1`.
pub fn phi_star(n: u64) -> u64 {
    factor_u64(n)
        .prime_powers()
        .map(|(p, e, pe)| if e == 1 { p - 2 } else { pe / (p * p) * (p - 1) * (p - 1) })
        .product()
}

/// `(f * g)(n) = sum_{k | n} f(k) g(n / k)`.
pub fn dirichlet_convolve<T, F, G>(f: F, g: G, n: u64) -> T
where
    T: Zero + Add<Output = T> + Mul<Output = T>,
    F: Fn(u64) -> T,
    G: Fn(u64) -> T,
{
    divisors(n)
        .into_iter()
        .fold(T::zero(), |acc, k| acc + f(k) * g(n / k))
}
