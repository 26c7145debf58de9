//! Exact arithmetic of Dirichlet characters.
//!
//! Character values are kept as exponents `k` with `chi(n) = e(k / N)` and
//! only turned into complex doubles on request, so products, conjugates and
//! conductor computations stay exact.

mod arith;
mod character;
mod factor;
mod group;

pub use arith::{dirichlet_convolve, divisors, euler_phi, mobius, phi_star, sigma0};
pub use character::{
    characters, count_primitive_twists, count_primitive_with_parity, primitive_characters, product, residue,
    root_to_complex, DirichletCharacter, RootOfUnity,
};
pub use factor::{factorize, is_prime, Factorization};
pub use group::{unit_group, CharacterGroup};
