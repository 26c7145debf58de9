//! Generalized Dedekind sums attached to a pair of Dirichlet characters.
//!
//! The crate is layered bottom-up:
//!
//! * [`chargroup`] builds `(Z/qZ)^x`, enumerates Dirichlet characters and
//!   supplies the multiplicative functions used in divisor sums.
//! * [`analytic`] holds the sawtooth `B1`, its character twist `B1,chi`,
//!   Gauss sums and `L(1, chi)` for odd characters.
//! * [`dedekind`] evaluates `S(a, c)` in four independent ways and exposes
//!   the `Gamma0` matrix interface together with the symmetry laws.
//! * [`moments`] computes the finite Fourier transform of `S`, the exact
//!   second-moment identity and the growth sweep.
//! * [`cli`] is the command-line front end.

pub mod analytic;
pub mod chargroup;
pub mod cli;
pub mod dedekind;
pub mod error;
pub mod moments;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
