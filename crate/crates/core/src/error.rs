use thiserror::Error;

/// Failures raised by the arithmetic, analytic and moment layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NotPositive(i64),

    #[error("gcd({a}, {c}) = {gcd} > 1")]
    NotCoprime { a: i64, c: i64, gcd: i64 },

    #[error("{divisor} does not divide {n}")]
    NotDivisible { divisor: u64, n: u64 },

    #[error("lower-left entry {c} is not divisible by the level {level}")]
    LevelViolation { c: i64, level: u64 },

    #[error("matrix ({a} {b}; {c} {d}) has determinant {det}, expected 1")]
    Determinant { a: i64, b: i64, c: i64, d: i64, det: i64 },

    #[error("character {0} is not primitive")]
    NotPrimitive(String),

    #[error("character {0} is principal")]
    Principal(String),

    #[error("character {0} is even; only odd characters have L(1) implemented")]
    EvenCharacter(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("identity violated: {0}")]
    Identity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
