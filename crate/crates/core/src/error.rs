use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("partial quotients must be positive, found 0 at position {position}")]
    NonPositiveTerm { position: usize },

    #[error("{numerator}/{denominator} is not a reduced fraction of positive integers")]
    NotReduced { numerator: u128, denominator: u128 },

    #[error("expected 1 <= a < n, got n = {n}, a = {a}")]
    InvalidPair { n: u128, a: u128 },

    #[error("n = {n} and a = {a} are not coprime")]
    NotCoprime { n: u128, a: u128 },

    #[error("the quotients of {n}/{a} do not form an even-length palindrome")]
    NotSymmetric { n: u128, a: u128 },

    #[error("{a} is not a square root of -1 modulo {n}")]
    NotSqrtMinusOne { n: u128, a: u128 },

    #[error("cannot split the final division: {0}")]
    ConventionNotApplicable(&'static str),

    #[error("n = {n} exceeds the sweep bound {bound}")]
    SweepBoundExceeded { n: u128, bound: u128 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
