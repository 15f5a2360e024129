//! Continuants, palindromic Euclidean traces and the arithmetic that falls
//! out of them.
//!
//! When `a` is a square root of `-1` modulo `n`, the Euclidean algorithm on
//! `(n, a)` produces a palindromic list of quotients `q1, ..., qs, qs, ..., q1`.
//! This crate traces that algorithm, reads the two-squares representation
//! `n = x^2 + y^2` off the remainders, evaluates the remainders in closed form
//! from continuants of the half sequence, and enumerates the two families of
//! quadratic forms in the remainders that are exact multiples of `n`.
//!
//! Indices follow the usual mathematical layout: remainders are `r_1 = n`,
//! `r_2 = a`, ..., and continuants `c(i, j)` are indexed from 1. The internal
//! 0-based storage is hidden behind accessors in [`continuants`] and
//! [`euclid`].
//!
//! All arithmetic is exact on `u128`/`i128`; any overflow is reported as
//! [`Error::Overflow`] rather than wrapping.

pub mod cli;
pub mod continuants;
mod error;
pub mod euclid;
pub mod identities;
pub mod oracle;
pub mod two_squares;
pub mod verify;

pub use continuants::{cf_eval, continuant, ContinuantTable, QuotientSequence, ReducedFraction};
pub use error::{Error, Result};
pub use euclid::{symmetric_trace, EuclidTrace, SweepLimit};
pub use identities::{enumerate_identities, form_identity, nest_chain, Family, FormIdentity, NestChain};
pub use two_squares::{all_primitive_representations, brillhart, TwoSquares};

pub(crate) fn checked_mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub(crate) fn checked_add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub(crate) fn signed(v: u128, what: &'static str) -> Result<i128> {
    i128::try_from(v).map_err(|_| Error::Overflow(what))
}
