//! Euclidean-algorithm traces and palindromic quotient detection.
//!
//! Remainders are stored as `r_1 = n, r_2 = a, ..., r_{t+2} = 0` and
//! quotients as `q_1, ..., q_t`, so that `r_k = q_k r_{k+1} + r_{k+2}`.
//! The accessors [`EuclidTrace::remainder`] and [`EuclidTrace::quotient`]
//! take those 1-based subscripts.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::continuants::QuotientSequence;
use crate::{Error, Result};

/// Default largest `n` accepted by exhaustive scans.
pub const DEFAULT_MAX_SWEEP: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_SWEEP`].
pub const MAX_SWEEP_ENV: &str = "SYMEUCLID_MAX_SWEEP";

/// Upper bound on `n` for the O(n) scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepLimit(pub u128);

impl Default for SweepLimit {
    fn default() -> Self {
        Self(DEFAULT_MAX_SWEEP)
    }
}

impl SweepLimit {
    /// Reads `SYMEUCLID_MAX_SWEEP`, falling back to the default when it is
    /// unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(MAX_SWEEP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self)
            .unwrap_or_default()
    }

    pub fn check(self, n: u128) -> Result<()> {
        if n > self.0 {
            return Err(Error::SweepBoundExceeded { n, bound: self.0 });
        }
        Ok(())
    }
}

/// One run of the Euclidean algorithm on `(n, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclidTrace {
    remainders: Vec<u128>,
    quotients: Vec<u128>,
    convention_applied: bool,
    symmetric: bool,
    half_length: Option<usize>,
}

impl EuclidTrace {
    pub fn n(&self) -> u128 {
        self.remainders[0]
    }

    pub fn a(&self) -> u128 {
        self.remainders[1]
    }

    pub fn remainders(&self) -> &[u128] {
        &self.remainders
    }

    pub fn quotients(&self) -> &[u128] {
        &self.quotients
    }

    /// `r_k`, 1-based.
    pub fn remainder(&self, k: usize) -> Option<u128> {
        k.checked_sub(1).and_then(|idx| self.remainders.get(idx)).copied()
    }

    /// `q_k`, 1-based.
    pub fn quotient(&self, k: usize) -> Option<u128> {
        k.checked_sub(1).and_then(|idx| self.quotients.get(idx)).copied()
    }

    pub fn convention_applied(&self) -> bool {
        self.convention_applied
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `s` when the quotients are `q_1, ..., q_s, q_s, ..., q_1`.
    pub fn half_length(&self) -> Option<usize> {
        self.half_length
    }

    /// `(q_1, ..., q_s)` of a symmetric trace.
    pub fn half_quotients(&self) -> Option<QuotientSequence> {
        self.half_length
            .map(|s| QuotientSequence::new(self.quotients[..s].to_vec()).expect("quotients are positive"))
    }

    pub fn quotient_sequence(&self) -> QuotientSequence {
        QuotientSequence::new(self.quotients.clone()).expect("quotients are positive")
    }

    /// Splits the final division `r = q * 1 + 0` into `r = (q - 1) * 1 + 1`
    /// and `1 = 1 * 1 + 0`. The result is unclassified.
    pub fn apply_convention(&self) -> Result<EuclidTrace> {
        if self.convention_applied {
            return Err(Error::ConventionNotApplicable("the final division is already split"));
        }
        let last = *self.quotients.last().expect("a trace has at least one quotient");
        if last < 2 {
            return Err(Error::ConventionNotApplicable("the final quotient is 1"));
        }
        let mut quotients = self.quotients.clone();
        *quotients.last_mut().unwrap() = last - 1;
        quotients.push(1);
        let mut remainders = self.remainders.clone();
        remainders.insert(remainders.len() - 1, 1);
        Ok(EuclidTrace {
            remainders,
            quotients,
            convention_applied: true,
            symmetric: false,
            half_length: None,
        })
    }

    fn into_symmetric(mut self) -> Self {
        self.symmetric = true;
        self.half_length = Some(self.quotients.len() / 2);
        self
    }
}

fn validate_pair(n: u128, a: u128) -> Result<()> {
    if a < 1 || a >= n {
        return Err(Error::InvalidPair { n, a });
    }
    if n.gcd(&a) != 1 {
        return Err(Error::NotCoprime { n, a });
    }
    Ok(())
}

/// The plain division-algorithm trace of `(n, a)`, with strictly decreasing
/// remainders.
pub fn euclid_trace(n: u128, a: u128) -> Result<EuclidTrace> {
    validate_pair(n, a)?;
    let mut remainders = vec![n, a];
    let mut quotients = Vec::new();
    let (mut big, mut small) = (n, a);
    while small != 0 {
        let (q, r) = big.div_rem(&small);
        quotients.push(q);
        remainders.push(r);
        big = small;
        small = r;
    }
    Ok(EuclidTrace {
        remainders,
        quotients,
        convention_applied: false,
        symmetric: false,
        half_length: None,
    })
}

/// The trace of `(n, a)` whose quotients form an even-length palindrome,
/// taking the plain trace if it qualifies and the split trace otherwise.
/// At most one of them can.
pub fn symmetric_trace(n: u128, a: u128) -> Result<EuclidTrace> {
    let plain = euclid_trace(n, a)?;
    if plain.quotient_sequence().is_even_palindrome() {
        return Ok(plain.into_symmetric());
    }
    let split = plain.apply_convention()?;
    if split.quotient_sequence().is_even_palindrome() {
        return Ok(split.into_symmetric());
    }
    Err(Error::NotSymmetric { n, a })
}

/// `x * y mod m` without overflow.
fn mul_mod(x: u128, y: u128, m: u128) -> u128 {
    let (x, y) = (x % m, y % m);
    if let Some(p) = x.checked_mul(y) {
        return p % m;
    }
    let (mut acc, mut base, mut exp) = (0u128, x, y);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = add_mod(acc, base, m);
        }
        base = add_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn add_mod(x: u128, y: u128, m: u128) -> u128 {
    if x >= m - y {
        x - (m - y)
    } else {
        x + y
    }
}

/// Whether `a^2 = -1 (mod n)`.
pub fn is_sqrt_minus_one(n: u128, a: u128) -> bool {
    assert!(n >= 2, "modulus must be at least 2");
    add_mod(mul_mod(a, a, n), 1, n) == 0
}

/// Every `a` in `[1, n - 1]` with `a^2 = -1 (mod n)`, ascending.
pub fn sqrt_minus_one_all(n: u128, limit: SweepLimit) -> Result<Vec<u128>> {
    if n < 2 {
        return Err(Error::InvalidPair { n, a: 0 });
    }
    limit.check(n)?;
    // roots come in pairs a, n - a; scan the lower half and mirror
    let lower: Vec<u128> = (1..=n / 2).filter(|&a| is_sqrt_minus_one(n, a)).collect();
    let mut roots = lower.clone();
    roots.extend(lower.iter().rev().map(|&a| n - a).filter(|&b| b > n / 2));
    Ok(roots)
}
