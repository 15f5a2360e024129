//! Continuants of a sequence of partial quotients.
//!
//! For a sequence `(u_1, ..., u_t)`, the continuant `c(i, j)` is the
//! determinant of the tridiagonal matrix with `u_i, ..., u_j` on the diagonal,
//! `1` above it and `-1` below it. Two boundary values extend the definition:
//! `c(j + 1, j) = 1` and `c(j + 2, j) = 0`.
//!
//! Indices are 1-based and signed (`j` may be `-1`). Internally a sequence is
//! stored in a `Vec`, so `u_k` lives at `terms[k - 1]`; that mapping is done
//! only by [`QuotientSequence::term`].

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{checked_add, checked_mul, signed, Error, Result};

/// A finite sequence of positive partial quotients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u128>", into = "Vec<u128>")]
pub struct QuotientSequence(Vec<u128>);

impl QuotientSequence {
    pub fn new(terms: Vec<u128>) -> Result<Self> {
        if let Some(position) = terms.iter().position(|&q| q == 0) {
            return Err(Error::NonPositiveTerm {
                position: position + 1,
            });
        }
        Ok(Self(terms))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[u128] {
        &self.0
    }

    /// The term `u_k`, 1-based.
    pub fn term(&self, k: usize) -> Option<u128> {
        k.checked_sub(1).and_then(|idx| self.0.get(idx)).copied()
    }

    /// `(u_from, ..., u_to)`, 1-based and inclusive; empty when `from > to`.
    pub fn window(&self, from: usize, to: usize) -> QuotientSequence {
        if from == 0 || from > to || to > self.len() {
            return Self::empty();
        }
        Self(self.0[from - 1..to].to_vec())
    }

    pub fn reverse(&self) -> QuotientSequence {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `(q_1, ..., q_s, q_s, ..., q_1)`.
    pub fn palindrome(&self) -> QuotientSequence {
        let mut terms = self.0.clone();
        terms.extend(self.0.iter().rev());
        Self(terms)
    }

    /// True when the sequence reads the same both ways and has even length.
    pub fn is_even_palindrome(&self) -> bool {
        self.len().is_multiple_of(2) && self.0.iter().eq(self.0.iter().rev())
    }
}

impl TryFrom<Vec<u128>> for QuotientSequence {
    type Error = Error;

    fn try_from(terms: Vec<u128>) -> Result<Self> {
        Self::new(terms)
    }
}

impl From<QuotientSequence> for Vec<u128> {
    fn from(seq: QuotientSequence) -> Self {
        seq.0
    }
}

impl fmt::Display for QuotientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, q) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

/// A positive fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFraction", into = "RawFraction")]
pub struct ReducedFraction {
    numerator: u128,
    denominator: u128,
}

#[derive(Serialize, Deserialize)]
struct RawFraction {
    numerator: u128,
    denominator: u128,
}

impl ReducedFraction {
    /// Fails unless both parts are positive and coprime.
    pub fn new(numerator: u128, denominator: u128) -> Result<Self> {
        if numerator == 0 || denominator == 0 || numerator.gcd(&denominator) != 1 {
            return Err(Error::NotReduced {
                numerator,
                denominator,
            });
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn one() -> Self {
        Self {
            numerator: 1,
            denominator: 1,
        }
    }

    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    pub fn denominator(&self) -> u128 {
        self.denominator
    }
}

impl TryFrom<RawFraction> for ReducedFraction {
    type Error = Error;

    fn try_from(raw: RawFraction) -> Result<Self> {
        Self::new(raw.numerator, raw.denominator)
    }
}

impl From<ReducedFraction> for RawFraction {
    fn from(f: ReducedFraction) -> Self {
        RawFraction {
            numerator: f.numerator,
            denominator: f.denominator,
        }
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn check_range(seq: &QuotientSequence, i: i64, j: i64) -> Result<()> {
    let t = seq.len() as i64;
    if i < 1 || j < i - 2 || j > t {
        return Err(Error::IndexOutOfRange(format!(
            "c({i}, {j}) needs 1 <= i and i - 2 <= j <= {t}"
        )));
    }
    Ok(())
}

/// The continuant `c(i, j)` of `seq`, built left to right with
/// `c(i, k) = u_k c(i, k - 1) + c(i, k - 2)`.
pub fn continuant(seq: &QuotientSequence, i: i64, j: i64) -> Result<u128> {
    check_range(seq, i, j)?;
    if j == i - 2 {
        return Ok(0);
    }
    let (mut before, mut current) = (0u128, 1u128);
    for k in i..=j {
        let u = seq.term(k as usize).expect("index checked above");
        let next = checked_add(checked_mul(u, current, "continuant")?, before, "continuant")?;
        before = current;
        current = next;
    }
    Ok(current)
}

/// The continuants consumed by the remainder formulas: the prefix row
/// `c(1, j)` for `j = -1..=t`, the suffix column `c(i, t)` for `i = 1..=t+2`
/// and the column `c(i, t - 1)` for `i = 1..=t+1`.
///
/// `c(t + 2, t - 1)` lies outside the boundary conventions, which is why the
/// last column is one entry shorter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuantTable {
    prefix: Vec<u128>,
    to_last: Vec<u128>,
    to_penultimate: Vec<u128>,
}

impl ContinuantTable {
    pub fn new(seq: &QuotientSequence) -> Result<Self> {
        let t = seq.len();
        let terms = seq.terms();

        // prefix[j + 1] = c(1, j)
        let mut prefix = Vec::with_capacity(t + 2);
        prefix.extend([0, 1]);
        for (k, &u) in terms.iter().enumerate() {
            let next = checked_add(checked_mul(u, prefix[k + 1], "continuant")?, prefix[k], "continuant")?;
            prefix.push(next);
        }

        let to_last = suffix_column(terms, t)?;
        let to_penultimate = if t == 0 {
            // only c(1, -1)
            vec![0]
        } else {
            suffix_column(terms, t - 1)?
        };

        Ok(Self {
            prefix,
            to_last,
            to_penultimate,
        })
    }

    pub fn len(&self) -> usize {
        self.prefix.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `c(1, j)` for `-1 <= j <= t`.
    pub fn first_row(&self, j: i64) -> Option<u128> {
        usize::try_from(j + 1).ok().and_then(|idx| self.prefix.get(idx)).copied()
    }

    /// `c(i, t)` for `1 <= i <= t + 2`.
    pub fn to_last(&self, i: i64) -> Option<u128> {
        usize::try_from(i - 1).ok().and_then(|idx| self.to_last.get(idx)).copied()
    }

    /// `c(i, t - 1)` for `1 <= i <= t + 1`.
    pub fn to_penultimate(&self, i: i64) -> Option<u128> {
        usize::try_from(i - 1)
            .ok()
            .and_then(|idx| self.to_penultimate.get(idx))
            .copied()
    }
}

/// `c(i, end)` for `i = 1..=end + 2`, built right to left with
/// `c(i, end) = u_i c(i + 1, end) + c(i + 2, end)`.
fn suffix_column(terms: &[u128], end: usize) -> Result<Vec<u128>> {
    let mut column = vec![0u128; end + 2];
    column[end] = 1;
    for idx in (0..end).rev() {
        column[idx] = checked_add(
            checked_mul(terms[idx], column[idx + 1], "continuant")?,
            column[idx + 2],
            "continuant",
        )?;
    }
    Ok(column)
}

fn parity_sign(exponent: i64) -> i128 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn c(seq: &QuotientSequence, i: i64, j: i64) -> Result<i128> {
    signed(continuant(seq, i, j)?, "continuant")
}

fn product(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("continuant product"))
}

fn difference(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("continuant product"))
}

/// Checks `c(i,s) c(l,m) - c(i,m) c(l,s) = (-1)^(m-l+1) c(i,l-2) c(m+2,s)`
/// for `1 <= i <= l <= m + 2` and `m <= s <= t`.
pub fn euler_identity_holds(seq: &QuotientSequence, i: i64, l: i64, m: i64, s: i64) -> Result<bool> {
    let t = seq.len() as i64;
    if !(1 <= i && i <= l && l <= m + 2 && m <= s && s <= t) {
        return Err(Error::IndexOutOfRange(format!(
            "Euler identity needs 1 <= i <= l <= m + 2 and m <= s <= {t}, got (i, l, m, s) = ({i}, {l}, {m}, {s})"
        )));
    }
    let lhs = difference(product(c(seq, i, s)?, c(seq, l, m)?)?, product(c(seq, i, m)?, c(seq, l, s)?)?)?;
    let rhs = parity_sign(m - l + 1) * product(c(seq, i, l - 2)?, c(seq, m + 2, s)?)?;
    Ok(lhs == rhs)
}

/// `c(1, l-2) = (-1)^(l+s) (c(1,s) c(l,s-1) - c(1,s-1) c(l,s))` for
/// `1 <= l <= s + 1`, `0 <= s <= t`.
pub fn prefix_difference_holds(seq: &QuotientSequence, l: i64, s: i64) -> Result<bool> {
    let t = seq.len() as i64;
    if !(1 <= l && l <= s + 1 && 0 <= s && s <= t) {
        return Err(Error::IndexOutOfRange(format!(
            "needs 1 <= l <= s + 1 and 0 <= s <= {t}, got (l, s) = ({l}, {s})"
        )));
    }
    let rhs = parity_sign(l + s)
        * difference(product(c(seq, 1, s)?, c(seq, l, s - 1)?)?, product(c(seq, 1, s - 1)?, c(seq, l, s)?)?)?;
    Ok(c(seq, 1, l - 2)? == rhs)
}

/// `c(i,s) = c(i,m) c(m+1,s) + c(i,m-1) c(m+2,s)` for `1 <= i <= m + 1`,
/// `m <= s <= t`.
pub fn split_holds(seq: &QuotientSequence, i: i64, m: i64, s: i64) -> Result<bool> {
    let t = seq.len() as i64;
    if !(1 <= i && i <= m + 1 && m <= s && s <= t) {
        return Err(Error::IndexOutOfRange(format!(
            "needs 1 <= i <= m + 1 and m <= s <= {t}, got (i, m, s) = ({i}, {m}, {s})"
        )));
    }
    let rhs = product(c(seq, i, m)?, c(seq, m + 1, s)?)? + product(c(seq, i, m - 1)?, c(seq, m + 2, s)?)?;
    Ok(c(seq, i, s)? == rhs)
}

/// `c(i,s) = u_i c(i+1,s) + c(i+2,s)` for `1 <= i <= s <= t`.
pub fn front_recurrence_holds(seq: &QuotientSequence, i: i64, s: i64) -> Result<bool> {
    let t = seq.len() as i64;
    if !(1 <= i && i <= s && s <= t) {
        return Err(Error::IndexOutOfRange(format!(
            "needs 1 <= i <= s <= {t}, got (i, s) = ({i}, {s})"
        )));
    }
    let u = signed(seq.term(i as usize).expect("range checked"), "term")?;
    Ok(c(seq, i, s)? == product(u, c(seq, i + 1, s)?)? + c(seq, i + 2, s)?)
}

/// `c(i,s) = u_s c(i,s-1) + c(i,s-2)` for `1 <= i <= s <= t`.
pub fn back_recurrence_holds(seq: &QuotientSequence, i: i64, s: i64) -> Result<bool> {
    let t = seq.len() as i64;
    if !(1 <= i && i <= s && s <= t) {
        return Err(Error::IndexOutOfRange(format!(
            "needs 1 <= i <= s <= {t}, got (i, s) = ({i}, {s})"
        )));
    }
    let u = signed(seq.term(s as usize).expect("range checked"), "term")?;
    Ok(c(seq, i, s)? == product(u, c(seq, i, s - 1)?)? + c(seq, i, s - 2)?)
}

/// Value of the simple continued fraction `[q_1, ..., q_t]` as
/// `c(1, t) / c(2, t)`. The empty continued fraction is taken to be `1/1`,
/// overriding the formula's `1/0`.
pub fn cf_eval(seq: &QuotientSequence) -> Result<ReducedFraction> {
    if seq.is_empty() {
        return Ok(ReducedFraction::one());
    }
    let t = seq.len() as i64;
    let table = ContinuantTable::new(seq)?;
    let numerator = table.first_row(t).expect("t is in range");
    let denominator = table.to_last(2).expect("t >= 1");
    ReducedFraction::new(numerator, denominator)
        .map_err(|e| Error::Inconsistency(format!("continuant quotient of {seq} is not reduced: {e}")))
}
