//! Closed forms for the remainders of a palindromic trace and the quadratic
//! forms in those remainders that are exact multiples of `n`.
//!
//! Throughout, the trace of `(n, a)` has quotients `q_1, ..., q_s, q_s, ..., q_1`
//! and remainders `r_1 = n, ..., r_{2s+1} = 1, r_{2s+2} = 0`, and `c(i, j)`
//! are continuants of the half sequence `(q_1, ..., q_s)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::continuants::{cf_eval, ContinuantTable, QuotientSequence, ReducedFraction};
use crate::euclid::{is_sqrt_minus_one, symmetric_trace, EuclidTrace};
use crate::{checked_add, checked_mul, signed, Error, Result};

fn half_of(trace: &EuclidTrace) -> Result<(usize, QuotientSequence)> {
    match (trace.half_length(), trace.half_quotients()) {
        (Some(s), Some(half)) => Ok((s, half)),
        _ => Err(Error::NotSymmetric {
            n: trace.n(),
            a: trace.a(),
        }),
    }
}

fn remainder_at(trace: &EuclidTrace, k: usize) -> Result<u128> {
    trace
        .remainder(k)
        .ok_or_else(|| Error::IndexOutOfRange(format!("remainder r_{k} does not exist")))
}

/// One `i` of the closed-form remainder check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemainderFormula {
    pub i: usize,
    /// `r_i`
    pub remainder: u128,
    /// `c(1,s) c(i,s) + c(1,s-1) c(i,s-1)`
    pub continuant_form: u128,
    /// `2s - i + 3`
    pub mirror_index: usize,
    /// `r_{2s-i+3}`
    pub mirror_remainder: u128,
    /// `c(1, i-2)`
    pub prefix_continuant: u128,
    /// `(-1)^(i+s) (c(1,s) c(i,s-1) - c(1,s-1) c(i,s))`
    pub signed_form: i128,
}

impl RemainderFormula {
    pub fn holds(&self) -> bool {
        self.remainder == self.continuant_form
            && self.mirror_remainder == self.prefix_continuant
            && i128::try_from(self.prefix_continuant).is_ok_and(|p| p == self.signed_form)
    }
}

/// Evaluates both closed forms for every `i` in `1..=s+1` next to the
/// remainders they describe.
pub fn explicit_remainders(trace: &EuclidTrace) -> Result<Vec<RemainderFormula>> {
    let (s, half) = half_of(trace)?;
    let table = ContinuantTable::new(&half)?;
    let s_i = s as i64;
    let c1s = table.first_row(s_i).expect("in range");
    let c1s_1 = table.first_row(s_i - 1).expect("in range");

    (1..=s + 1)
        .map(|i| {
            let ii = i as i64;
            let cis = table.to_last(ii).expect("i <= s + 1");
            let cis_1 = table.to_penultimate(ii).expect("i <= s + 1");
            let continuant_form = checked_add(
                checked_mul(c1s, cis, "remainder formula")?,
                checked_mul(c1s_1, cis_1, "remainder formula")?,
                "remainder formula",
            )?;
            let cross = signed(checked_mul(c1s, cis_1, "remainder formula")?, "remainder formula")?
                - signed(checked_mul(c1s_1, cis, "remainder formula")?, "remainder formula")?;
            let signed_form = if (i + s) % 2 == 0 { cross } else { -cross };
            let mirror_index = 2 * s + 3 - i;
            Ok(RemainderFormula {
                i,
                remainder: remainder_at(trace, i)?,
                continuant_form,
                mirror_index,
                mirror_remainder: remainder_at(trace, mirror_index)?,
                prefix_continuant: table.first_row(ii - 2).expect("i - 2 >= -1"),
                signed_form,
            })
        })
        .collect()
}

/// Which of the two quadratic-form families an identity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `r_{i-j+1} r_{i+j+1} + r_{2s+2-i-j} r_{2s+2-i+j}`
    Plus,
    /// `r_{i-j+1} r_{i+j+2} - r_{2s+1-i-j} r_{2s+2-i+j}`
    Minus,
}

impl Family {
    fn symbol(self) -> char {
        match self {
            Family::Plus => '+',
            Family::Minus => '-',
        }
    }
}

/// A single instance `left * right (+/-) left' * right' = multiplier * n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormIdentity {
    pub family: Family,
    pub i: usize,
    pub j: usize,
    pub n: u128,
    /// 1-based remainder subscripts, in the order they appear in the form.
    pub factor_indices: [usize; 4],
    pub factor_values: [u128; 4],
    pub multiplier: u128,
    /// `[q_{i-j+1}, ..., q_s, q_s, ..., q_{i-j+1}]`, whose trace supplies the
    /// multiplier as its remainder number `2j+1` (plus) or `2j+2` (minus).
    pub sub_cf: QuotientSequence,
}

impl FormIdentity {
    /// Zero factors, a zero multiplier, or a multiplier of `n` itself.
    pub fn is_degenerate(&self) -> bool {
        self.factor_values.contains(&0) || self.multiplier == 0 || self.multiplier == self.n
    }

    /// The left-hand side as written, e.g. `246·91 - 3·1`.
    pub fn lhs_expression(&self) -> String {
        let [a, b, c, d] = self.factor_values;
        let [ia, ib, ic, id] = self.factor_indices;
        let term = |x: u128, y: u128, same: bool| {
            if same {
                format!("{x}^2")
            } else {
                format!("{x}·{y}")
            }
        };
        format!(
            "{} {} {}",
            term(a, b, ia == ib),
            self.family.symbol(),
            term(c, d, ic == id)
        )
    }
}

impl fmt::Display for FormIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} · {}", self.lhs_expression(), self.multiplier, self.n)
    }
}

/// Remainders of the palindromic trace with quotients `sub_cf`. The empty
/// sequence has remainders `(1, 0)`, matching `c(1, 0)` and `c(1, -1)`.
fn nested_remainders(sub_cf: &QuotientSequence) -> Result<Vec<u128>> {
    if sub_cf.is_empty() {
        return Ok(vec![1, 0]);
    }
    let value = cf_eval(sub_cf)?;
    let nested = symmetric_trace(value.numerator(), value.denominator())
        .map_err(|e| Error::Inconsistency(format!("trace of {sub_cf} = {value}: {e}")))?;
    if nested.quotients() != sub_cf.terms() {
        return Err(Error::Inconsistency(format!(
            "{value} traces to quotients {:?}, expected {sub_cf}",
            nested.quotients()
        )));
    }
    Ok(nested.remainders().to_vec())
}

/// The identity of the given family at `(i, j)`, `0 <= j <= i <= s`.
///
/// The multiplier is found twice, by dividing the left-hand side by `n` and
/// by tracing the nested palindrome, and the two must agree.
pub fn form_identity(trace: &EuclidTrace, i: usize, j: usize, family: Family) -> Result<FormIdentity> {
    let (s, half) = half_of(trace)?;
    if j > i || i > s {
        return Err(Error::IndexOutOfRange(format!(
            "identity needs 0 <= j <= i <= s = {s}, got (i, j) = ({i}, {j})"
        )));
    }
    let n = trace.n();
    let factor_indices = match family {
        Family::Plus => [i - j + 1, i + j + 1, 2 * s + 2 - i - j, 2 * s + 2 - i + j],
        Family::Minus => [i - j + 1, i + j + 2, 2 * s + 1 - i - j, 2 * s + 2 - i + j],
    };
    let mut factor_values = [0u128; 4];
    for (value, &k) in factor_values.iter_mut().zip(&factor_indices) {
        *value = remainder_at(trace, k)?;
    }
    let [a, b, c, d] = factor_values;
    let first = checked_mul(a, b, "identity left-hand side")?;
    let second = checked_mul(c, d, "identity left-hand side")?;
    let lhs = match family {
        Family::Plus => checked_add(first, second, "identity left-hand side")?,
        Family::Minus => first.checked_sub(second).ok_or_else(|| {
            Error::Inconsistency(format!("negative left-hand side at (i, j) = ({i}, {j}) for {n}/{}", trace.a()))
        })?,
    };
    if lhs % n != 0 {
        return Err(Error::Inconsistency(format!(
            "{family:?} form at (i, j) = ({i}, {j}) gives {lhs}, not a multiple of {n}"
        )));
    }
    let multiplier = lhs / n;

    let sub_cf = half.window(i - j + 1, s).palindrome();
    let nested = nested_remainders(&sub_cf)?;
    let position = match family {
        Family::Plus => 2 * j + 1,
        Family::Minus => 2 * j + 2,
    };
    let expected = nested.get(position - 1).copied().ok_or_else(|| {
        Error::Inconsistency(format!("trace of {sub_cf} has no remainder number {position}"))
    })?;
    if expected != multiplier {
        return Err(Error::Inconsistency(format!(
            "{family:?} form at (i, j) = ({i}, {j}) for {n}/{}: multiplier {multiplier}, nested remainder {expected}",
            trace.a()
        )));
    }

    Ok(FormIdentity {
        family,
        i,
        j,
        n,
        factor_indices,
        factor_values,
        multiplier,
        sub_cf,
    })
}

/// Both families over every `0 <= j <= i <= s`: `(s + 1)(s + 2)` identities.
///
/// Ordered by `i - j`, then by `j`, with the plus form before the minus form.
pub fn enumerate_identities(trace: &EuclidTrace) -> Result<Vec<FormIdentity>> {
    let (s, _) = half_of(trace)?;
    let mut out = Vec::with_capacity((s + 1) * (s + 2));
    for gap in 0..=s {
        for j in 0..=s - gap {
            for family in [Family::Plus, Family::Minus] {
                out.push(form_identity(trace, gap + j, j, family)?);
            }
        }
    }
    Ok(out)
}

/// The reduced fractions `[q_k, ..., q_s, q_s, ..., q_k]` for `k = 1..=s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestChain {
    pub entries: Vec<ReducedFraction>,
    /// `(a^2 + 1) / n` of each step that produced the next entry.
    pub multipliers: Vec<u128>,
}

/// One peeling step: `m = (a^2 + 1) / n` and `a mod m`. When `m > 1`,
/// `m / (a mod m)` values the palindrome with its outer quotients removed.
pub fn nest_step(n: u128, a: u128) -> Result<(u128, u128)> {
    let square = checked_add(checked_mul(a, a, "a^2 + 1")?, 1, "a^2 + 1")?;
    if n == 0 || square % n != 0 {
        return Err(Error::NotSqrtMinusOne { n, a });
    }
    let m = square / n;
    Ok((m, a % m))
}

/// Peels `n / a` down to its innermost palindrome, stopping when the step
/// multiplier reaches 1 (the empty continued fraction).
pub fn nest_chain(n: u128, a: u128) -> Result<NestChain> {
    if a < 1 || a >= n {
        return Err(Error::InvalidPair { n, a });
    }
    if !is_sqrt_minus_one(n, a) {
        return Err(Error::NotSqrtMinusOne { n, a });
    }
    let mut entries = vec![ReducedFraction::new(n, a)?];
    let mut multipliers = Vec::new();
    let (mut num, mut den) = (n, a);
    loop {
        let (m, rest) = nest_step(num, den)?;
        if m == 1 {
            break;
        }
        let next = ReducedFraction::new(m, rest)
            .map_err(|e| Error::Inconsistency(format!("step from {num}/{den}: {e}")))?;
        multipliers.push(m);
        entries.push(next);
        (num, den) = (m, rest);
    }
    Ok(NestChain { entries, multipliers })
}
