//! Two-squares representations read off the Euclidean remainders.
//!
//! If `a^2 = -1 (mod n)`, the first two remainders of the Euclidean
//! algorithm on `(n, a)` that fall below `sqrt(n)` are `x` and `y` with
//! `n = x^2 + y^2`. The loop below stops there instead of finishing the
//! trace.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::euclid::{is_sqrt_minus_one, sqrt_minus_one_all, SweepLimit};
use crate::{checked_add, checked_mul, Error, Result};

/// A representation `x^2 + y^2`, normalised so that `x >= y`.
///
/// `x = y` only happens for `n = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwoSquares {
    pub x: u128,
    pub y: u128,
}

impl TwoSquares {
    /// Orders the pair so that `x >= y`.
    pub fn new(p: u128, q: u128) -> Self {
        Self {
            x: p.max(q),
            y: p.min(q),
        }
    }

    pub fn value(&self) -> Result<u128> {
        checked_add(
            checked_mul(self.x, self.x, "sum of squares")?,
            checked_mul(self.y, self.y, "sum of squares")?,
            "sum of squares",
        )
    }
}

impl fmt::Display for TwoSquares {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `n = x^2 + y^2` from the remainders of `(n, a)`, where `a^2 = -1 (mod n)`.
pub fn brillhart(n: u128, a: u128) -> Result<TwoSquares> {
    if a < 1 || a >= n {
        return Err(Error::InvalidPair { n, a });
    }
    if !is_sqrt_minus_one(n, a) {
        return Err(Error::NotSqrtMinusOne { n, a });
    }

    let below_root = |r: u128| r.checked_mul(r).is_some_and(|sq| sq < n);
    let (mut prev, mut cur) = (n, a);
    while !below_root(cur) {
        (prev, cur) = (cur, prev % cur);
    }
    let x = cur;
    // y = 0 only when x = 1 closes the plain trace; the split final
    // division 1 = 1 * 1 + 0 makes the next remainder 1 (this is n = 2)
    let y = match prev % cur {
        0 => 1,
        y => y,
    };

    let rep = TwoSquares { x, y };
    if rep.value()? != n || x < y || x.gcd(&y) != 1 {
        return Err(Error::Inconsistency(format!(
            "remainders ({x}, {y}) of ({n}, {a}) do not give a primitive representation"
        )));
    }
    Ok(rep)
}

/// Every primitive representation of `n`, one per pair `{a, n - a}` of
/// square roots of -1.
pub fn all_primitive_representations(n: u128, limit: SweepLimit) -> Result<BTreeSet<TwoSquares>> {
    let roots = sqrt_minus_one_all(n, limit)?;
    roots
        .iter()
        .filter(|&&a| a <= n - a)
        .map(|&a| brillhart(n, a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::symmetric_trace;

    #[test]
    fn worked_examples() {
        assert_eq!(brillhart(829, 246).unwrap(), TwoSquares { x: 27, y: 10 });
        assert_eq!(brillhart(5, 2).unwrap(), TwoSquares { x: 2, y: 1 });
        assert_eq!(brillhart(65, 8).unwrap(), TwoSquares { x: 8, y: 1 });
        assert_eq!(brillhart(65, 18).unwrap(), TwoSquares { x: 7, y: 4 });
        assert_eq!(brillhart(2, 1).unwrap(), TwoSquares { x: 1, y: 1 });
    }

    #[test]
    fn matches_middle_of_full_trace() {
        for (n, a) in [(829, 246), (829, 583), (65, 47), (10, 7), (2, 1)] {
            let trace = symmetric_trace(n, a).unwrap();
            let s = trace.half_length().unwrap();
            let rep = brillhart(n, a).unwrap();
            assert_eq!((rep.x, rep.y), (trace.remainder(s + 1).unwrap(), trace.remainder(s + 2).unwrap()));
        }
    }

    #[test]
    fn rejects_non_roots() {
        assert_eq!(brillhart(7, 3), Err(Error::NotSqrtMinusOne { n: 7, a: 3 }));
        assert_eq!(brillhart(7, 7), Err(Error::InvalidPair { n: 7, a: 7 }));
        assert_eq!(brillhart(10, 0), Err(Error::InvalidPair { n: 10, a: 0 }));
    }

    #[test]
    fn all_representations() {
        let limit = SweepLimit::default();
        let reps: Vec<_> = all_primitive_representations(65, limit).unwrap().into_iter().collect();
        assert_eq!(reps, vec![TwoSquares::new(7, 4), TwoSquares::new(8, 1)]);
        let reps: Vec<_> = all_primitive_representations(5, limit).unwrap().into_iter().collect();
        assert_eq!(reps, vec![TwoSquares::new(2, 1)]);
        assert!(all_primitive_representations(7, limit).unwrap().is_empty());
        assert!(matches!(
            all_primitive_representations(1000, SweepLimit(999)),
            Err(Error::SweepBoundExceeded { .. })
        ));
    }

    #[test]
    fn large_input() {
        // n = a^2 + 1 with a = 2^60: the remainders are a and 1
        let a = 1u128 << 60;
        assert_eq!(brillhart(a * a + 1, a).unwrap(), TwoSquares { x: a, y: 1 });
    }
}
