//! Brute-force reference implementations.
//!
//! Each one takes a different route from the production code so that
//! agreement between the two means something: cofactor expansion instead of
//! the continuant recurrence, a rational fold instead of continuant quotients,
//! and an exhaustive scan instead of the Euclidean algorithm.

use std::collections::BTreeSet;

use num_integer::{Integer, Roots};
use num_rational::Ratio;

use crate::continuants::{QuotientSequence, ReducedFraction};
use crate::two_squares::TwoSquares;
use crate::{Error, Result};

/// `c(i, j)` as a tridiagonal determinant, expanded along the first row.
pub fn det_continuant(seq: &QuotientSequence, i: usize, j: usize) -> Result<i128> {
    if i < 1 || i > j || j > seq.len() {
        return Err(Error::IndexOutOfRange(format!(
            "determinant needs 1 <= i <= j <= {}, got ({i}, {j})",
            seq.len()
        )));
    }
    let size = j - i + 1;
    let mut matrix = vec![vec![0i128; size]; size];
    for (row, cells) in matrix.iter_mut().enumerate() {
        cells[row] = seq.term(i + row).expect("index checked") as i128;
        if row + 1 < size {
            cells[row + 1] = 1;
        }
        if row > 0 {
            cells[row - 1] = -1;
        }
    }
    let columns: Vec<usize> = (0..size).collect();
    Ok(laplace(&matrix, 0, &columns))
}

/// Determinant of the minor made of rows `row..` and the listed columns.
fn laplace(matrix: &[Vec<i128>], row: usize, columns: &[usize]) -> i128 {
    if columns.is_empty() {
        return 1;
    }
    let mut total = 0i128;
    for (pos, &col) in columns.iter().enumerate() {
        let entry = matrix[row][col];
        if entry == 0 {
            continue;
        }
        let rest: Vec<usize> = columns.iter().copied().filter(|&c| c != col).collect();
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        total += sign * entry * laplace(matrix, row + 1, &rest);
    }
    total
}

/// `[q_1, ..., q_t]` folded from the right as `q_k + 1 / rest`.
pub fn cf_eval_fold(seq: &QuotientSequence) -> ReducedFraction {
    let mut terms = seq.terms().iter().rev();
    let Some(&last) = terms.next() else {
        return ReducedFraction::one();
    };
    let value = terms.fold(Ratio::from_integer(last), |rest, &q| Ratio::from_integer(q) + rest.recip());
    ReducedFraction::new(*value.numer(), *value.denom()).expect("Ratio keeps lowest terms")
}

/// All primitive `x^2 + y^2 = n` with `x >= y >= 1`, by scanning `y`.
pub fn brute_two_squares(n: u128) -> BTreeSet<TwoSquares> {
    let mut found = BTreeSet::new();
    let mut y: u128 = 1;
    while 2 * y * y <= n {
        let rest = n - y * y;
        let x = rest.sqrt();
        if x * x == rest && x.gcd(&y) == 1 {
            found.insert(TwoSquares::new(x, y));
        }
        y += 1;
    }
    found
}

/// Square roots of -1 modulo `n` by trying every residue.
pub fn brute_sqrt_minus_one(n: u128) -> Vec<u128> {
    (1..n).filter(|&a| (a * a + 1) % n == 0).collect()
}
