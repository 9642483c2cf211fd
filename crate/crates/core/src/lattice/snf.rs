//! Smith normal form over the integers with explicit unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `left * input * right == diag`, with `diag` diagonal, non-negative and
/// satisfying `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, including trailing zeros for rank-deficient input.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.diag.rows().min(self.diag.cols())).map(|i| self.diag[(i, i)].clone()).collect()
    }
}

/// Pivot choice: smallest nonzero absolute value in the trailing block,
/// scanning rows first then columns, so the transforms are reproducible.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                return finish(a, left, right);
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &-&q);
                    left.add_row_multiple(i, t, &-&q);
                }
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    a.add_col_multiple(j, t, &-&q);
                    right.add_col_multiple(j, t, &-&q);
                }
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
    }
    finish(a, left, right)
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn finish(mut a: IntMatrix, mut left: IntMatrix, right: IntMatrix) -> SmithForm {
    for i in 0..a.rows().min(a.cols()) {
        if a[(i, i)].is_negative() {
            a.negate_row(i);
            left.negate_row(i);
        }
    }
    SmithForm { diag: a, left, right }
}
