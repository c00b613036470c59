//! Row-style Hermite normal form.
//!
//! Convention fixed for the whole crate: positive pivots, entries above a
//! pivot reduced into [0, pivot), rows ordered by pivot column. This makes
//! the basis of a row lattice canonical, so reports built from it are
//! byte-stable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Incremental Hermite reduction of a stream of rows.
///
/// Rows may carry a tail (extra columns excluded from pivot selection); row
/// operations are applied to the full row, which is what turns this into a
/// simultaneous solver for `A x = b`: insert `[row of A | row of b]` with
/// `pivot_width = cols(A)` and the tails of vanished rows collect the
/// consistency constraints.
pub struct HermiteAccumulator {
    pivot_width: usize,
    width: usize,
    /// Rows with a pivot inside the pivot region, keyed by pivot column.
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    /// Rows whose pivot region reduced to zero but whose tail did not.
    zero_rows: Vec<Vec<BigInt>>,
}

impl HermiteAccumulator {
    pub fn new(width: usize) -> Self {
        Self::with_tail(width, 0)
    }

    pub fn with_tail(pivot_width: usize, tail: usize) -> Self {
        HermiteAccumulator {
            pivot_width,
            width: pivot_width + tail,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            zero_rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn leading(&self, row: &[BigInt], from: usize) -> Option<usize> {
        (from..self.pivot_width).find(|&j| !row[j].is_zero())
    }

    /// Position of the accumulator row with pivot column `col`, if any.
    fn row_with_pivot(&self, col: usize) -> Option<usize> {
        self.pivot_cols.binary_search(&col).ok()
    }

    pub fn insert(&mut self, mut row: Vec<BigInt>) {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let mut from = 0;
        loop {
            let Some(j) = self.leading(&row, from) else {
                if row[self.pivot_width..].iter().any(|e| !e.is_zero()) {
                    self.zero_rows.push(row);
                }
                return;
            };
            match self.row_with_pivot(j) {
                Some(idx) => {
                    let p = self.rows[idx][j].clone();
                    let (q, r) = row[j].div_mod_floor(&p);
                    if !q.is_zero() {
                        let pivot_row = &self.rows[idx];
                        for (x, y) in row.iter_mut().zip(pivot_row) {
                            if !y.is_zero() {
                                *x -= &q * y;
                            }
                        }
                    }
                    if r.is_zero() {
                        from = j + 1;
                    } else {
                        // gcd step: combine the pivot row and the new row so
                        // the pivot becomes gcd(p, r) and the new row gets 0.
                        let e = p.extended_gcd(&r);
                        let (g, s, t) = (e.gcd, e.x, e.y);
                        let a = &p / &g;
                        let b = &r / &g;
                        let old = std::mem::take(&mut self.rows[idx]);
                        let mut new_pivot = vec![BigInt::zero(); self.width];
                        let mut new_row = vec![BigInt::zero(); self.width];
                        for k in 0..self.width {
                            new_pivot[k] = &s * &old[k] + &t * &row[k];
                            new_row[k] = &a * &row[k] - &b * &old[k];
                        }
                        self.rows[idx] = new_pivot;
                        row = new_row;
                        from = j + 1;
                    }
                }
                None => {
                    if row[j].is_negative() {
                        for x in row.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    let pos = self.pivot_cols.partition_point(|&c| c < j);
                    self.pivot_cols.insert(pos, j);
                    self.rows.insert(pos, row);
                    return;
                }
            }
        }
    }

    /// Canonical reduced rows (pivot order, entries above pivots in [0, p)).
    pub fn into_reduced_rows(mut self) -> Vec<Vec<BigInt>> {
        self.reduce_above();
        self.rows
    }

    /// As `into_reduced_rows`, but also returns the rows that vanished in
    /// the pivot region with a nonzero tail.
    pub fn into_reduced_rows_and_defects(mut self) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
        self.reduce_above();
        (self.rows, self.zero_rows)
    }

    fn reduce_above(&mut self) {
        // Forward order: reducing at pivot column j only touches columns >= j
        // of the upper rows, and later (larger-j) pivots clean up the fill-in.
        for idx in 0..self.rows.len() {
            let j = self.pivot_cols[idx];
            for upper in 0..idx {
                let q = self.rows[upper][j].div_mod_floor(&self.rows[idx][j]).0;
                if q.is_zero() {
                    continue;
                }
                let lower = self.rows[idx].clone();
                for (x, y) in self.rows[upper].iter_mut().zip(&lower) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
}

/// Canonical basis of the row lattice spanned by the given vectors.
///
/// Empty input yields an empty basis; zero rows are dropped.
pub fn hermite_basis(spanning_rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if spanning_rows.is_empty() {
        return Vec::new();
    }
    let width = spanning_rows[0].len();
    let mut acc = HermiteAccumulator::new(width);
    for r in spanning_rows {
        assert_eq!(r.len(), width, "all vectors must share one dimension");
        acc.insert(r.clone());
    }
    acc.into_reduced_rows()
}
