//! Smith normal form over the integers.
//!
//! `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, the diagonal
//! nonnegative with each entry dividing the next. Pivots are chosen by
//! minimal absolute value, ties broken by row-major position, so the
//! decomposition is reproducible run to run.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Positive diagonal entries d_1 | d_2 | ... | d_r.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s.at(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Worker {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Worker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.s, &mut self.u] {
            for c in 0..m.cols() {
                let tmp = m.at(i, c).clone();
                m.set(i, c, m.at(j, c).clone());
                m.set(j, c, tmp);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.s, &mut self.v] {
            for r in 0..m.rows() {
                let tmp = m.at(r, i).clone();
                m.set(r, i, m.at(r, j).clone());
                m.set(r, j, tmp);
            }
        }
    }

    /// (row_i, row_j) <- (p*row_i + q*row_j, r*row_i + t*row_j); pt - qr = ±1.
    fn combine_rows(&mut self, i: usize, j: usize, p: &BigInt, q: &BigInt, r: &BigInt, t: &BigInt) {
        for m in [&mut self.s, &mut self.u] {
            for c in 0..m.cols() {
                let a = m.at(i, c).clone();
                let b = m.at(j, c).clone();
                m.set(i, c, p * &a + q * &b);
                m.set(j, c, r * &a + t * &b);
            }
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, p: &BigInt, q: &BigInt, r: &BigInt, t: &BigInt) {
        for m in [&mut self.s, &mut self.v] {
            for row in 0..m.rows() {
                let a = m.at(row, i).clone();
                let b = m.at(row, j).clone();
                m.set(row, i, p * &a + q * &b);
                m.set(row, j, r * &a + t * &b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.s, &mut self.u] {
            for c in 0..m.cols() {
                let x = -m.at(i, c);
                m.set(i, c, x);
            }
        }
    }

    /// Minimal-|entry| nonzero position in s[k.., k..], row-major tie-break.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..self.s.rows() {
            for j in k..self.s.cols() {
                let e = self.s.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                match &best {
                    Some((cur, _, _)) if *cur <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears column k below the pivot with unimodular row operations.
    fn clear_col(&mut self, k: usize) -> bool {
        let mut changed = false;
        for i in k + 1..self.s.rows() {
            if self.s.at(i, k).is_zero() {
                continue;
            }
            changed = true;
            let a = self.s.at(k, k).clone();
            let b = self.s.at(i, k).clone();
            let (q, r) = b.div_mod_floor(&a);
            if r.is_zero() {
                let one = BigInt::from(1);
                let zero = BigInt::zero();
                let mq = -q;
                self.combine_rows(k, i, &one, &zero, &mq, &one);
            } else {
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let mb = -(&b / &g);
                let ag = &a / &g;
                self.combine_rows(k, i, &x, &y, &mb, &ag);
            }
        }
        changed
    }

    fn clear_row(&mut self, k: usize) -> bool {
        let mut changed = false;
        for j in k + 1..self.s.cols() {
            if self.s.at(k, j).is_zero() {
                continue;
            }
            changed = true;
            let a = self.s.at(k, k).clone();
            let b = self.s.at(k, j).clone();
            let (q, r) = b.div_mod_floor(&a);
            if r.is_zero() {
                let one = BigInt::from(1);
                let zero = BigInt::zero();
                let mq = -q;
                self.combine_cols(k, j, &one, &zero, &mq, &one);
            } else {
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let mb = -(&b / &g);
                let ag = &a / &g;
                self.combine_cols(k, j, &x, &y, &mb, &ag);
            }
        }
        changed
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Worker {
        s: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };

    let steps = m.min(n);
    for k in 0..steps {
        let Some((pi, pj)) = w.find_pivot(k) else {
            break;
        };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            // Row and column clearing can reintroduce entries in each other;
            // iterate until both are simultaneously clear.
            let c1 = w.clear_col(k);
            let c2 = w.clear_row(k);
            if !c1 && !c2 {
                // Pivot must also divide the trailing block, or the diagonal
                // cannot be made to satisfy the divisibility chain later.
                let p = w.s.at(k, k).clone();
                let mut fixed = true;
                'scan: for i in k + 1..m {
                    for j in k + 1..n {
                        if !(w.s.at(i, j) % &p).is_zero() {
                            let one = BigInt::from(1);
                            let zero = BigInt::zero();
                            w.combine_rows(k, i, &one, &one, &zero, &one);
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
        }
    }

    for k in 0..steps {
        if w.s.at(k, k).is_negative() {
            w.negate_row(k);
        }
    }

    // The in-place divisibility fix above already yields a chain, but the
    // trailing-block scan is per-pivot; run explicit chain repair to be exact.
    loop {
        let mut stable = true;
        for i in 0..steps.saturating_sub(1) {
            let a = w.s.at(i, i).clone();
            let b = w.s.at(i + 1, i + 1).clone();
            if a.is_zero() && !b.is_zero() {
                w.swap_rows(i, i + 1);
                w.swap_cols(i, i + 1);
                stable = false;
                continue;
            }
            if a.is_zero() || b.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            // diag(a, b) -> diag(gcd, lcm) by a unimodular sandwich.
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let mbg = -(&b / &g);
            let ag = &a / &g;
            w.combine_rows(i, i + 1, &x, &y, &mbg, &ag);
            let one = BigInt::from(1);
            let mtbg = -(&y * &b / &g);
            let xag = &x * &a / &g;
            w.combine_cols(i, i + 1, &one, &one, &mtbg, &xag);
            if w.s.at(i, i).is_negative() {
                w.negate_row(i);
            }
            if w.s.at(i + 1, i + 1).is_negative() {
                w.negate_row(i + 1);
            }
            stable = false;
        }
        if stable {
            break;
        }
    }

    debug_assert!(w.u.mul(a).mul(&w.v) == w.s, "U*A*V must equal S");
    SmithDecomposition {
        u: w.u,
        s: w.s,
        v: w.v,
    }
}

/// Invariant factors of A without returning the transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(a).invariant_factors()
}
