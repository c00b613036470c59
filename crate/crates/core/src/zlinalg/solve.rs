//! Integer kernels, linear-system solving, and cokernel structure.
//!
//! Large systems are first row-reduced (a kernel- and solution-preserving
//! step), so the expensive normal forms only ever run on matrices no wider
//! than the unknown count. Kernels come out saturated because they are read
//! off trailing columns of a unimodular transform.

use super::abelian::AbelianGroupInvariants;
use super::hermite::{hermite_basis, HermiteAccumulator};
use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum ZlinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Witness for an unsolvable integer system: after reduction to diagonal
/// form, the right-hand side entry `value` is not divisible by the
/// invariant factor `divisor` (`divisor == 0` encodes an inconsistent row).
#[derive(Clone, Debug)]
pub struct DivisibilityFailure {
    pub pivot_index: usize,
    pub divisor: BigInt,
    pub value: BigInt,
}

impl std::fmt::Display for DivisibilityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.divisor.is_zero() {
            write!(f, "inconsistent row: 0 = {}", self.value)
        } else {
            write!(
                f,
                "invariant factor {} does not divide {} (pivot {})",
                self.divisor, self.value, self.pivot_index
            )
        }
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solution(Vec<BigInt>),
    NoSolution(DivisibilityFailure),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&[BigInt]> {
        match self {
            SolveOutcome::Solution(x) => Some(x),
            SolveOutcome::NoSolution(_) => None,
        }
    }
}

/// Saturated basis of {x : A x = 0}.
///
/// The vectors are trailing columns of a unimodular matrix, hence primitive
/// and saturated; the basis is deterministic for a given input.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut builder = KernelBuilder::new(a.cols());
    for i in 0..a.rows() {
        builder.add_row(a.row_vec(i));
    }
    builder.kernel()
}

/// Streaming variant of `kernel_basis` for systems whose rows are generated
/// on the fly (cocycle conditions); rows are Hermite-reduced as they arrive.
pub struct KernelBuilder {
    cols: usize,
    acc: HermiteAccumulator,
}

impl KernelBuilder {
    pub fn new(cols: usize) -> Self {
        KernelBuilder {
            cols,
            acc: HermiteAccumulator::new(cols),
        }
    }

    pub fn add_row(&mut self, row: Vec<BigInt>) {
        self.acc.insert(row);
    }

    pub fn kernel(self) -> Vec<Vec<BigInt>> {
        let n = self.cols;
        let reduced = self.acc.into_reduced_rows();
        kernel_of_reduced(&reduced, n)
    }
}

/// Kernel of a matrix already in row Hermite form (independent rows).
fn kernel_of_reduced(h: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let r = h.len();
    if r == 0 {
        return (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(1);
                e
            })
            .collect();
    }
    // Column elimination with a tracked unimodular V: once every processed
    // row is zero on the trailing columns, those columns of V span the kernel.
    let mut m: Vec<Vec<BigInt>> = h.to_vec();
    let mut v = IntMatrix::identity(n);
    let mut c = 0usize;
    for i in 0..r {
        loop {
            let pivot = (c..n)
                .filter(|&j| !m[i][j].is_zero())
                .min_by_key(|&j| (m[i][j].abs(), j));
            let Some(j) = pivot else {
                unreachable!("independent rows must keep a pivot in range");
            };
            if j != c {
                for row in m.iter_mut() {
                    row.swap(c, j);
                }
                for row_idx in 0..n {
                    let tmp = v.at(row_idx, c).clone();
                    v.set(row_idx, c, v.at(row_idx, j).clone());
                    v.set(row_idx, j, tmp);
                }
            }
            let p = m[i][c].clone();
            let mut leftover = false;
            for k in c + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, rem) = m[i][k].div_mod_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let sub = &q * &row[c];
                        row[k] -= sub;
                    }
                    for row_idx in 0..n {
                        let sub = &q * v.at(row_idx, c);
                        let new = v.at(row_idx, k) - sub;
                        v.set(row_idx, k, new);
                    }
                }
                if !rem.is_zero() {
                    leftover = true;
                }
            }
            if !leftover {
                break;
            }
        }
        c += 1;
    }
    (c..n).map(|j| v.col_vec(j)).collect()
}

/// One integer solution of A x = b, or a certified refutation.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Result<SolveOutcome, ZlinalgError> {
    if b.len() != a.rows() {
        return Err(ZlinalgError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let rhs = IntMatrix::from_columns(b.len(), &[b.to_vec()]);
    match solve_many(a, &rhs) {
        Ok(x) => Ok(SolveOutcome::Solution(x.col_vec(0))),
        Err(fail) => Ok(SolveOutcome::NoSolution(fail)),
    }
}

/// Batched exact solve A X = RHS (columnwise); fails with the first
/// divisibility certificate encountered.
pub fn solve_integer_matrix(
    a: &IntMatrix,
    rhs: &IntMatrix,
) -> Result<Result<IntMatrix, DivisibilityFailure>, ZlinalgError> {
    if rhs.rows() != a.rows() {
        return Err(ZlinalgError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {}",
            a.rows(),
            rhs.rows()
        )));
    }
    Ok(solve_many(a, rhs))
}

fn solve_many(a: &IntMatrix, rhs: &IntMatrix) -> Result<IntMatrix, DivisibilityFailure> {
    let n = a.cols();
    let k = rhs.cols();
    // Row-reduce the augmented system; defect rows witness inconsistency.
    let mut acc = HermiteAccumulator::with_tail(n, k);
    for i in 0..a.rows() {
        let mut row = a.row_vec(i);
        row.extend(rhs.row(i).iter().cloned());
        acc.insert(row);
    }
    let (reduced, defects) = acc.into_reduced_rows_and_defects();
    if let Some(bad) = defects.first() {
        let value = bad[n..].iter().find(|e| !e.is_zero()).cloned().unwrap();
        return Err(DivisibilityFailure {
            pivot_index: reduced.len(),
            divisor: BigInt::zero(),
            value,
        });
    }
    let r = reduced.len();
    let sys = IntMatrix::from_fn(r, n, |i, j| reduced[i][j].clone());
    let tail = IntMatrix::from_fn(r, k, |i, j| reduced[i][n + j].clone());
    let dec = smith_normal_form(&sys);
    let c = dec.u.mul(&tail);
    let mut y = IntMatrix::zero(n, k);
    for col in 0..k {
        for i in 0..r {
            let d = dec.s.at(i, i);
            let rhs_entry = c.at(i, col);
            if d.is_zero() {
                if !rhs_entry.is_zero() {
                    return Err(DivisibilityFailure {
                        pivot_index: i,
                        divisor: BigInt::zero(),
                        value: rhs_entry.clone(),
                    });
                }
                continue;
            }
            let (q, rem) = rhs_entry.div_mod_floor(d);
            if !rem.is_zero() {
                return Err(DivisibilityFailure {
                    pivot_index: i,
                    divisor: d.clone(),
                    value: rhs_entry.clone(),
                });
            }
            y.set(i, col, q);
        }
    }
    Ok(dec.v.mul(&y))
}

/// Invariant-factor presentation of Z^rows / column-span(A).
pub fn cokernel_invariants(a: &IntMatrix) -> AbelianGroupInvariants {
    let col_space = hermite_basis(&a.transpose().row_vecs());
    let rank = col_space.len();
    let torsion: Vec<BigInt> = if rank == 0 {
        Vec::new()
    } else {
        let basis = IntMatrix::from_rows(&col_space);
        smith_normal_form(&basis)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    };
    AbelianGroupInvariants::new(torsion, a.rows() - rank)
}

/// True when the row lattice of `rows` is saturated in its ambient space
/// (all invariant factors 1).
pub fn rows_are_saturated(rows: &[Vec<BigInt>]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let m = IntMatrix::from_rows(rows);
    smith_normal_form(&m).invariant_factors().iter().all(One::is_one)
}
