//! Exact linear algebra over the integers: the computational substrate for
//! every other module. Normal forms, kernels, solving, cokernel structure.
//!
//! All operations are pure functions on immutable values and are safe to
//! call from many threads.

mod abelian;
mod hermite;
mod matrix;
mod smith;
mod solve;

pub use abelian::AbelianGroupInvariants;
pub use hermite::{hermite_basis, HermiteAccumulator};
pub use matrix::IntMatrix;
pub use smith::{invariant_factors, smith_normal_form, SmithDecomposition};
pub use solve::{
    cokernel_invariants, kernel_basis, rows_are_saturated, solve_integer_matrix,
    solve_integer_system, DivisibilityFailure, KernelBuilder, SolveOutcome, ZlinalgError,
};

#[cfg(test)]
mod tests;
