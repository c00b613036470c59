//! Exact computations with integral representations of finite groups and
//! the algebraic tori they classify.
//!
//! The crate works with lattices: free Z-modules of finite rank on which a
//! finite group acts by unimodular integer matrices. On top of exact integer
//! linear algebra it provides group cohomology (H^1, H^2, Tate cohomology),
//! classification predicates (permutation, invertible, flasque, coflasque,
//! stably permutation), constructive flasque and coflasque resolutions,
//! extension classes with Baer sum, and torus-level verdicts obtained
//! through Cartier duality: retract and stable rationality, Zhe-triviality,
//! and Tate-Shafarevich-style restriction kernels.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod zlinalg;

pub use zlinalg::{AbelianGroupInvariants, IntMatrix};
