//! Harmonic analysis on simplicial spherical manifolds.
//!
//! The simplicial manifold on `S^{n-1}` is the quotient by the cyclic deck group
//! `C_{n+1}`, generated by the Coxeter element of `S(n+1)`. This crate computes the
//! reductions `O(n) > S(n+1) > C_{n+1}` for `n = 2, 3, 4` by character theory and
//! constructs explicit `C_{n+1}`-periodic eigenmode bases.
//!
//! Module map:
//! - [`permgroup`]: partitions, permutations, characters of `S(n)`, branching to `C_n`.
//! - [`youngrep`]: Young orthogonal representation matrices and fixed vectors.
//! - [`su2wigner`]: `SU(2)` as `S³`, Wigner `D^j` matrices and characters.
//! - [`weylaction`]: the `O(4)` action in factored `(g_l, g_r | T_{a₀})` form.
//! - [`reduction`]: multiplicity tables for the three chains.
//! - [`modes`]: periodic eigenmode bases, Young operators, invariance checks.

pub mod error;
pub mod linalg;
pub mod modes;
pub mod permgroup;
pub mod reduction;
pub mod su2wigner;
pub mod weylaction;
pub mod youngrep;

pub use error::{Error, Result};
pub use permgroup::{CharacterTable, CycleType, Partition, Permutation};
pub use su2wigner::{Point4, SU2Element};
pub use weylaction::GroupOperator;
