//! Resolvent compositions of strictly positive operators on dense real
//! symmetric matrices.
//!
//! The crate provides the composite `L' B L`, the parallel composition,
//! the resolvent composition and cocomposition with their mixture and
//! average forms, the Thompson metric, weighted geometric means with a
//! geometric interpolation between the parallel composition and the
//! composite, and Banach-Picard solvers for the nonlinear matrix equations
//! driven by those operations.
//!
//! Everything is pure and deterministic over immutable values; the crate is
//! `no_std` with `alloc`, and all file and command-line concerns live in
//! the companion CLI crate.

#![no_std]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cholesky;
pub mod compositions;
pub mod eigen;
pub mod error;
pub mod fixed_point;
pub mod geo_mean;
pub mod linmap;
pub mod matrix;
pub mod rand;
pub mod sym;
pub mod thompson;

pub use compositions::{
    composite, parallel_composition, resolvent_average, resolvent_cocomposition,
    resolvent_composition, resolvent_comixture, resolvent_mixture, variational_objective,
    MixtureSpec, MixtureTerm,
};
pub use eigen::{sym_eigen, Spectrum};
pub use error::{Error, Result};
pub use fixed_point::{
    solve_geo, solve_mixture_geo, solve_mixture_power, solve_power, verify_duality, SolveTrace,
    SolverConfig, StartPoint,
};
pub use geo_mean::{ah_interpolation, geometric_mean, weighted_geometric_mean};
pub use linmap::LinearMap;
pub use matrix::Matrix;
pub use rand::{random_contraction, random_isometry, random_orthogonal, random_spd, SeededRng};
pub use sym::{
    block_diag, loewner_leq, operator_norm, quadratic_form, spd_inverse, spd_power, trace_pairing,
    SpdMatrix, SymMatrix,
};
pub use thompson::{distance, gain};
