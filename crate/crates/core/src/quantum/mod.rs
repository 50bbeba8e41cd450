//! Truncated quantum representations of the linearized problem.
//!
//! Each energy regime uses its own graded basis: number states below zero
//! energy, monomials in `ν` above it, and monomials in `(A, B)` at zero
//! energy. Quadratic generators are Weyl-quantized from the exact
//! polynomials of [`crate::phasespace`], so commutators reproduce
//! `i × {·,·}` exactly on the truncation-safe part of each basis.

mod algebra;
mod basis;
mod casimir;
mod operator;
mod realization;
mod spectrum;

pub use algebra::{
    commutator_table, fock_rep, monomial_rep_positive, rep_zero, su22_generators, subalgebra_table,
    CommutatorReport, NamedOperators, Representation, CLOSURE_TOLERANCE,
};
pub use basis::{graded_dim, BasisKind, GradedBasis, MultiIndex};
pub use casimir::{casimir_check, CasimirReport, CASIMIR_TOLERANCE};
pub use operator::{SparseColumn, SparseOperator};
pub use realization::{ladder_ops, weyl_quantize, Realization};
pub use spectrum::{
    constraint_kernel, hydrogen_spectrum_neg, level_operator_positive, positive_spectrum,
    zero_energy_sphere_radius_sq, ConstraintKernel, SpectrumLine, KERNEL_TOLERANCE,
};
