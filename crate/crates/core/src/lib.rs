//! Numerical toolkit for the Kepler problem regularized in Kustaanheimo–Stiefel variables.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized bottom-up:
//!
//! * [`poly`] and [`phasespace`]: exact polynomials over the spinor phase
//!   space `(η, ζ) ∈ ℂ²×ℂ²` and the Poisson bracket induced by the invariant
//!   1-form `Im(⟨η,dη⟩ − ⟨ζ,dζ⟩)`. These serve as the classical oracle for
//!   every algebraic identity checked elsewhere.
//! * [`ks`]: the Hopf and KS maps, the `u(2,2)` momentum map and the
//!   dictionary between linearized and physical Kepler variables.
//! * [`dynamics`]: closed-form harmonic, repulsive and free flows, their
//!   group laws, physical-time recovery and a direct RK4 baseline.
//! * [`quantum`]: truncated Fock / monomial representations, Weyl
//!   quantization of quadratic generators, constraint kernels, spectra,
//!   commutator tables and Casimir checks.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![warn(rust_2018_idioms, missing_debug_implementations)]

extern crate alloc;

pub mod dynamics;
mod error;
pub mod ks;
pub mod phasespace;
pub mod poly;
pub mod quantum;
pub mod spinor;
pub mod vec3;

pub use error::{Error, Result};

pub use num_complex::Complex64;
