//! Points of the linearizing phase space and the Pauli-matrix sandwiches
//! used by every classical map.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type Spinor = [Complex64; 2];

/// A point `(η, ζ) ∈ ℂ²×ℂ²`. The zero vector is storable; operations that
/// need the punctured space check for it themselves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorPoint {
    pub eta: Spinor,
    pub zeta: Spinor,
}

/// A point `(z, w)` of `T*ℂ²`, before the collision injection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CotangentPoint {
    pub z: Spinor,
    pub w: Spinor,
}

impl SpinorPoint {
    pub fn new(eta: Spinor, zeta: Spinor) -> Self {
        Self { eta, zeta }
    }

    pub fn from_real(eta: [f64; 4], zeta: [f64; 4]) -> Self {
        Self {
            eta: [
                Complex64::new(eta[0], eta[1]),
                Complex64::new(eta[2], eta[3]),
            ],
            zeta: [
                Complex64::new(zeta[0], zeta[1]),
                Complex64::new(zeta[2], zeta[3]),
            ],
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            eta: [self.eta[0] * s, self.eta[1] * s],
            zeta: [self.zeta[0] * s, self.zeta[1] * s],
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.eta) + norm_sqr(&self.zeta)
    }
}

impl CotangentPoint {
    pub fn new(z: Spinor, w: Spinor) -> Self {
        Self { z, w }
    }
}

/// `⟨a, b⟩ = Σ āᵢ bᵢ` (conjugate-linear in the first slot).
pub fn inner(a: &Spinor, b: &Spinor) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

pub fn norm_sqr(a: &Spinor) -> f64 {
    a[0].norm_sqr() + a[1].norm_sqr()
}

/// `σₖ v` for `k ∈ {1, 2, 3}`.
pub fn pauli(k: usize, v: &Spinor) -> Spinor {
    let i = Complex64::i();
    match k {
        1 => [v[1], v[0]],
        2 => [-i * v[1], i * v[0]],
        3 => [v[0], -v[1]],
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    }
}

/// The three sandwiches `⟨a, σₖ b⟩`.
pub fn sigma_sandwich(a: &Spinor, b: &Spinor) -> [Complex64; 3] {
    [
        inner(a, &pauli(1, b)),
        inner(a, &pauli(2, b)),
        inner(a, &pauli(3, b)),
    ]
}

pub fn phase(v: &Spinor, c: Complex64) -> Spinor {
    [v[0] * c, v[1] * c]
}
