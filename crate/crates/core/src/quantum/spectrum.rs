//! Constraint kernels and the discrete spectra read off from them.

use alloc::sync::Arc;
use alloc::vec::Vec;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::algebra::Representation;
use super::basis::GradedBasis;
use super::operator::SparseOperator;
use crate::dynamics::Regime;
use crate::{Error, Result};

/// Eigenvalues of `Î` closer to zero than this count as kernel states.
pub const KERNEL_TOLERANCE: f64 = 1e-12;

/// The span of the basis states annihilated by a diagonal constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintKernel {
    basis: Arc<GradedBasis>,
    indices: Vec<usize>,
}

impl ConstraintKernel {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Kernel states with total degree at most `cutoff − 2`.
    pub fn safe_indices(&self) -> Vec<usize> {
        let n = self.basis.safe_dim();
        self.indices.iter().copied().filter(|&i| i < n).collect()
    }

    /// Frobenius norm of `op` on the truncation-safe kernel columns (all rows).
    pub fn residual(&self, op: &SparseOperator) -> f64 {
        let s: f64 = self
            .safe_indices()
            .iter()
            .flat_map(|&c| op.column(c).iter().map(|e| e.1.norm_sqr()))
            .sum();
        Float::sqrt(s)
    }
}

/// Basis states with `Î`-eigenvalue zero. `Î` must be diagonal in the basis,
/// which holds for all three basis kinds.
pub fn constraint_kernel(i_hat: &SparseOperator) -> Result<ConstraintKernel> {
    if i_hat.off_diagonal_max() > KERNEL_TOLERANCE {
        return Err(Error::Unsupported(
            "constraint operator is not diagonal in this basis",
        ));
    }
    let indices = i_hat
        .diagonal_entries()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.norm() <= KERNEL_TOLERANCE)
        .map(|(i, _)| i)
        .collect();
    Ok(ConstraintKernel {
        basis: i_hat.basis().clone(),
        indices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    /// Principal quantum number `n` (negative energy) or level `τ` (positive).
    pub n: u32,
    pub energy: f64,
    pub degeneracy: usize,
    /// All states of the level fit below the cutoff.
    pub truncation_complete: bool,
}

/// Groups sorted eigenvalues into integer-labeled levels.
fn integer_levels(mut values: Vec<f64>) -> Result<Vec<(u32, usize)>> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<(u32, usize)> = Vec::new();
    for v in values {
        let n = Float::round(v);
        if (v - n).abs() > 1e-9 || n < 1.0 {
            return Err(Error::Inconsistent {
                what: alloc::string::String::from("level label is not a positive integer"),
                residual: (v - n).abs(),
            });
        }
        let n = n as u32;
        match out.last_mut() {
            Some(last) if last.0 == n => last.1 += 1,
            _ => out.push((n, 1)),
        }
    }
    Ok(out)
}

/// Hydrogen levels from `Ĥ = −mγ²/(2Ĵ²)` on the `Î`-kernel of the Fock
/// representation: `Ĵ` is diagonalized there and grouped by eigenvalue.
pub fn hydrogen_spectrum_neg(cutoff: usize, m: f64, gamma: f64) -> Result<Vec<SpectrumLine>> {
    if cutoff < 2 {
        return Err(Error::InvalidArgument("cutoff must be at least 2"));
    }
    let rep = Representation::new(Regime::Neg, cutoff);
    let kernel = constraint_kernel(&rep.constraint()?)?;
    let j = rep.operator("J")?;
    let block = j.block(kernel.indices(), kernel.indices());
    let herm = (&block - block.adjoint()).camax();
    if herm > 1e-12 {
        return Err(Error::Inconsistent {
            what: alloc::string::String::from("hermiticity of J on the kernel"),
            residual: herm,
        });
    }
    let eig = SymmetricEigen::new(block).eigenvalues;
    let levels = integer_levels(eig.iter().copied().collect())?;
    Ok(levels
        .into_iter()
        .map(|(n, deg)| {
            let nf = n as f64;
            SpectrumLine {
                n,
                energy: -m * gamma * gamma / (2.0 * nf * nf),
                degeneracy: deg,
                truncation_complete: 2 * (n as usize - 1) <= cutoff,
            }
        })
        .collect())
}

/// Formal positive-energy levels: on the `Î`-kernel of the `ν`-monomial
/// representation, `T = −2iP̂₀` is diagonal with eigenvalue `τ = d + 2` on
/// degree-`d` monomials, and `E_τ = mγ²/(2τ²)`.
pub fn positive_spectrum(cutoff: usize, m: f64, gamma: f64) -> Result<Vec<SpectrumLine>> {
    if cutoff < 2 {
        return Err(Error::InvalidArgument("cutoff must be at least 2"));
    }
    let rep = Representation::new(Regime::Pos, cutoff);
    let kernel = constraint_kernel(&rep.constraint()?)?;
    let t = level_operator_positive(&rep)?;
    let block = t.block(kernel.indices(), kernel.indices());
    let mut off: f64 = 0.0;
    let mut values = Vec::with_capacity(kernel.dim());
    for r in 0..block.nrows() {
        for c in 0..block.ncols() {
            if r == c {
                off = off.max(block[(r, c)].im.abs());
                values.push(block[(r, c)].re);
            } else {
                off = off.max(block[(r, c)].norm());
            }
        }
    }
    if off > 1e-12 {
        return Err(Error::Inconsistent {
            what: alloc::string::String::from("level operator is not real diagonal"),
            residual: off,
        });
    }
    let levels = integer_levels(values)?;
    Ok(levels
        .into_iter()
        .map(|(tau, deg)| {
            let tf = tau as f64;
            SpectrumLine {
                n: tau,
                energy: m * gamma * gamma / (2.0 * tf * tf),
                degeneracy: deg,
                truncation_complete: (tau as usize) <= cutoff + 2,
            }
        })
        .collect())
}

/// `T = −2iP̂₀` on a positive-energy representation.
pub fn level_operator_positive(rep: &Representation) -> Result<SparseOperator> {
    if rep.regime() != Regime::Pos {
        return Err(Error::BasisMismatch(
            "level operator needs the positive-energy representation",
        ));
    }
    Ok(rep.operator("P0")?.scale(Complex64::new(0.0, -2.0)))
}

/// At zero energy the constraint fixes `Σ(Aᵢ² + Bᵢ²) = 2γ√m/k`.
pub fn zero_energy_sphere_radius_sq(m: f64, gamma: f64, k: f64) -> Result<f64> {
    if !(m > 0.0 && gamma > 0.0 && k > 0.0) {
        return Err(Error::InvalidArgument("m, gamma and k must be positive"));
    }
    Ok(2.0 * gamma * Float::sqrt(m) / k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fock_kernel() {
        let rep = Representation::new(Regime::Neg, 2);
        let k = constraint_kernel(&rep.constraint().unwrap()).unwrap();
        let states: Vec<_> = k.indices().iter().map(|&i| rep.basis().state(i)).collect();
        assert_eq!(states.len(), 5);
        for s in [
            [0, 0, 0, 0],
            [1, 0, 1, 0],
            [1, 0, 0, 1],
            [0, 1, 1, 0],
            [0, 1, 0, 1],
        ] {
            assert!(states.contains(&s));
        }
        assert!(k.contains(0));
    }

    #[test]
    fn hydrogen_levels() {
        let lines = hydrogen_spectrum_neg(6, 1.0, 1.0).unwrap();
        let got: Vec<_> = lines
            .iter()
            .map(|l| (l.n, l.degeneracy, l.truncation_complete))
            .collect();
        assert_eq!(
            got,
            [(1, 1, true), (2, 4, true), (3, 9, true), (4, 16, true)]
        );
        assert!((lines[2].energy + 1.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn positive_levels() {
        let lines = positive_spectrum(4, 1.0, 1.0).unwrap();
        assert_eq!(lines[0].n, 2);
        assert!((lines[0].energy - 0.125).abs() < 1e-15);
        let deg: Vec<_> = lines.iter().map(|l| (l.n, l.degeneracy)).collect();
        assert_eq!(deg, [(2, 1), (4, 4), (6, 9)]);
    }

    #[test]
    fn sphere_radius() {
        assert_eq!(zero_energy_sphere_radius_sq(1.0, 1.0, 1.0).unwrap(), 2.0);
        assert!(zero_energy_sphere_radius_sq(1.0, -1.0, 1.0).is_err());
    }
}
