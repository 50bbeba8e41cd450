//! The quadratic Casimir built from the Killing form of a commutator table.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::operator::{normalize, SparseColumn, SparseOperator};
use crate::phasespace::{AlgebraTable, Named};
use crate::{Error, Result};

/// Deviation from a multiple of the identity below which the Casimir is
/// reported as scalar.
pub const CASIMIR_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasimirReport {
    /// Mean diagonal value on the tested columns.
    pub value: Complex64,
    /// `max |Ĉ e_c − value·e_c|` over the tested columns.
    pub residual: f64,
    pub is_scalar: bool,
    pub columns: usize,
    /// Generators dropped from the Killing form because they are central.
    pub central: Vec<String>,
}

/// Evaluates `Ĉ = Σ g^{ab} X̂ₐX̂_b` on the given basis columns, with `g` the
/// Killing form of `table` restricted to its non-central generators.
///
/// The columns should be truncation-safe (total degree at most
/// `cutoff − 2`) so that every retained entry of `Ĉ e_c` is exact.
pub fn casimir_check(
    ops: &[Named<SparseOperator>],
    table: &AlgebraTable,
    columns: &[usize],
) -> Result<CasimirReport> {
    let n = table.dim();
    if ops.len() != n || ops.iter().zip(&table.generators).any(|(o, g)| o.name != *g) {
        return Err(Error::InvalidArgument(
            "operators and table name different generators",
        ));
    }
    if columns.is_empty() {
        return Err(Error::InvalidArgument("no columns to test"));
    }
    let central: Vec<usize> = (0..n)
        .filter(|&a| table.f[a].iter().flatten().all(|c| c.norm() < 1e-12))
        .collect();
    let active: Vec<usize> = (0..n).filter(|a| !central.contains(a)).collect();
    let killing = DMatrix::from_fn(active.len(), active.len(), |p, q| {
        let (a, b) = (active[p], active[q]);
        let mut s = Complex64::zero();
        for c in 0..n {
            for d in 0..n {
                s += table.f[a][c][d] * table.f[b][d][c];
            }
        }
        s
    });
    let inv = killing.try_inverse().ok_or_else(|| Error::Inconsistent {
        what: String::from("Killing form is degenerate"),
        residual: 0.0,
    })?;

    let mut sum = Complex64::zero();
    let mut cols: Vec<SparseColumn> = Vec::with_capacity(columns.len());
    for &c in columns {
        let xb: Vec<SparseColumn> = active
            .iter()
            .map(|&b| ops[b].value.column(c).to_vec())
            .collect();
        let mut acc: SparseColumn = Vec::new();
        for (p, &a) in active.iter().enumerate() {
            let mut u: SparseColumn = Vec::new();
            for (q, w) in xb.iter().enumerate() {
                let g = inv[(p, q)];
                if g.norm() > 1e-15 {
                    u.extend(w.iter().map(|&(r, z)| (r, z * g)));
                }
            }
            let u = normalize(u);
            acc.extend(ops[a].value.apply(&u));
        }
        let col = normalize(acc);
        sum += col
            .iter()
            .find(|e| e.0 == c)
            .map_or(Complex64::zero(), |e| e.1);
        cols.push(col);
    }
    let value = sum / columns.len() as f64;
    let mut residual: f64 = 0.0;
    for (&c, col) in columns.iter().zip(&cols) {
        let mut v = col.clone();
        v.push((c, -value));
        residual = normalize(v)
            .iter()
            .map(|e| e.1.norm())
            .fold(residual, f64::max);
    }
    Ok(CasimirReport {
        value,
        residual,
        is_scalar: residual < CASIMIR_TOLERANCE,
        columns: columns.len(),
        central: central
            .iter()
            .map(|&a| table.generators[a].clone())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Regime;
    use crate::quantum::{commutator_table, constraint_kernel, Representation};

    #[test]
    fn su2_casimir_is_spin_squared() {
        // The Casimir of a single su(2) block is j(j+1) only per spin sector.
        let rep = Representation::new(Regime::Neg, 4);
        let ops = rep.operators(&["M1", "M2", "M3"]).unwrap();
        let table = commutator_table(&ops).unwrap().table;
        let vacuum = casimir_check(&ops, &table, &[0]).unwrap();
        assert!(vacuum.is_scalar);
        assert!(vacuum.value.norm() < 1e-14);
        let all: Vec<usize> = (0..rep.basis().safe_dim()).collect();
        assert!(!casimir_check(&ops, &table, &all).unwrap().is_scalar);
    }

    #[test]
    fn full_casimir_on_kernel() {
        let rep = Representation::new(Regime::Neg, 4);
        let ops = rep.momentum_map().unwrap();
        let table = commutator_table(&ops).unwrap().table;
        let kernel = constraint_kernel(&rep.constraint().unwrap()).unwrap();
        let report = casimir_check(&ops, &table, &kernel.safe_indices()).unwrap();
        assert!(report.is_scalar, "{report:?}");
        assert_eq!(report.central, ["I"]);
    }
}
