//! Quantized momentum-map generators, commutator tables, and the
//! normalizations used for the rotation/boost/translation subalgebras.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::basis::{BasisKind, GradedBasis};
use super::operator::{normalize, SparseColumn, SparseOperator};
use super::realization::Realization;
use crate::dynamics::Regime;
use crate::phasespace::{momentum_polynomial, AlgebraTable, Named, MOMENTUM_MAP_NAMES};
use crate::{Error, Result};

pub type NamedOperators = Vec<Named<SparseOperator>>;

/// Largest residual accepted when expressing a commutator in the span of
/// the generators.
pub const CLOSURE_TOLERANCE: f64 = 1e-12;

/// Structure constants read off from operator commutators, together with
/// the worst residual of the least-squares fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub table: AlgebraTable,
    pub residual: f64,
    /// Number of basis columns the commutators were evaluated on.
    pub columns: usize,
}

fn dot(a: &[(usize, Complex64)], b: &[(usize, Complex64)]) -> Complex64 {
    let (mut i, mut j) = (0, 0);
    let mut acc = Complex64::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                acc += a[i].1.conj() * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Computes `[Xᵢ, Xⱼ]` on the truncation-safe columns (total degree at most
/// `cutoff − 2`) and expresses it in `span{X₁, …, Xₙ, 1}` by least squares.
pub fn commutator_table(ops: &[Named<SparseOperator>]) -> Result<CommutatorReport> {
    let first = ops
        .first()
        .ok_or(Error::InvalidArgument("no operators given"))?;
    let basis = first.value.basis().clone();
    if ops.iter().any(|o| *o.value.basis() != basis) {
        return Err(Error::BasisMismatch("operators live on different bases"));
    }
    let cols = basis.safe_dim();
    if cols == 0 {
        return Err(Error::InvalidArgument(
            "cutoff too small for a truncation-safe sub-basis",
        ));
    }
    let n = ops.len();
    let identity = SparseOperator::identity(&basis);
    let span: Vec<&SparseOperator> = ops
        .iter()
        .map(|o| &o.value)
        .chain(core::iter::once(&identity))
        .collect();

    let gram = DMatrix::from_fn(n + 1, n + 1, |a, b| {
        (0..cols)
            .map(|c| dot(span[a].column(c), span[b].column(c)))
            .sum::<Complex64>()
    });
    let lu = gram.lu();
    if lu.determinant().norm() == 0.0 {
        return Err(Error::DependentGenerators(String::from("operator set")));
    }

    let names: Vec<String> = ops.iter().map(|o| o.name.clone()).collect();
    let mut table = AlgebraTable::zeros(names, CLOSURE_TOLERANCE);
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let comm: Vec<SparseColumn> = (0..cols)
                .map(|c| ops[i].value.commutator_column(&ops[j].value, c))
                .collect();
            let rhs = DVector::from_fn(n + 1, |a, _| {
                (0..cols)
                    .map(|c| dot(span[a].column(c), &comm[c]))
                    .sum::<Complex64>()
            });
            let x = lu
                .solve(&rhs)
                .ok_or_else(|| Error::DependentGenerators(String::from("operator set")))?;
            for (c, col) in comm.iter().enumerate() {
                let mut v = col.clone();
                for (a, op) in span.iter().enumerate() {
                    v.extend(op.column(c).iter().map(|&(r, z)| (r, -z * x[a])));
                }
                let worst = normalize(v).iter().map(|e| e.1.norm()).fold(0.0, f64::max);
                residual = residual.max(worst);
            }
            for k in 0..n {
                table.f[i][j][k] = x[k];
                table.f[j][i][k] = -x[k];
            }
            table.constants[i][j] = x[n];
            table.constants[j][i] = -x[n];
        }
    }
    Ok(CommutatorReport {
        table,
        residual,
        columns: cols,
    })
}

fn check_closure(ops: &[Named<SparseOperator>]) -> Result<()> {
    let report = commutator_table(ops)?;
    if report.residual > CLOSURE_TOLERANCE {
        return Err(Error::Inconsistent {
            what: String::from("closure of the quantized generators"),
            residual: report.residual,
        });
    }
    Ok(())
}

/// A truncated representation: a graded basis with the phase variables
/// realized on it.
#[derive(Debug, Clone)]
pub struct Representation {
    regime: Regime,
    realization: Realization,
}

impl Representation {
    pub fn new(regime: Regime, cutoff: usize) -> Self {
        let basis = Arc::new(GradedBasis::new(BasisKind::for_regime(regime), cutoff));
        Self {
            regime,
            realization: Realization::new(&basis),
        }
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.realization.basis()
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// Weyl quantization of a named momentum-map component (see
    /// [`momentum_polynomial`] for the accepted names).
    pub fn operator(&self, name: &str) -> Result<SparseOperator> {
        let f =
            momentum_polynomial(name).ok_or(Error::InvalidArgument("unknown generator name"))?;
        self.realization.quantize(&f)
    }

    pub fn operators(&self, names: &[&str]) -> Result<NamedOperators> {
        names
            .iter()
            .map(|n| Ok(Named::new(n.to_string(), self.operator(n)?)))
            .collect()
    }

    /// The sixteen quantized momentum-map components, not closure-checked.
    pub fn momentum_map(&self) -> Result<NamedOperators> {
        self.operators(&MOMENTUM_MAP_NAMES)
    }

    /// The sixteen components, after checking that their commutators close.
    pub fn generators(&self) -> Result<NamedOperators> {
        let ops = self.momentum_map()?;
        check_closure(&ops)?;
        Ok(ops)
    }

    /// Regime-specific subalgebra with the normalization
    /// `[L̂ᵢ, L̂ⱼ] = −2iεᵢⱼₖL̂ₖ`:
    /// `M̂, N̂` (unscaled) below zero energy, `L̂ = 2Ŵ(M⃗+N⃗), Q̂ = 2Ŵ(Q⃗)` above,
    /// `L̂ = 2Ŵ(M⃗+N⃗), Ŝ = 2Ŵ(R⃗′+Q⃗)` at zero energy.
    pub fn subalgebra_generators(&self) -> Result<NamedOperators> {
        let (names, scale): (&[&str], f64) = match self.regime {
            Regime::Neg => (&["M1", "M2", "M3", "N1", "N2", "N3"], 1.0),
            Regime::Pos => (&["L1", "L2", "L3", "Q1", "Q2", "Q3"], 2.0),
            Regime::Zero => (&["L1", "L2", "L3", "S1", "S2", "S3"], 2.0),
        };
        let mut ops = self.operators(names)?;
        for o in &mut ops {
            o.value = o.value.scale(Complex64::new(scale, 0.0));
        }
        Ok(ops)
    }

    /// `Î`.
    pub fn constraint(&self) -> Result<SparseOperator> {
        self.operator("I")
    }
}

/// The sixteen quantized generators on `basis`, which must be the basis
/// kind of `regime`; fails when their commutators do not close.
pub fn su22_generators(basis: &Arc<GradedBasis>, regime: Regime) -> Result<NamedOperators> {
    if basis.kind() != BasisKind::for_regime(regime) {
        return Err(Error::BasisMismatch("basis kind does not match the regime"));
    }
    let r = Realization::new(basis);
    let ops = MOMENTUM_MAP_NAMES
        .iter()
        .map(|n| {
            let f = momentum_polynomial(n).expect("momentum-map names are known");
            Ok(Named::new(n.to_string(), r.quantize(&f)?))
        })
        .collect::<Result<NamedOperators>>()?;
    check_closure(&ops)?;
    Ok(ops)
}

pub fn monomial_rep_positive(cutoff: usize) -> Representation {
    Representation::new(Regime::Pos, cutoff)
}

pub fn rep_zero(cutoff: usize) -> Representation {
    Representation::new(Regime::Zero, cutoff)
}

pub fn fock_rep(cutoff: usize) -> Representation {
    Representation::new(Regime::Neg, cutoff)
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// The expected table of [`Representation::subalgebra_generators`]:
///
/// * below zero energy: `[M̂ᵢ, M̂ⱼ] = −iεM̂ₖ`, `[N̂ᵢ, N̂ⱼ] = −iεN̂ₖ`, `[M̂, N̂] = 0`;
/// * above: `[L̂ᵢ, L̂ⱼ] = −2iεL̂ₖ`, `[L̂ᵢ, Q̂ⱼ] = −2iεQ̂ₖ`, `[Q̂ᵢ, Q̂ⱼ] = +2iεL̂ₖ`;
/// * at zero: `[L̂ᵢ, L̂ⱼ] = −2iεL̂ₖ`, `[L̂ᵢ, Ŝⱼ] = −2iεŜₖ`, `[Ŝᵢ, Ŝⱼ] = 0`.
pub fn subalgebra_table(regime: Regime) -> AlgebraTable {
    let (a, b) = match regime {
        Regime::Neg => ("M", "N"),
        Regime::Pos => ("L", "Q"),
        Regime::Zero => ("L", "S"),
    };
    let names: Vec<String> = (1..=3)
        .map(|k| format!("{a}{k}"))
        .chain((1..=3).map(|k| format!("{b}{k}")))
        .collect();
    let mut t = AlgebraTable::zeros(names, CLOSURE_TOLERANCE);
    let i = Complex64::i();
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi_civita(p, q, r);
                if e == 0.0 {
                    continue;
                }
                match regime {
                    Regime::Neg => {
                        t.f[p][q][r] = -i * e;
                        t.f[3 + p][3 + q][3 + r] = -i * e;
                    }
                    Regime::Pos | Regime::Zero => {
                        t.f[p][q][r] = -2.0 * i * e;
                        t.f[p][3 + q][3 + r] = -2.0 * i * e;
                        t.f[3 + q][p][3 + r] = 2.0 * i * e;
                        if regime == Regime::Pos {
                            t.f[3 + p][3 + q][r] = 2.0 * i * e;
                        }
                    }
                }
            }
        }
    }
    t
}
