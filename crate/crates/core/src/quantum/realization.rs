//! Operator realizations of the eight phase-space variables and Weyl
//! quantization of polynomials of degree at most two.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::basis::{BasisKind, GradedBasis, MultiIndex};
use super::operator::{normalize, SparseColumn, SparseOperator};
use crate::dynamics::{free_to_cotangent, positive_to_spinor, FreeState, RepulsiveState};
use crate::ks::collision_injection;
use crate::poly::{exact_to_f64, PhasePolynomial, PhaseVar, NUM_VARS};
use crate::spinor::SpinorPoint;
use crate::{Error, Result};

fn shifted(s: MultiIndex, mode: usize, up: bool) -> Option<MultiIndex> {
    let mut t = s;
    if up {
        t[mode] += 1;
    } else {
        t[mode] = t[mode].checked_sub(1)?;
    }
    Some(t)
}

/// Multiplication by a mode (monomials) or creation (number states).
fn raise(basis: &Arc<GradedBasis>, mode: usize) -> SparseOperator {
    let fock = basis.kind() == BasisKind::Fock4;
    SparseOperator::from_columns(basis, |c| {
        let s = basis.state(c);
        let coef = if fock {
            Float::sqrt(s[mode] as f64 + 1.0)
        } else {
            1.0
        };
        shifted(s, mode, true)
            .and_then(|t| basis.index_of(&t))
            .map(|r| (r, Complex64::new(coef, 0.0)))
            .into_iter()
            .collect()
    })
}

/// Differentiation by a mode (monomials) or annihilation (number states).
fn lower(basis: &Arc<GradedBasis>, mode: usize) -> SparseOperator {
    let fock = basis.kind() == BasisKind::Fock4;
    SparseOperator::from_columns(basis, |c| {
        let s = basis.state(c);
        let n = s[mode] as f64;
        let coef = if fock { Float::sqrt(n) } else { n };
        shifted(s, mode, false)
            .and_then(|t| basis.index_of(&t))
            .map(|r| (r, Complex64::new(coef, 0.0)))
            .into_iter()
            .collect()
    })
}

fn lin(terms: &[(Complex64, &SparseOperator)], basis: &Arc<GradedBasis>) -> SparseOperator {
    let mut out = SparseOperator::zero(basis);
    for &(a, op) in terms {
        out = out
            .combine(Complex64::new(1.0, 0.0), op, a)
            .expect("operators share the basis");
    }
    out
}

/// Real coordinates `x, y` of the complex mode pair `(x + iy, x − iy)` at
/// modes `(2p, 2p+1)`, with their derivatives: `[x, y, ∂x, ∂y]`.
fn real_pair(basis: &Arc<GradedBasis>, p: usize) -> [SparseOperator; 4] {
    let (u, ub) = (2 * p, 2 * p + 1);
    let (mu, mub) = (raise(basis, u), raise(basis, ub));
    let (du, dub) = (lower(basis, u), lower(basis, ub));
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    [
        lin(&[(half, &mu), (half, &mub)], basis),
        lin(&[(-ihalf, &mu), (ihalf, &mub)], basis),
        lin(&[(one, &du), (one, &dub)], basis),
        lin(&[(i, &du), (-i, &dub)], basis),
    ]
}

/// Coefficients of the holomorphic variables `(η₁, η₂, ζ₁, ζ₂)` along each
/// of eight real chart coordinates.
fn chart_coefficients<F: Fn(usize) -> SpinorPoint>(unit: F) -> [[Complex64; 8]; 4] {
    let mut out = [[Complex64::zero(); 8]; 4];
    for k in 0..8 {
        let p = unit(k);
        for (row, v) in out
            .iter_mut()
            .zip([p.eta[0], p.eta[1], p.zeta[0], p.zeta[1]])
        {
            row[k] = v;
        }
    }
    out
}

fn from_coordinates(
    basis: &Arc<GradedBasis>,
    coords: &[SparseOperator; 8],
    coef: &[[Complex64; 8]; 4],
) -> Vec<SparseOperator> {
    let holo = [
        PhaseVar::Eta1,
        PhaseVar::Eta2,
        PhaseVar::Zeta1,
        PhaseVar::Zeta2,
    ];
    let mut vars: Vec<Option<SparseOperator>> = alloc::vec![None; NUM_VARS];
    for (h, v) in holo.iter().enumerate() {
        let plain: Vec<(Complex64, &SparseOperator)> =
            (0..8).map(|k| (coef[h][k], &coords[k])).collect();
        let conj: Vec<(Complex64, &SparseOperator)> =
            (0..8).map(|k| (coef[h][k].conj(), &coords[k])).collect();
        vars[v.index()] = Some(lin(&plain, basis));
        vars[v.conjugate().index()] = Some(lin(&conj, basis));
    }
    vars.into_iter()
        .map(|o| o.expect("all variables assigned"))
        .collect()
}

/// The eight phase variables as operators, built on a basis two degrees
/// larger than the target so that quadratic products are exact on the
/// whole target basis.
#[derive(Debug, Clone)]
pub struct Realization {
    basis: Arc<GradedBasis>,
    extended: Arc<GradedBasis>,
    vars: Vec<SparseOperator>,
}

impl Realization {
    /// * Fock: `η = a₁,₂`, `ζ = a†₃,₄`, with `η̄`, `ζ̄` the adjoints.
    /// * Monomials in `ν`: `ν̂` multiplies, `α̂ = i∂/∂ν`.
    /// * Monomials in `(A, B)`: `Â`, `B̂` multiply, `â = −(i/2)∂/∂A`,
    ///   `b̂ = (i/2)∂/∂B`.
    pub fn new(basis: &Arc<GradedBasis>) -> Self {
        let extended = Arc::new(GradedBasis::new(basis.kind(), basis.cutoff() + 2));
        let ext = &extended;
        let vars = match basis.kind() {
            BasisKind::Fock4 => {
                let mut v: Vec<Option<SparseOperator>> = alloc::vec![None; NUM_VARS];
                for j in 0..2 {
                    v[[PhaseVar::Eta1, PhaseVar::Eta2][j].index()] = Some(lower(ext, j));
                    v[[PhaseVar::EtaBar1, PhaseVar::EtaBar2][j].index()] = Some(raise(ext, j));
                    v[[PhaseVar::Zeta1, PhaseVar::Zeta2][j].index()] = Some(raise(ext, 2 + j));
                    v[[PhaseVar::ZetaBar1, PhaseVar::ZetaBar2][j].index()] =
                        Some(lower(ext, 2 + j));
                }
                v.into_iter()
                    .map(|o| o.expect("all variables assigned"))
                    .collect()
            }
            BasisKind::Monomial4 => {
                let [x0, y0, dx0, dy0] = real_pair(ext, 0);
                let [x1, y1, dx1, dy1] = real_pair(ext, 1);
                let i = Complex64::i();
                let alpha = [dx0.scale(i), dy0.scale(i), dx1.scale(i), dy1.scale(i)];
                let [a0, a1, a2, a3] = alpha;
                let coords = [a0, a1, a2, a3, x0, y0, x1, y1];
                let coef = chart_coefficients(|k| {
                    let mut s = RepulsiveState {
                        alpha: [0.0; 4],
                        nu: [0.0; 4],
                        lambda: 0.0,
                    };
                    if k < 4 {
                        s.alpha[k] = 1.0;
                    } else {
                        s.nu[k - 4] = 1.0;
                    }
                    positive_to_spinor(&s)
                });
                from_coordinates(ext, &coords, &coef)
            }
            BasisKind::PolyAB => {
                let [x0, y0, dx0, dy0] = real_pair(ext, 0);
                let [x1, y1, dx1, dy1] = real_pair(ext, 1);
                let ma = Complex64::new(0.0, -0.5);
                let pb = Complex64::new(0.0, 0.5);
                let coords = [
                    dx0.scale(ma),
                    dx1.scale(ma),
                    dy0.scale(pb),
                    dy1.scale(pb),
                    x0,
                    x1,
                    y0,
                    y1,
                ];
                let coef = chart_coefficients(|k| {
                    let mut v = [0.0; 8];
                    v[k] = 1.0;
                    let s = FreeState {
                        a: [v[0], v[1]],
                        b: [v[2], v[3]],
                        big_a: [v[4], v[5]],
                        big_b: [v[6], v[7]],
                        lambda: 0.0,
                    };
                    collision_injection(&free_to_cotangent(&s))
                });
                from_coordinates(ext, &coords, &coef)
            }
        };
        Self {
            basis: basis.clone(),
            extended,
            vars,
        }
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    /// A phase variable compressed to the target basis.
    pub fn variable(&self, v: PhaseVar) -> SparseOperator {
        self.vars[v.index()]
            .compress(&self.basis)
            .expect("extended basis contains the target")
    }

    /// `½(x̂ŷ + ŷx̂)` compressed to the target basis.
    fn symmetric_product(&self, x: PhaseVar, y: PhaseVar) -> SparseOperator {
        let (xo, yo) = (&self.vars[x.index()], &self.vars[y.index()]);
        let n = self.basis.dim();
        SparseOperator::from_columns(&self.basis, |c| {
            let ab = xo.mul_column(yo, c);
            let ba = yo.mul_column(xo, c);
            let v: SparseColumn = ab
                .into_iter()
                .chain(ba)
                .filter(|e| e.0 < n)
                .map(|(r, z)| (r, z * 0.5))
                .collect();
            normalize(v)
        })
    }

    /// Symmetric (Weyl) ordering of a polynomial of degree at most two.
    pub fn quantize(&self, f: &PhasePolynomial) -> Result<SparseOperator> {
        if f.degree().unwrap_or(0) > 2 {
            return Err(Error::Unsupported(
                "Weyl quantization is implemented for degree <= 2",
            ));
        }
        let mut out = SparseOperator::zero(&self.basis);
        let one = Complex64::new(1.0, 0.0);
        for (exps, c) in f.terms() {
            let c = exact_to_f64(c);
            let mut vars: Vec<PhaseVar> = Vec::new();
            for (k, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    vars.push(PhaseVar::from_index(k));
                }
            }
            let op = match vars.as_slice() {
                [] => SparseOperator::identity(&self.basis),
                [x] => self.variable(*x),
                [x, y] => self.symmetric_product(*x, *y),
                _ => unreachable!("degree checked above"),
            };
            out = out.combine(one, &op, c)?;
        }
        Ok(out)
    }

    pub fn extended_cutoff(&self) -> usize {
        self.extended.cutoff()
    }
}

/// Convenience wrapper building a [`Realization`] for a single polynomial.
pub fn weyl_quantize(f: &PhasePolynomial, basis: &Arc<GradedBasis>) -> Result<SparseOperator> {
    Realization::new(basis).quantize(f)
}

/// Annihilation and creation operators of the four modes of a number-state
/// basis: `a†|n⟩ = √(n+1)|n+1⟩`.
pub fn ladder_ops(basis: &Arc<GradedBasis>) -> Result<([SparseOperator; 4], [SparseOperator; 4])> {
    if basis.kind() != BasisKind::Fock4 {
        return Err(Error::BasisMismatch(
            "ladder operators need a number-state basis",
        ));
    }
    Ok((
        [0, 1, 2, 3].map(|m| lower(basis, m)),
        [0, 1, 2, 3].map(|m| raise(basis, m)),
    ))
}
