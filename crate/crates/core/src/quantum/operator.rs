//! Sparse operators on a graded basis, stored column by column.

use alloc::sync::Arc;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::basis::GradedBasis;
use crate::{Error, Result};

/// A sparse column `[(row, value)]`, sorted by row, without explicit zeros.
pub type SparseColumn = Vec<(usize, Complex64)>;

/// Sorts by row, merges duplicates and drops exact zeros.
pub(crate) fn normalize(mut v: SparseColumn) -> SparseColumn {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseColumn = Vec::with_capacity(v.len());
    for (r, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += x,
            _ => out.push((r, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    basis: Arc<GradedBasis>,
    cols: Vec<SparseColumn>,
}

impl SparseOperator {
    pub fn zero(basis: &Arc<GradedBasis>) -> Self {
        Self {
            basis: basis.clone(),
            cols: alloc::vec![Vec::new(); basis.dim()],
        }
    }

    pub fn identity(basis: &Arc<GradedBasis>) -> Self {
        Self::from_columns(basis, |c| alloc::vec![(c, Complex64::new(1.0, 0.0))])
    }

    /// Builds column `c` from `f(c)`; entries outside the basis must not be
    /// produced (use [`GradedBasis::index_of`] to drop them).
    pub fn from_columns<F>(basis: &Arc<GradedBasis>, mut f: F) -> Self
    where
        F: FnMut(usize) -> SparseColumn,
    {
        let cols = (0..basis.dim()).map(|c| normalize(f(c))).collect();
        Self {
            basis: basis.clone(),
            cols,
        }
    }

    /// Diagonal operator with entries `f(c)`.
    pub fn diagonal<F: FnMut(usize) -> Complex64>(basis: &Arc<GradedBasis>, mut f: F) -> Self {
        Self::from_columns(basis, |c| alloc::vec![(c, f(c))])
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, Complex64)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col]
            .binary_search_by_key(&row, |e| e.0)
            .map_or(Complex64::zero(), |k| self.cols[col][k].1)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || *self.basis == *other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch("operators live on different bases"))
        }
    }

    /// `self · v` for a sparse vector `v`.
    pub fn apply(&self, v: &[(usize, Complex64)]) -> SparseColumn {
        let mut acc = Vec::new();
        for &(k, x) in v {
            acc.extend(self.cols[k].iter().map(|&(r, y)| (r, y * x)));
        }
        normalize(acc)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            basis: self.basis.clone(),
            cols: self
                .cols
                .iter()
                .map(|c| normalize(c.iter().map(|&(r, x)| (r, x * s)).collect()))
                .collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.check_same(other)?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let v = x
                    .iter()
                    .map(|&(r, v)| (r, v * a))
                    .chain(y.iter().map(|&(r, v)| (r, v * b)));
                normalize(v.collect())
            })
            .collect();
        Ok(Self {
            basis: self.basis.clone(),
            cols,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        self.combine(one, other, one)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        self.combine(one, other, -one)
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        })
    }

    /// Column `c` of `self · other` without forming the whole product.
    pub fn mul_column(&self, other: &Self, c: usize) -> SparseColumn {
        self.apply(&other.cols[c])
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Column `c` of `[self, other]`.
    pub fn commutator_column(&self, other: &Self, c: usize) -> SparseColumn {
        let ab = self.mul_column(other, c);
        let ba = other.mul_column(self, c);
        normalize(
            ab.into_iter()
                .chain(ba.into_iter().map(|(r, x)| (r, -x)))
                .collect(),
        )
    }

    /// Conjugate transpose with respect to the basis (meaningful for
    /// orthonormal bases such as number states).
    pub fn adjoint(&self) -> Self {
        let mut cols: Vec<SparseColumn> = alloc::vec![Vec::new(); self.dim()];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, x) in col {
                cols[r].push((c, x.conj()));
            }
        }
        Self {
            basis: self.basis.clone(),
            cols: cols.into_iter().map(normalize).collect(),
        }
    }

    /// `max |A − A†|` entrywise.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, x) in col {
                worst = worst.max((x - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.cols
            .iter()
            .flatten()
            .map(|e| e.1.norm())
            .fold(0.0, f64::max)
    }

    /// Largest off-diagonal entry.
    pub fn off_diagonal_max(&self) -> f64 {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().filter(move |e| e.0 != c).map(|e| e.1.norm()))
            .fold(0.0, f64::max)
    }

    pub fn diagonal_entries(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|c| self.get(c, c)).collect()
    }

    /// Restriction to a smaller cutoff of the same kind: keeps the leading
    /// block, i.e. the compression `P A P`.
    pub fn compress(&self, target: &Arc<GradedBasis>) -> Result<Self> {
        if target.kind() != self.basis.kind() || target.cutoff() > self.basis.cutoff() {
            return Err(Error::BasisMismatch(
                "compression needs the same kind and a smaller cutoff",
            ));
        }
        let n = target.dim();
        Ok(Self {
            basis: target.clone(),
            cols: self.cols[..n]
                .iter()
                .map(|c| c.iter().copied().filter(|e| e.0 < n).collect())
                .collect(),
        })
    }

    /// Dense block `A[rows, cols]` for the given index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }
}
