//! Bases of polynomials (or number states) in four modes, graded by total
//! degree and cut off at a maximal degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dynamics::Regime;

/// Exponents (or occupation numbers) of the four modes.
pub type MultiIndex = [u16; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// Number states of four oscillators.
    Fock4,
    /// Monomials in `(ν₁ + iν₂, ν₁ − iν₂, ν₃ + iν₄, ν₃ − iν₄)`.
    Monomial4,
    /// Monomials in `(A₀ + iB₀, A₀ − iB₀, A₁ + iB₁, A₁ − iB₁)`.
    #[serde(rename = "polyab")]
    PolyAB,
}

impl BasisKind {
    pub fn for_regime(regime: Regime) -> Self {
        match regime {
            Regime::Neg => BasisKind::Fock4,
            Regime::Pos => BasisKind::Monomial4,
            Regime::Zero => BasisKind::PolyAB,
        }
    }

    pub fn regime(self) -> Regime {
        match self {
            BasisKind::Fock4 => Regime::Neg,
            BasisKind::Monomial4 => Regime::Pos,
            BasisKind::PolyAB => Regime::Zero,
        }
    }
}

/// States ordered by total degree, then lexicographically (descending in
/// the first mode). A basis with a smaller cutoff is therefore a prefix of
/// one with a larger cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    kind: BasisKind,
    cutoff: usize,
    states: Vec<MultiIndex>,
    index: BTreeMap<MultiIndex, usize>,
    degree_start: Vec<usize>,
}

impl GradedBasis {
    pub fn new(kind: BasisKind, cutoff: usize) -> Self {
        let mut states = Vec::new();
        let mut degree_start = Vec::with_capacity(cutoff + 2);
        for d in 0..=cutoff {
            degree_start.push(states.len());
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    for c in (0..=d - a - b).rev() {
                        let e = d - a - b - c;
                        states.push([a as u16, b as u16, c as u16, e as u16]);
                    }
                }
            }
        }
        degree_start.push(states.len());
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self {
            kind,
            cutoff,
            states,
            index,
            degree_start,
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> MultiIndex {
        self.states[i]
    }

    pub fn states(&self) -> &[MultiIndex] {
        &self.states
    }

    pub fn index_of(&self, s: &MultiIndex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.states[i].iter().map(|&n| n as usize).sum()
    }

    /// Number of states with total degree at most `d` (capped at the cutoff).
    pub fn dim_up_to(&self, d: usize) -> usize {
        self.degree_start[d.min(self.cutoff) + 1]
    }

    /// States on which an operator raising the degree by at most two acts
    /// without reaching past the cutoff.
    pub fn safe_dim(&self) -> usize {
        match self.cutoff.checked_sub(2) {
            Some(d) => self.dim_up_to(d),
            None => 0,
        }
    }
}

/// `C(n + 4, 4)`, the number of states of total degree at most `n`.
pub fn graded_dim(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) * (n + 4) / 24
}
