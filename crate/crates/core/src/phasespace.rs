//! Poisson brackets on the linearizing phase space and exact closure tables.
//!
//! The bracket comes from the 1-form `Im(⟨η,dη⟩ − ⟨ζ,dζ⟩)`. Its normalization
//! is fixed as `{ηᵢ, η̄ⱼ} = −i δᵢⱼ` and `{ζᵢ, ζ̄ⱼ} = +i δᵢⱼ`; the quantum side
//! is certified against this choice (see `quantum::table`).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::poly::{
    exact, exact_int, exact_to_f64, rational, ExactComplex, Exponents, PhasePolynomial, PhaseVar,
};
use crate::spinor::SpinorPoint;
use crate::{Error, Result};

/// A value tagged with a generator name.
#[derive(Debug, Clone, PartialEq)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

impl<T> Named<T> {
    pub fn new(name: impl Into<String>, value: T) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> i128 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One complex coordinate `z` with `{z, z̄} = −i s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugatePair {
    pub holomorphic: PhaseVar,
    pub sign: Sign,
}

impl ConjugatePair {
    pub fn conjugate(&self) -> PhaseVar {
        self.holomorphic.conjugate()
    }

    /// `{z, z̄}` as an exact complex number.
    pub fn bracket(&self) -> ExactComplex {
        exact_int(0, -self.sign.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSignature {
    pairs: Vec<ConjugatePair>,
}

impl SymplecticSignature {
    /// Validates that every coordinate appears at most once, that only
    /// holomorphic variables name a pair, and that η-pairs and ζ-pairs carry
    /// opposite signs.
    pub fn new(pairs: Vec<ConjugatePair>) -> Result<Self> {
        let mut seen = [false; 4];
        let mut eta_sign = None;
        let mut zeta_sign = None;
        for p in &pairs {
            if !p.holomorphic.is_holomorphic() {
                return Err(Error::MalformedSignature(
                    "pairs must be keyed by a holomorphic coordinate",
                ));
            }
            let i = p.holomorphic.index();
            if seen[i] {
                return Err(Error::MalformedSignature("coordinate listed twice"));
            }
            seen[i] = true;
            let slot = if i < 2 { &mut eta_sign } else { &mut zeta_sign };
            match slot {
                Some(s) if *s != p.sign => {
                    return Err(Error::MalformedSignature(
                        "pairs of the same spinor must share a sign",
                    ))
                }
                _ => *slot = Some(p.sign),
            }
        }
        if let (Some(a), Some(b)) = (eta_sign, zeta_sign) {
            if a == b {
                return Err(Error::MalformedSignature(
                    "eta and zeta pairs must carry opposite signs",
                ));
            }
        }
        Ok(Self { pairs })
    }

    /// The signature of `Im(⟨η,dη⟩ − ⟨ζ,dζ⟩)`.
    pub fn linearizing() -> Self {
        let pair = |v, sign| ConjugatePair {
            holomorphic: v,
            sign,
        };
        Self {
            pairs: vec![
                pair(PhaseVar::Eta1, Sign::Plus),
                pair(PhaseVar::Eta2, Sign::Plus),
                pair(PhaseVar::Zeta1, Sign::Minus),
                pair(PhaseVar::Zeta2, Sign::Minus),
            ],
        }
    }

    pub fn pairs(&self) -> &[ConjugatePair] {
        &self.pairs
    }

    pub fn covers(&self, v: PhaseVar) -> bool {
        self.pairs
            .iter()
            .any(|p| p.holomorphic == v || p.conjugate() == v)
    }

    fn check_covered(&self, f: &PhasePolynomial) -> Result<()> {
        for v in PhaseVar::ALL {
            if f.depends_on(v) && !self.covers(v) {
                return Err(Error::MismatchedVariables(v.name()));
            }
        }
        Ok(())
    }
}

/// `{f, g} = Σ {z, z̄} (∂_z f ∂_z̄ g − ∂_z̄ f ∂_z g)`, computed exactly.
pub fn poisson_bracket(
    f: &PhasePolynomial,
    g: &PhasePolynomial,
    sig: &SymplecticSignature,
) -> Result<PhasePolynomial> {
    sig.check_covered(f)?;
    sig.check_covered(g)?;
    let mut out = PhasePolynomial::zero();
    for pair in sig.pairs() {
        let z = pair.holomorphic;
        let zb = pair.conjugate();
        let term =
            &(&f.derivative(z) * &g.derivative(zb)) - &(&f.derivative(zb) * &g.derivative(z));
        out = &out + &term.scale(&pair.bracket());
    }
    Ok(out)
}

/// Structure constants `[Xᵢ, Xⱼ] = Σₖ f[i][j][k] Xₖ + constants[i][j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraTable {
    pub generators: Vec<String>,
    pub f: Vec<Vec<Vec<Complex64>>>,
    #[serde(default)]
    pub constants: Vec<Vec<Complex64>>,
    #[serde(default)]
    pub tolerance: f64,
}

impl AlgebraTable {
    pub fn zeros(generators: Vec<String>, tolerance: f64) -> Self {
        let n = generators.len();
        Self {
            generators,
            f: vec![vec![vec![Complex64::zero(); n]; n]; n],
            constants: vec![vec![Complex64::zero(); n]; n],
            tolerance,
        }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Coefficient of generator `k` in `[i, j]`, looked up by name.
    pub fn coefficient(&self, i: &str, j: &str, k: &str) -> Option<Complex64> {
        Some(self.f[self.index_of(i)?][self.index_of(j)?][self.index_of(k)?])
    }

    pub fn max_abs(&self) -> f64 {
        let s = self.f.iter().flatten().flatten().map(|c| c.norm());
        let c = self.constants.iter().flatten().map(|c| c.norm());
        s.chain(c).fold(0.0, f64::max)
    }

    /// `max |f[i][j][k] + f[j][i][k]|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.f[i][j][k] + self.f[j][i][k]).norm());
                }
                if !self.constants.is_empty() {
                    worst = worst.max((self.constants[i][j] + self.constants[j][i]).norm());
                }
            }
        }
        worst
    }

    /// Largest violation of the Jacobi identity for the structure constants
    /// and of the cocycle condition for the central constants.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let has_c = !self.constants.is_empty();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = Complex64::zero();
                        for l in 0..n {
                            s += self.f[i][j][l] * self.f[l][k][m]
                                + self.f[j][k][l] * self.f[l][i][m]
                                + self.f[k][i][l] * self.f[l][j][m];
                        }
                        worst = worst.max(s.norm());
                    }
                    if has_c {
                        let mut s = Complex64::zero();
                        for l in 0..n {
                            s += self.f[i][j][l] * self.constants[l][k]
                                + self.f[j][k][l] * self.constants[l][i]
                                + self.f[k][i][l] * self.constants[l][j];
                        }
                        worst = worst.max(s.norm());
                    }
                }
            }
        }
        worst
    }

    /// Entrywise `max |self − factor·other|`, with generators matched by name.
    pub fn max_deviation(&self, other: &AlgebraTable, factor: Complex64) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidArgument("tables have different sizes"));
        }
        let map: Vec<usize> = self
            .generators
            .iter()
            .map(|g| other.index_of(g))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::InvalidArgument("tables name different generators"))?;
        let n = self.dim();
        let constant = |t: &AlgebraTable, i: usize, j: usize| {
            t.constants
                .get(i)
                .and_then(|r| r.get(j))
                .copied()
                .unwrap_or_else(Complex64::zero)
        };
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = self.f[i][j][k] - factor * other.f[map[i]][map[j]][map[k]];
                    worst = worst.max(d.norm());
                }
                let d = constant(self, i, j) - factor * constant(other, map[i], map[j]);
                worst = worst.max(d.norm());
            }
        }
        Ok(worst)
    }
}

/// Exact counterpart of [`AlgebraTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactAlgebraTable {
    pub generators: Vec<String>,
    pub f: Vec<Vec<Vec<ExactComplex>>>,
    pub constants: Vec<Vec<ExactComplex>>,
}

impl ExactAlgebraTable {
    pub fn to_numeric(&self) -> AlgebraTable {
        AlgebraTable {
            generators: self.generators.clone(),
            f: self
                .f
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| c.iter().map(exact_to_f64).collect())
                        .collect()
                })
                .collect(),
            constants: self
                .constants
                .iter()
                .map(|r| r.iter().map(exact_to_f64).collect())
                .collect(),
            tolerance: 0.0,
        }
    }
}

/// Reduced row echelon form of a set of polynomials, tracking how each row
/// is combined from the inputs.
struct SpanReducer {
    rows: Vec<(Exponents, PhasePolynomial, Vec<ExactComplex>)>,
    width: usize,
}

impl SpanReducer {
    fn new(width: usize) -> Self {
        Self {
            rows: Vec::new(),
            width,
        }
    }

    fn reduce(&self, p: &PhasePolynomial) -> (PhasePolynomial, Vec<ExactComplex>) {
        let mut rest = p.clone();
        let mut combo = vec![ExactComplex::zero(); self.width];
        for (pivot, row, row_combo) in &self.rows {
            let c = rest.coefficient(pivot);
            if c.is_zero() {
                continue;
            }
            rest = &rest - &row.scale(&c);
            for (acc, r) in combo.iter_mut().zip(row_combo) {
                *acc += c * *r;
            }
        }
        (rest, combo)
    }

    /// Inserts `p` as input column `column`; returns false if `p` already
    /// lies in the span.
    fn insert(&mut self, p: &PhasePolynomial, column: usize) -> bool {
        let (rest, combo) = self.reduce(p);
        let Some((pivot, lead)) = rest.terms().next().map(|(e, c)| (*e, *c)) else {
            return false;
        };
        let inv = ExactComplex::one() / lead;
        let row = rest.scale(&inv);
        let mut row_combo: Vec<ExactComplex> = combo.iter().map(|c| -*c * inv).collect();
        row_combo[column] += inv;
        for (_, other, other_combo) in self.rows.iter_mut() {
            let c = other.coefficient(&pivot);
            if c.is_zero() {
                continue;
            }
            *other = &*other - &row.scale(&c);
            for (o, r) in other_combo.iter_mut().zip(&row_combo) {
                *o -= c * *r;
            }
        }
        self.rows.push((pivot, row, row_combo));
        true
    }
}

/// Exact structure constants of the span of `generators` (plus constants).
pub fn exact_structure_table(
    generators: &[Named<PhasePolynomial>],
    sig: &SymplecticSignature,
) -> Result<ExactAlgebraTable> {
    let n = generators.len();
    let mut reducer = SpanReducer::new(n + 1);
    for (i, g) in generators.iter().enumerate() {
        if !reducer.insert(&g.value, i) {
            return Err(Error::DependentGenerators(g.name.clone()));
        }
    }
    // The unit is only a separate column when it is not already spanned.
    reducer.insert(&PhasePolynomial::one(), n);

    let mut f = vec![vec![vec![ExactComplex::zero(); n]; n]; n];
    let mut constants = vec![vec![ExactComplex::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = poisson_bracket(&generators[i].value, &generators[j].value, sig)?;
            let (rest, combo) = reducer.reduce(&b);
            if !rest.is_zero() {
                return Err(Error::ClosureViolation {
                    left: generators[i].name.clone(),
                    right: generators[j].name.clone(),
                    residual: rest,
                });
            }
            f[i][j][..n].copy_from_slice(&combo[..n]);
            constants[i][j] = combo[n];
        }
    }
    Ok(ExactAlgebraTable {
        generators: generators.iter().map(|g| g.name.clone()).collect(),
        f,
        constants,
    })
}

pub fn structure_table(
    generators: &[Named<PhasePolynomial>],
    sig: &SymplecticSignature,
) -> Result<AlgebraTable> {
    exact_structure_table(generators, sig).map(|t| t.to_numeric())
}

// Momentum map polynomials.

const ETA: [PhaseVar; 2] = [PhaseVar::Eta1, PhaseVar::Eta2];
const ZETA: [PhaseVar; 2] = [PhaseVar::Zeta1, PhaseVar::Zeta2];

/// Exact Pauli matrices, index 0 is the identity.
fn pauli_exact(k: usize) -> [[ExactComplex; 2]; 2] {
    let z = || exact_int(0, 0);
    let one = || exact_int(1, 0);
    match k {
        0 => [[one(), z()], [z(), one()]],
        1 => [[z(), one()], [one(), z()]],
        2 => [[z(), exact_int(0, -1)], [exact_int(0, 1), z()]],
        3 => [[one(), z()], [z(), exact_int(-1, 0)]],
        _ => unreachable!(),
    }
}

/// `⟨a, σₖ b⟩` as a polynomial; `k = 0` is the plain inner product.
fn sandwich(a: [PhaseVar; 2], k: usize, b: [PhaseVar; 2]) -> PhasePolynomial {
    let s = pauli_exact(k);
    let mut out = PhasePolynomial::zero();
    for r in 0..2 {
        for c in 0..2 {
            let term = &PhasePolynomial::var(a[r].conjugate()) * &PhasePolynomial::var(b[c]);
            out = &out + &term.scale(&s[r][c]);
        }
    }
    out
}

fn real_part(p: &PhasePolynomial) -> PhasePolynomial {
    (p + &p.conj()).scale(&exact(rational(1, 2), rational(0, 1)))
}

fn imag_part(p: &PhasePolynomial) -> PhasePolynomial {
    // (p − p̄)/(2i)
    (p - &p.conj()).scale(&exact(rational(0, 1), rational(-1, 2)))
}

fn half(p: &PhasePolynomial) -> PhasePolynomial {
    p.scale(&exact(rational(1, 2), rational(0, 1)))
}

/// Names of the sixteen momentum-map components, in table order.
pub const MOMENTUM_MAP_NAMES: [&str; 16] = [
    "I", "J", "M1", "M2", "M3", "N1", "N2", "N3", "Q0", "Q1", "Q2", "Q3", "P0", "P1", "P2", "P3",
];

/// The `u(2,2)` momentum map as exact quadratic polynomials:
/// `I`, `𝒥`, `M⃗ = −½⟨η,σ⃗η⟩`, `N⃗ = ½⟨ζ,σ⃗ζ⟩`,
/// `Q = (−Im⟨η,ζ⟩, Re⟨η,σ⃗ζ⟩)`, `P = (Re⟨η,ζ⟩, Im⟨η,σ⃗ζ⟩)`.
pub fn momentum_map_polynomials() -> Vec<Named<PhasePolynomial>> {
    let ee = sandwich(ETA, 0, ETA);
    let zz = sandwich(ZETA, 0, ZETA);
    let ez = sandwich(ETA, 0, ZETA);
    let mut out = vec![
        Named::new("I", half(&(&ee - &zz))),
        Named::new("J", half(&(&ee + &zz))),
    ];
    for k in 1..=3 {
        out.push(Named::new(
            alloc::format!("M{k}"),
            -half(&sandwich(ETA, k, ETA)),
        ));
    }
    for k in 1..=3 {
        out.push(Named::new(
            alloc::format!("N{k}"),
            half(&sandwich(ZETA, k, ZETA)),
        ));
    }
    out.push(Named::new("Q0", -imag_part(&ez)));
    for k in 1..=3 {
        out.push(Named::new(
            alloc::format!("Q{k}"),
            real_part(&sandwich(ETA, k, ZETA)),
        ));
    }
    out.push(Named::new("P0", real_part(&ez)));
    for k in 1..=3 {
        out.push(Named::new(
            alloc::format!("P{k}"),
            imag_part(&sandwich(ETA, k, ZETA)),
        ));
    }
    out
}

/// Looks up one component (or a derived combination: `L1..3 = M + N`,
/// `R1..3 = M − N`, `S1..3 = R + Q`, `E0 = ½(J − P0)`).
pub fn momentum_polynomial(name: &str) -> Option<PhasePolynomial> {
    let all = momentum_map_polynomials();
    let get = |n: &str| all.iter().find(|g| g.name == n).map(|g| g.value.clone());
    if let Some(p) = get(name) {
        return Some(p);
    }
    let (head, tail) = name.split_at(1);
    let k: usize = tail.parse().ok()?;
    if name == "E0" {
        return Some(half(&(&get("J")? - &get("P0")?)));
    }
    if !(1..=3).contains(&k) {
        return None;
    }
    let m = get(&alloc::format!("M{k}"))?;
    let n = get(&alloc::format!("N{k}"))?;
    match head {
        "L" => Some(&m + &n),
        "R" => Some(&m - &n),
        "S" => Some(&(&m - &n) + &get(&alloc::format!("Q{k}"))?),
        _ => None,
    }
}

/// Convenience: named polynomials for a list of component names.
pub fn named_polynomials(names: &[&str]) -> Option<Vec<Named<PhasePolynomial>>> {
    names
        .iter()
        .map(|n| momentum_polynomial(n).map(|p| Named::new(n.to_string(), p)))
        .collect()
}

fn quaternion_mul(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Deterministic pseudo-random point with `⟨η,η⟩ = ⟨ζ,ζ⟩ ≠ 0`.
///
/// `η = p·x` and `ζ = q·x` (quaternion products over small integers) where
/// `q` is a signed permutation of `p`, so `|η| = |ζ|` holds exactly in
/// floating point. `q = ±p` is rejected.
pub fn sample_constraint_point(seed: u64) -> SpinorPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> [i64; 4] {
        loop {
            let v = [
                rng.random_range(-6..=6),
                rng.random_range(-6..=6),
                rng.random_range(-6..=6),
                rng.random_range(-6..=6),
            ];
            if v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    };
    let x = draw(&mut rng);
    let p = draw(&mut rng);
    let q = loop {
        let mut perm = [0usize, 1, 2, 3];
        for i in (1..4).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        let mut q = [0i64; 4];
        for i in 0..4 {
            let s = if rng.random_bool(0.5) { 1 } else { -1 };
            q[i] = s * p[perm[i]];
        }
        let neg_p = [-p[0], -p[1], -p[2], -p[3]];
        if q != p && q != neg_p {
            break q;
        }
    };
    let to_f = |v: [i64; 4]| v.map(|c| c as f64 / 16.0);
    SpinorPoint::from_real(to_f(quaternion_mul(p, x)), to_f(quaternion_mul(q, x)))
}
