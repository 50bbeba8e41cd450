//! Centrally extended group laws of the three linearized systems. Each
//! element carries a `U(1)` factor `ς`; composition `g′ ∘ g` follows the
//! convention that the primed element is on the left.

use num_complex::Complex64;
use num_traits::{Float, Zero};

fn expi(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

fn bilinear(a: &[Complex64; 4], b: &[Complex64; 4]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Element `(λ, C, C†, ς)` of the extended harmonic oscillator group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicElement {
    pub lambda: f64,
    pub c: [Complex64; 4],
    pub c_dag: [Complex64; 4],
    pub phase: Complex64,
}

impl HarmonicElement {
    /// Element with `C† = C̄`.
    pub fn new(lambda: f64, c: [Complex64; 4], phase: Complex64) -> Self {
        Self {
            lambda,
            c,
            c_dag: c.map(|v| v.conj()),
            phase,
        }
    }

    pub fn identity() -> Self {
        Self::new(0.0, [Complex64::zero(); 4], Complex64::new(1.0, 0.0))
    }

    pub fn time(lambda: f64) -> Self {
        Self::new(lambda, [Complex64::zero(); 4], Complex64::new(1.0, 0.0))
    }

    /// `self ∘ g`:
    /// `C″ = C′e^{−iλ} + C`, `C†″ = C†′e^{iλ} + C†`,
    /// `ς″ = ς′ς exp[(i/2)(i C′·C† e^{−iλ} − i C†′·C e^{iλ})]`.
    pub fn compose(&self, g: &Self) -> Self {
        let i = Complex64::i();
        let rot = expi(-g.lambda);
        let rot_back = expi(g.lambda);
        let mut c = [Complex64::zero(); 4];
        let mut c_dag = [Complex64::zero(); 4];
        for k in 0..4 {
            c[k] = self.c[k] * rot + g.c[k];
            c_dag[k] = self.c_dag[k] * rot_back + g.c_dag[k];
        }
        let xi = i
            * 0.5
            * (i * bilinear(&self.c, &g.c_dag) * rot - i * bilinear(&self.c_dag, &g.c) * rot_back);
        Self {
            lambda: self.lambda + g.lambda,
            c,
            c_dag,
            phase: self.phase * g.phase * xi.exp(),
        }
    }

    pub fn inverse(&self) -> Self {
        let back = expi(self.lambda);
        let fwd = expi(-self.lambda);
        Self {
            lambda: -self.lambda,
            c: self.c.map(|v| -v * back),
            c_dag: self.c_dag.map(|v| -v * fwd),
            phase: self.phase.inv(),
        }
    }
}

/// Element `(λ, α, ν, ς)` of the extended repulsive oscillator group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepulsiveElement {
    pub lambda: f64,
    pub alpha: [f64; 4],
    pub nu: [f64; 4],
    pub phase: Complex64,
}

impl RepulsiveElement {
    pub fn identity() -> Self {
        Self {
            lambda: 0.0,
            alpha: [0.0; 4],
            nu: [0.0; 4],
            phase: Complex64::new(1.0, 0.0),
        }
    }

    /// `α″ = α′e^{λ} + α`, `ν″ = ν′e^{−λ} + ν`,
    /// `ς″ = ς′ς exp[(i/2)(α·ν′e^{−λ} − α′·ν e^{λ})]`.
    pub fn compose(&self, g: &Self) -> Self {
        let grow = Float::exp(g.lambda);
        let shrink = Float::exp(-g.lambda);
        let mut alpha = [0.0; 4];
        let mut nu = [0.0; 4];
        let mut xi = 0.0;
        for k in 0..4 {
            alpha[k] = self.alpha[k] * grow + g.alpha[k];
            nu[k] = self.nu[k] * shrink + g.nu[k];
            xi += g.alpha[k] * self.nu[k] * shrink - self.alpha[k] * g.nu[k] * grow;
        }
        Self {
            lambda: self.lambda + g.lambda,
            alpha,
            nu,
            phase: self.phase * g.phase * expi(0.5 * xi),
        }
    }

    pub fn inverse(&self) -> Self {
        let grow = Float::exp(self.lambda);
        let shrink = Float::exp(-self.lambda);
        Self {
            lambda: -self.lambda,
            alpha: self.alpha.map(|v| -v * shrink),
            nu: self.nu.map(|v| -v * grow),
            phase: self.phase.inv(),
        }
    }
}

/// Element of the extended group of four free particles, with the
/// `(a, A)` and `(b, B)` pairs entering the cocycle with opposite signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeElement {
    pub lambda: f64,
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub big_a: [f64; 2],
    pub big_b: [f64; 2],
    pub phase: Complex64,
}

fn dot2(x: [f64; 2], y: [f64; 2]) -> f64 {
    x[0] * y[0] + x[1] * y[1]
}

impl FreeElement {
    pub fn identity() -> Self {
        Self {
            lambda: 0.0,
            a: [0.0; 2],
            b: [0.0; 2],
            big_a: [0.0; 2],
            big_b: [0.0; 2],
            phase: Complex64::new(1.0, 0.0),
        }
    }

    /// `a″ = a + a′ + A′λ`, `b″ = b + b′ + B′λ`, `A″ = A + A′`, `B″ = B + B′`,
    /// `ς″ = ς′ς exp{i[a′·A + λ(A′·A + ½A′²)]} exp{i[b·B′ + ½B′²λ]}`.
    pub fn compose(&self, g: &Self) -> Self {
        let l = g.lambda;
        let add = |x: [f64; 2], y: [f64; 2], v: [f64; 2]| {
            [x[0] + y[0] + v[0] * l, x[1] + y[1] + v[1] * l]
        };
        let xi = dot2(self.a, g.big_a)
            + l * (dot2(self.big_a, g.big_a) + 0.5 * dot2(self.big_a, self.big_a))
            + dot2(g.b, self.big_b)
            + 0.5 * dot2(self.big_b, self.big_b) * l;
        Self {
            lambda: self.lambda + l,
            a: add(g.a, self.a, self.big_a),
            b: add(g.b, self.b, self.big_b),
            big_a: [g.big_a[0] + self.big_a[0], g.big_a[1] + self.big_a[1]],
            big_b: [g.big_b[0] + self.big_b[0], g.big_b[1] + self.big_b[1]],
            phase: self.phase * g.phase * expi(xi),
        }
    }

    pub fn inverse(&self) -> Self {
        let l = self.lambda;
        let a = [
            -self.a[0] + self.big_a[0] * l,
            -self.a[1] + self.big_a[1] * l,
        ];
        let b = [
            -self.b[0] + self.big_b[0] * l,
            -self.b[1] + self.big_b[1] * l,
        ];
        let xi = -dot2(self.a, self.big_a) + 0.5 * l * dot2(self.big_a, self.big_a)
            - dot2(self.b, self.big_b)
            + 0.5 * l * dot2(self.big_b, self.big_b);
        Self {
            lambda: -l,
            a,
            b,
            big_a: self.big_a.map(|v| -v),
            big_b: self.big_b.map(|v| -v),
            phase: (self.phase * expi(xi)).inv(),
        }
    }
}
