//! Hopf and KS maps, the momentum map, and the dictionary between the
//! linearized variables and physical Kepler variables `(𝕏, 𝕐)`.

use num_complex::Complex64;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::spinor::{inner, norm_sqr, sigma_sandwich, CotangentPoint, Spinor, SpinorPoint};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Relative tolerance for the `I = 0` precondition.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergySign {
    Neg,
    Pos,
}

/// Physical Kepler state with its constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeplerState {
    #[serde(rename = "X")]
    pub x: Vec3,
    #[serde(rename = "Y")]
    pub y: Vec3,
    pub m: f64,
    pub gamma: f64,
    pub k: f64,
}

impl KeplerState {
    pub fn new(x: Vec3, y: Vec3, m: f64, gamma: f64, k: f64) -> Self {
        Self { x, y, m, gamma, k }
    }

    pub fn radius(&self) -> f64 {
        vec3::norm(self.x)
    }

    /// `𝕐²/2m − γ/‖𝕏‖`.
    pub fn hamiltonian(&self) -> f64 {
        vec3::dot(self.y, self.y) / (2.0 * self.m) - self.gamma / self.radius()
    }

    pub fn angular_momentum(&self) -> Vec3 {
        vec3::cross(self.x, self.y)
    }

    /// State at apoapsis of an ellipse with semi-major axis `a` and
    /// eccentricity `e`, in the x-y plane.
    pub fn at_apoapsis(a: f64, e: f64, m: f64, gamma: f64) -> Result<Self> {
        if !(a > 0.0) || !(0.0..1.0).contains(&e) {
            return Err(Error::InvalidArgument("need a > 0 and 0 <= e < 1"));
        }
        let mu = gamma / m;
        let r = a * (1.0 + e);
        let v = Float::sqrt(mu / a * (1.0 - e) / (1.0 + e));
        let k = Float::sqrt(gamma / a);
        Ok(Self::new([r, 0.0, 0.0], [0.0, m * v, 0.0], m, gamma, k))
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|c| c.is_finite())
    }
}

/// Values of the sixteen momentum-map components at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumMapValue {
    #[serde(rename = "I")]
    pub i: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "M")]
    pub m: Vec3,
    #[serde(rename = "N")]
    pub n: Vec3,
    #[serde(rename = "Q")]
    pub q: [f64; 4],
    #[serde(rename = "P")]
    pub p: [f64; 4],
}

impl MomentumMapValue {
    /// `R⃗′ = M⃗ − N⃗`.
    pub fn r_prime(&self) -> Vec3 {
        vec3::sub(self.m, self.n)
    }

    /// `L⃗ = M⃗ + N⃗`.
    pub fn angular(&self) -> Vec3 {
        vec3::add(self.m, self.n)
    }

    pub fn q_vec(&self) -> Vec3 {
        [self.q[1], self.q[2], self.q[3]]
    }

    pub fn p_vec(&self) -> Vec3 {
        [self.p[1], self.p[2], self.p[3]]
    }

    /// `‖P‖ = √(P₀² + P⃗·P⃗)`.
    pub fn p_norm(&self) -> f64 {
        Float::sqrt(self.p.iter().map(|c| c * c).sum::<f64>())
    }
}

/// `π₀(z) = ⟨z, σ⃗ z⟩`.
pub fn hopf(z: &Spinor) -> Result<Vec3> {
    if norm_sqr(z) == 0.0 {
        return Err(Error::Domain("hopf map needs z != 0"));
    }
    Ok(sigma_sandwich(z, z).map(|c| c.re))
}

/// `π(z, w) = (⟨z, σ⃗ z⟩, Im⟨w, σ⃗ z⟩ / ⟨z, z⟩)`.
pub fn ks_pi(p: &CotangentPoint) -> Result<(Vec3, Vec3)> {
    let x = hopf(&p.z)?;
    let zz = norm_sqr(&p.z);
    let y = sigma_sandwich(&p.w, &p.z).map(|c| c.im / zz);
    Ok((x, y))
}

/// `(η, ζ) = ((z + w)/√2, (z − w)/√2)`.
pub fn collision_injection(p: &CotangentPoint) -> SpinorPoint {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    SpinorPoint {
        eta: [(p.z[0] + p.w[0]) * s, (p.z[1] + p.w[1]) * s],
        zeta: [(p.z[0] - p.w[0]) * s, (p.z[1] - p.w[1]) * s],
    }
}

/// Inverse of [`collision_injection`] (the same involutive matrix).
pub fn collision_extraction(p: &SpinorPoint) -> CotangentPoint {
    let back = collision_injection(&CotangentPoint::new(p.eta, p.zeta));
    CotangentPoint::new(back.eta, back.zeta)
}

pub fn momentum_map(p: &SpinorPoint) -> MomentumMapValue {
    let ee = norm_sqr(&p.eta);
    let zz = norm_sqr(&p.zeta);
    let ez = inner(&p.eta, &p.zeta);
    let s_eta = sigma_sandwich(&p.eta, &p.eta);
    let s_zeta = sigma_sandwich(&p.zeta, &p.zeta);
    let s_mix = sigma_sandwich(&p.eta, &p.zeta);
    MomentumMapValue {
        i: 0.5 * (ee - zz),
        j: 0.5 * (ee + zz),
        m: s_eta.map(|c| -0.5 * c.re),
        n: s_zeta.map(|c| 0.5 * c.re),
        q: [-ez.im, s_mix[0].re, s_mix[1].re, s_mix[2].re],
        p: [ez.re, s_mix[0].im, s_mix[1].im, s_mix[2].im],
    }
}

fn chart_denominator(mm: &MomentumMapValue) -> Result<f64> {
    let d = mm.p_norm() + mm.p[0];
    if d <= f64::EPSILON * mm.j.max(f64::MIN_POSITIVE) {
        return Err(Error::SingularChart);
    }
    Ok(d)
}

fn check_constants(m: f64, gamma: f64, k: f64) -> Result<()> {
    if m > 0.0 && gamma > 0.0 && k > 0.0 && m.is_finite() && gamma.is_finite() && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "m, gamma and k must be positive and finite",
        ))
    }
}

/// `𝕏 = (Q⃗ − R⃗′)/(√m k)`, `𝕐 = k√m P⃗/(‖P‖ + P₀)`.
pub fn to_physical(mm: &MomentumMapValue, m: f64, gamma: f64, k: f64) -> Result<KeplerState> {
    check_constants(m, gamma, k)?;
    let d = chart_denominator(mm)?;
    let rel = vec3::sub(mm.q_vec(), mm.r_prime());
    if vec3::norm(rel) == 0.0 {
        return Err(Error::Collision);
    }
    let sm = Float::sqrt(m);
    Ok(KeplerState {
        x: vec3::scale(rel, 1.0 / (sm * k)),
        y: vec3::scale(mm.p_vec(), k * sm / d),
        m,
        gamma,
        k,
    })
}

/// The Hamiltonian written in linearized variables:
/// `k (k(‖P‖ − P₀) − 2γ√m) / (2(‖P‖ + P₀))`.
pub fn linearized_hamiltonian(mm: &MomentumMapValue, m: f64, gamma: f64, k: f64) -> Result<f64> {
    check_constants(m, gamma, k)?;
    let d = chart_denominator(mm)?;
    Ok(k * (k * (mm.p_norm() - mm.p[0]) - 2.0 * gamma * Float::sqrt(m)) / (2.0 * d))
}

/// `𝕐 × L⃗/m − γ 𝕏/‖𝕏‖`.
pub fn runge_lenz(state: &KeplerState) -> Result<Vec3> {
    let r = state.radius();
    if !(r > 0.0) {
        return Err(Error::Domain("Runge-Lenz vector needs X != 0"));
    }
    let l = state.angular_momentum();
    Ok(vec3::sub(
        vec3::scale(vec3::cross(state.y, l), 1.0 / state.m),
        vec3::scale(state.x, state.gamma / r),
    ))
}

/// `(R⃗′(kP₀ + γ√m) + Q⃗(k‖P‖ − γ√m)) / (√m(‖P‖ + P₀))`.
pub fn linearized_runge_lenz(mm: &MomentumMapValue, m: f64, gamma: f64, k: f64) -> Result<Vec3> {
    check_constants(m, gamma, k)?;
    let d = chart_denominator(mm)?;
    let sm = Float::sqrt(m);
    let num = vec3::add(
        vec3::scale(mm.r_prime(), k * mm.p[0] + gamma * sm),
        vec3::scale(mm.q_vec(), k * mm.p_norm() - gamma * sm),
    );
    Ok(vec3::scale(num, 1.0 / (sm * d)))
}

/// Chooses `k` so the linearized Hamiltonian equals `∓k²/2`:
/// `k = γ√m/𝒥` below zero energy, `k = −γ√m/P₀` above.
pub fn calibrate_k(mm: &MomentumMapValue, m: f64, gamma: f64, sign: EnergySign) -> Result<f64> {
    check_constants(m, gamma, 1.0)?;
    if mm.i.abs() > CONSTRAINT_TOLERANCE * mm.j.max(1.0) {
        return Err(Error::ConstraintViolated { value: mm.i });
    }
    let sm = Float::sqrt(m);
    match sign {
        EnergySign::Neg => {
            if !(mm.j > 0.0) {
                return Err(Error::EnergySign("negative regime needs J > 0"));
            }
            Ok(gamma * sm / mm.j)
        }
        EnergySign::Pos => {
            if !(-mm.p[0] > 0.0) {
                return Err(Error::EnergySign("positive regime needs -P0 > 0"));
            }
            Ok(-gamma * sm / mm.p[0])
        }
    }
}

/// Lifts a physical state to `(η, ζ)` on `I = 0`, using `state.k`.
///
/// The fiber phase is fixed by making the larger of the two spinor
/// components of `z` real and non-negative.
pub fn lift(state: &KeplerState) -> Result<SpinorPoint> {
    check_constants(state.m, state.gamma, state.k)?;
    let sm = Float::sqrt(state.m);
    let x = vec3::scale(state.x, sm * state.k);
    let y = vec3::scale(state.y, 1.0 / (sm * state.k));
    let r = vec3::norm(x);
    if !(r > 0.0) {
        return Err(Error::Domain("cannot lift a collision state"));
    }
    let z: Spinor = if x[2] >= 0.0 {
        let a = Float::sqrt((r + x[2]) / 2.0);
        [
            Complex64::new(a, 0.0),
            Complex64::new(x[0], x[1]) / Float::sqrt(2.0 * (r + x[2])),
        ]
    } else {
        let b = Float::sqrt((r - x[2]) / 2.0);
        [
            Complex64::new(x[0], -x[1]) / Float::sqrt(2.0 * (r - x[2])),
            Complex64::new(b, 0.0),
        ]
    };
    // w = −i (y·σ⃗) z solves Im⟨w, σ⃗z⟩ = |z|² y with Re⟨w, z⟩ = 0.
    let i = Complex64::i();
    let ys: [[Complex64; 2]; 2] = [
        [Complex64::new(y[2], 0.0), Complex64::new(y[0], -y[1])],
        [Complex64::new(y[0], y[1]), Complex64::new(-y[2], 0.0)],
    ];
    let w = [
        -i * (ys[0][0] * z[0] + ys[0][1] * z[1]),
        -i * (ys[1][0] * z[0] + ys[1][1] * z[1]),
    ];
    Ok(collision_injection(&CotangentPoint::new(z, w)))
}

/// `2 Im⟨w, dz⟩` evaluated on a tangent vector `dz`.
pub fn canonical_potential(p: &CotangentPoint, dz: &Spinor) -> f64 {
    2.0 * inner(&p.w, dz).im
}
