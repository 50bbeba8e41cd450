//! Real and complex charts adapted to each energy regime, and the exact
//! flows in those charts.

use num_complex::Complex64;
use num_traits::Float;

use crate::ks::{collision_extraction, collision_injection};
use crate::spinor::{CotangentPoint, SpinorPoint};
use crate::{Error, Result};

/// Largest `|Δλ|` accepted by [`flow_repulsive`] by default; `e^50 ≈ 5e21`.
pub const DEFAULT_MAX_REPULSIVE_STEP: f64 = 50.0;

/// `−P₀ = c Σ αᵢνᵢ` in the positive-energy chart.
pub const NEG_P0_PER_ALPHA_NU: f64 = -0.5;

/// Four oscillator amplitudes `C = (η₁, η₂, ζ̄₁, ζ̄₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub c: [Complex64; 4],
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepulsiveState {
    pub alpha: [f64; 4],
    pub nu: [f64; 4],
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeState {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub big_a: [f64; 2],
    pub big_b: [f64; 2],
    pub lambda: f64,
}

impl FreeState {
    /// `E₀ = ½ Σ (Aᵢ² + Bᵢ²)`.
    pub fn energy(&self) -> f64 {
        0.5 * (self.big_a[0] * self.big_a[0]
            + self.big_a[1] * self.big_a[1]
            + self.big_b[0] * self.big_b[0]
            + self.big_b[1] * self.big_b[1])
    }
}

impl RepulsiveState {
    pub fn alpha_dot_nu(&self) -> f64 {
        self.alpha.iter().zip(&self.nu).map(|(a, n)| a * n).sum()
    }
}

pub fn spinor_to_oscillator(p: &SpinorPoint, lambda: f64) -> OscillatorState {
    OscillatorState {
        c: [p.eta[0], p.eta[1], p.zeta[0].conj(), p.zeta[1].conj()],
        lambda,
    }
}

pub fn oscillator_to_spinor(s: &OscillatorState) -> SpinorPoint {
    SpinorPoint::new([s.c[0], s.c[1]], [s.c[2].conj(), s.c[3].conj()])
}

/// `C(λ + Δλ) = C(λ) e^{−iΔλ}`.
pub fn flow_harmonic(s0: &OscillatorState, dlambda: f64) -> OscillatorState {
    let rot = Complex64::from_polar(1.0, -dlambda);
    OscillatorState {
        c: s0.c.map(|v| v * rot),
        lambda: s0.lambda + dlambda,
    }
}

/// `α ↦ α e^{Δλ}`, `ν ↦ ν e^{−Δλ}`, refusing steps with `|Δλ| > max_step`.
pub fn flow_repulsive(s0: &RepulsiveState, dlambda: f64, max_step: f64) -> Result<RepulsiveState> {
    if !dlambda.is_finite() || dlambda.abs() > max_step {
        return Err(Error::FlowOverflow {
            step: dlambda,
            bound: max_step,
        });
    }
    let grow = Float::exp(dlambda);
    let shrink = Float::exp(-dlambda);
    Ok(RepulsiveState {
        alpha: s0.alpha.map(|v| v * grow),
        nu: s0.nu.map(|v| v * shrink),
        lambda: s0.lambda + dlambda,
    })
}

fn real_chart(p: &CotangentPoint) -> ([f64; 4], [f64; 4]) {
    (
        [p.z[0].re, p.z[0].im, p.z[1].re, p.z[1].im],
        [p.w[0].re, p.w[0].im, p.w[1].re, p.w[1].im],
    )
}

fn complex_chart(q: [f64; 4], p: [f64; 4]) -> CotangentPoint {
    CotangentPoint::new(
        [Complex64::new(q[0], q[1]), Complex64::new(q[2], q[3])],
        [Complex64::new(p[0], p[1]), Complex64::new(p[2], p[3])],
    )
}

/// `(η, ζ) → (z, w) → (q, p) → (α, ν)` with `qᵢ = ½(α_{i+1} + ν_{i+1})`.
pub fn change_variables_positive(p: &SpinorPoint) -> RepulsiveState {
    let (q, p) = real_chart(&collision_extraction(p));
    RepulsiveState {
        alpha: [q[0] - p[1], q[1] + p[0], q[2] - p[3], q[3] + p[2]],
        nu: [q[0] + p[1], q[1] - p[0], q[2] + p[3], q[3] - p[2]],
        lambda: 0.0,
    }
}

pub fn positive_to_spinor(s: &RepulsiveState) -> SpinorPoint {
    let (a, n) = (s.alpha, s.nu);
    let q = [
        0.5 * (a[0] + n[0]),
        0.5 * (a[1] + n[1]),
        0.5 * (a[2] + n[2]),
        0.5 * (a[3] + n[3]),
    ];
    let p = [
        0.5 * (a[1] - n[1]),
        0.5 * (n[0] - a[0]),
        0.5 * (a[3] - n[3]),
        0.5 * (n[2] - a[2]),
    ];
    collision_injection(&complex_chart(q, p))
}

/// Relabels the real chart of `(z, w)`:
/// `b₀ = q₀, a₀ = q₁, B₀ = p₁, A₀ = p₀, b₁ = q₂, a₁ = q₃, B₁ = p₃, A₁ = p₂`.
pub fn change_variables_zero(p: &CotangentPoint) -> FreeState {
    let (q, p) = real_chart(p);
    FreeState {
        a: [q[1], q[3]],
        b: [q[0], q[2]],
        big_a: [p[0], p[2]],
        big_b: [p[1], p[3]],
        lambda: 0.0,
    }
}

pub fn free_to_cotangent(s: &FreeState) -> CotangentPoint {
    complex_chart(
        [s.b[0], s.a[0], s.b[1], s.a[1]],
        [s.big_a[0], s.big_b[0], s.big_a[1], s.big_b[1]],
    )
}

/// Right action of the time subgroup in the free-particle group law:
/// `a ↦ a + AΔλ`, `b ↦ b + BΔλ`.
pub fn flow_free(s0: &FreeState, dlambda: f64) -> FreeState {
    FreeState {
        a: [
            s0.a[0] + s0.big_a[0] * dlambda,
            s0.a[1] + s0.big_a[1] * dlambda,
        ],
        b: [
            s0.b[0] + s0.big_b[0] * dlambda,
            s0.b[1] + s0.big_b[1] * dlambda,
        ],
        lambda: s0.lambda + dlambda,
        ..*s0
    }
}

/// Forward zero-energy motion `z ↦ z + i w s`, which in the free chart is
/// `a ↦ a + A s`, `b ↦ b − B s`. The `(b, B)` pairs carry the opposite
/// symplectic sign, so they drift against the group-law direction.
pub fn flow_parabolic(s0: &FreeState, ds: f64) -> FreeState {
    FreeState {
        a: [s0.a[0] + s0.big_a[0] * ds, s0.a[1] + s0.big_a[1] * ds],
        b: [s0.b[0] - s0.big_b[0] * ds, s0.b[1] - s0.big_b[1] * ds],
        lambda: s0.lambda + ds,
        ..*s0
    }
}

/// The free-particle potential
/// `−B₀db₀ + b₀dB₀ − B₁db₁ + b₁dB₁ + A₀da₀ − a₀dA₀ + A₁da₁ − a₁dA₁`
/// at `s`, contracted with the tangent vector `d` (its `lambda` is ignored).
pub fn free_potential_form(s: &FreeState, d: &FreeState) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        acc += -s.big_b[i] * d.b[i] + s.b[i] * d.big_b[i];
        acc += s.big_a[i] * d.a[i] - s.a[i] * d.big_a[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ks::{canonical_potential, momentum_map};
    use crate::spinor::Spinor;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pseudo(seed: u64, n: usize) -> impl Iterator<Item = f64> {
        let mut x = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (0..n).map(move |_| {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((x >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
    }

    fn point(seed: u64) -> SpinorPoint {
        let v: std::vec::Vec<f64> = pseudo(seed, 8).collect();
        SpinorPoint::from_real([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]])
    }

    fn spinor_close(a: &SpinorPoint, b: &SpinorPoint, tol: f64) -> bool {
        a.eta
            .iter()
            .chain(&a.zeta)
            .zip(b.eta.iter().chain(&b.zeta))
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn harmonic_periodicity() {
        let s = OscillatorState {
            c: [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            lambda: 0.0,
        };
        let half = flow_harmonic(&s, core::f64::consts::PI);
        assert!((half.c[0] - c(-1.0, 0.0)).norm() < 1e-15);
        let p = point(3);
        let o = spinor_to_oscillator(&p, 0.0);
        let full = flow_harmonic(&o, 2.0 * core::f64::consts::PI);
        assert!(spinor_close(&oscillator_to_spinor(&full), &p, 1e-14));
        let j0 = momentum_map(&p).j;
        let j1 = momentum_map(&oscillator_to_spinor(&flow_harmonic(&o, 0.37))).j;
        assert!((j0 - j1).abs() < 1e-15);
    }

    #[test]
    fn harmonic_flow_matches_cotangent_rotation() {
        // z(s) = cos s z + i sin s w with λ = −s.
        let p = point(5);
        let s = 0.8;
        let cp = collision_extraction(&p);
        let i = Complex64::i();
        let z: Spinor = [0, 1].map(|k| cp.z[k] * s.cos() + i * cp.w[k] * s.sin());
        let moved = oscillator_to_spinor(&flow_harmonic(&spinor_to_oscillator(&p, 0.0), -s));
        let got = collision_extraction(&moved);
        assert!((got.z[0] - z[0]).norm() < 1e-14 && (got.z[1] - z[1]).norm() < 1e-14);
    }

    #[test]
    fn positive_chart_round_trip_and_hamiltonian() {
        for seed in 0..100 {
            let p = point(seed);
            let r = change_variables_positive(&p);
            assert!(spinor_close(&positive_to_spinor(&r), &p, 1e-15));
            let mm = momentum_map(&p);
            assert!((-mm.p[0] - NEG_P0_PER_ALPHA_NU * r.alpha_dot_nu()).abs() < 1e-14);
        }
        let zero = change_variables_positive(&SpinorPoint::from_real([0.0; 4], [0.0; 4]));
        assert_eq!(zero.alpha, [0.0; 4]);
        assert_eq!(zero.nu, [0.0; 4]);
    }

    #[test]
    fn repulsive_flow_matches_cotangent_boost() {
        let p = point(11);
        let s = 0.6;
        let cp = collision_extraction(&p);
        let i = Complex64::i();
        let z: Spinor = [0, 1].map(|k| cp.z[k] * s.cosh() + i * cp.w[k] * s.sinh());
        let r = flow_repulsive(
            &change_variables_positive(&p),
            s,
            DEFAULT_MAX_REPULSIVE_STEP,
        )
        .unwrap();
        let got = collision_extraction(&positive_to_spinor(&r));
        assert!((got.z[0] - z[0]).norm() < 1e-14 && (got.z[1] - z[1]).norm() < 1e-14);
        let r0 = change_variables_positive(&p);
        assert!((r.alpha_dot_nu() - r0.alpha_dot_nu()).abs() < 1e-14);
        assert_eq!(flow_repulsive(&r0, 0.0, 1.0).unwrap().alpha, r0.alpha);
        assert!(matches!(
            flow_repulsive(&r0, 60.0, DEFAULT_MAX_REPULSIVE_STEP),
            Err(Error::FlowOverflow { .. })
        ));
    }

    fn free(seed: u64) -> FreeState {
        let v: std::vec::Vec<f64> = pseudo(seed, 8).collect();
        FreeState {
            a: [v[0], v[1]],
            b: [v[2], v[3]],
            big_a: [v[4], v[5]],
            big_b: [v[6], v[7]],
            lambda: 0.0,
        }
    }

    #[test]
    fn free_flow_properties() {
        let s = free(2);
        let still = FreeState {
            big_a: [0.0; 2],
            big_b: [0.0; 2],
            ..s
        };
        assert_eq!(flow_free(&still, 3.0).a, still.a);
        let one = flow_free(&flow_free(&s, 0.4), 1.1);
        let both = flow_free(&s, 1.5);
        for k in 0..2 {
            assert!((one.a[k] - both.a[k]).abs() < 1e-15 && (one.b[k] - both.b[k]).abs() < 1e-15);
        }
        assert_eq!(flow_free(&s, 2.0).energy(), s.energy());
        assert_eq!(flow_parabolic(&s, 2.0).energy(), s.energy());
    }

    #[test]
    fn parabolic_flow_matches_cotangent_drift() {
        let s = free(9);
        let cp = free_to_cotangent(&s);
        let i = Complex64::i();
        let t = 1.3;
        let z: Spinor = [0, 1].map(|k| cp.z[k] + i * cp.w[k] * t);
        let got = free_to_cotangent(&flow_parabolic(&s, t));
        assert!((got.z[0] - z[0]).norm() < 1e-15 && (got.z[1] - z[1]).norm() < 1e-15);
    }

    #[test]
    fn zero_chart_round_trip() {
        let s = free(4);
        let back = change_variables_zero(&free_to_cotangent(&s));
        assert_eq!(back, s);
    }

    #[test]
    fn free_form_differs_from_canonical_by_exact_term() {
        // canonical 2Im⟨w,dz⟩ and the free form differ by d(b·B − a·A).
        for seed in 0..20 {
            let s = free(100 + seed);
            let d = free(200 + seed);
            let cp = free_to_cotangent(&s);
            let dz = free_to_cotangent(&d).z;
            let canonical = canonical_potential(&cp, &dz);
            let mut exact = 0.0;
            for i in 0..2 {
                exact += d.b[i] * s.big_b[i] + s.b[i] * d.big_b[i]
                    - d.a[i] * s.big_a[i]
                    - s.a[i] * d.big_a[i];
            }
            assert!((free_potential_form(&s, &d) - canonical - exact).abs() < 1e-13);
        }
    }
}
