//! Direct treatment of the Kepler problem: a fixed-step RK4 baseline and
//! closed-form elliptic motion used as a reference.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use super::propagate::{sample_of, Trajectory};
use crate::ks::KeplerState;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// `2π √(m a³ / γ)` with `a = −γ / 2ℋ`.
pub fn kepler_period(state: &KeplerState) -> Result<f64> {
    let h = state.hamiltonian();
    if !(h < 0.0) {
        return Err(Error::EnergySign("period needs a bound orbit"));
    }
    let a = -state.gamma / (2.0 * h);
    Ok(2.0 * PI * Float::sqrt(state.m * a * a * a / state.gamma))
}

fn solve_kepler(mean: f64, e: f64) -> f64 {
    let mut ecc = if e < 0.8 { mean } else { PI.copysign(mean) };
    for _ in 0..100 {
        let f = ecc - e * Float::sin(ecc) - mean;
        let step = f / (1.0 - e * Float::cos(ecc));
        ecc -= step;
        if step.abs() <= 1e-16 * (1.0 + ecc.abs()) {
            break;
        }
    }
    ecc
}

/// Closed-form position and momentum after physical time `t` on a bound
/// orbit, via Lagrange's `f` and `g` coefficients.
pub fn kepler_propagate(state: &KeplerState, t: f64) -> Result<(Vec3, Vec3)> {
    let h = state.hamiltonian();
    if !(h < 0.0) {
        return Err(Error::EnergySign(
            "closed-form propagation needs a bound orbit",
        ));
    }
    let mu = state.gamma / state.m;
    let a = -state.gamma / (2.0 * h);
    let r0 = state.radius();
    let v0 = vec3::scale(state.y, 1.0 / state.m);
    let sqrt_mu_a = Float::sqrt(mu * a);
    let e_cos = 1.0 - r0 / a;
    let e_sin = vec3::dot(state.x, v0) / sqrt_mu_a;
    let e = Float::hypot(e_cos, e_sin);
    let ecc0 = Float::atan2(e_sin, e_cos);
    let n = Float::sqrt(mu / (a * a * a));
    let mean0 = ecc0 - e * Float::sin(ecc0);
    let mean = mean0 + n * t;
    let turns = Float::floor(mean / (2.0 * PI) + 0.5);
    let ecc = solve_kepler(mean - 2.0 * PI * turns, e) + 2.0 * PI * turns;
    let de = ecc - ecc0;
    let (sd, cd) = (Float::sin(de), Float::cos(de));
    let f = 1.0 - a / r0 * (1.0 - cd);
    let g = t - (de - sd) / n;
    let r = a * (1.0 - e * Float::cos(ecc));
    let fdot = -sqrt_mu_a / (r * r0) * sd;
    let gdot = 1.0 - a / r * (1.0 - cd);
    let x = vec3::add(vec3::scale(state.x, f), vec3::scale(v0, g));
    let v = vec3::add(vec3::scale(state.x, fdot), vec3::scale(v0, gdot));
    Ok((x, vec3::scale(v, state.m)))
}

/// Whether the straight step from `a` to `b` runs through the origin, up to
/// a small fraction of the shorter endpoint radius.
fn steps_through_origin(a: Vec3, b: Vec3) -> bool {
    if vec3::dot(a, b) >= 0.0 {
        return false;
    }
    let d = vec3::sub(b, a);
    let closest = vec3::norm(vec3::cross(a, d)) / vec3::norm(d);
    closest < COLLISION_FRACTION * vec3::norm(a).min(vec3::norm(b))
}

/// Relative miss distance below which a step counts as a collision.
pub const COLLISION_FRACTION: f64 = 1e-3;

fn acceleration(x: Vec3, gamma_over_m: f64) -> Vec3 {
    let r = vec3::norm(x);
    vec3::scale(x, -gamma_over_m / (r * r * r))
}

/// Classic RK4 on `𝕏′ = 𝕐/m`, `𝕐′ = −γ𝕏/‖𝕏‖³` with `n_steps` equal steps.
/// Stops and sets `diverged` on a non-finite state or a step that passes
/// through the origin.
pub fn direct_kepler_oracle(
    initial: &KeplerState,
    t_end: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    if !(initial.radius() > 0.0) || !initial.is_finite() {
        return Err(Error::Domain("initial state is a collision"));
    }
    if !(t_end > 0.0) || n_steps == 0 {
        return Err(Error::InvalidArgument("need t_end > 0 and n_steps > 0"));
    }
    let m = initial.m;
    let g = initial.gamma;
    let dt = t_end / n_steps as f64;
    let deriv = |x: Vec3, v: Vec3| (v, acceleration(x, g));
    let mut x = initial.x;
    let mut v = vec3::scale(initial.y, 1.0 / m);
    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(sample_of(0.0, 0.0, *initial)?);
    let mut diverged = false;
    for j in 1..=n_steps {
        let (k1x, k1v) = deriv(x, v);
        let (k2x, k2v) = deriv(
            vec3::add(x, vec3::scale(k1x, dt / 2.0)),
            vec3::add(v, vec3::scale(k1v, dt / 2.0)),
        );
        let (k3x, k3v) = deriv(
            vec3::add(x, vec3::scale(k2x, dt / 2.0)),
            vec3::add(v, vec3::scale(k2v, dt / 2.0)),
        );
        let (k4x, k4v) = deriv(
            vec3::add(x, vec3::scale(k3x, dt)),
            vec3::add(v, vec3::scale(k3v, dt)),
        );
        let combine = |a: Vec3, b: Vec3, c: Vec3, d: Vec3| {
            vec3::scale(
                vec3::add(
                    vec3::add(a, vec3::scale(b, 2.0)),
                    vec3::add(vec3::scale(c, 2.0), d),
                ),
                dt / 6.0,
            )
        };
        let x_old = x;
        x = vec3::add(x, combine(k1x, k2x, k3x, k4x));
        v = vec3::add(v, combine(k1v, k2v, k3v, k4v));
        let state = KeplerState {
            x,
            y: vec3::scale(v, m),
            ..*initial
        };
        if !state.is_finite() || !(state.radius() > 0.0) || steps_through_origin(x_old, x) {
            diverged = true;
            break;
        }
        let t = j as f64 * dt;
        samples.push(sample_of(t, t, state)?);
    }
    Ok(Trajectory {
        regime: None,
        k: initial.k,
        samples,
        events: Vec::new(),
        diverged,
        max_linear_speed: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_of_unit_circle() {
        let s = KeplerState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 1.0, 1.0);
        assert!((kepler_period(&s).unwrap() - 2.0 * PI).abs() < 1e-14);
        let s = KeplerState::at_apoapsis(2.0, 0.7, 3.0, 5.0).unwrap();
        let expect = 2.0 * PI * (3.0f64 * 8.0 / 5.0).sqrt();
        assert!((kepler_period(&s).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn closed_form_returns_after_a_period() {
        for &e in &[0.0, 0.3, 0.9, 0.99] {
            let s = KeplerState::at_apoapsis(1.5, e, 1.0, 1.0).unwrap();
            let p = kepler_period(&s).unwrap();
            let (x, y) = kepler_propagate(&s, p).unwrap();
            assert!(vec3::max_abs_diff(x, s.x) < 1e-9, "e={e}");
            assert!(vec3::max_abs_diff(y, s.y) < 1e-8, "e={e}");
            let (x, _) = kepler_propagate(&s, 0.5 * p).unwrap();
            assert!((vec3::norm(x) - 1.5 * (1.0 - e)).abs() < 1e-9, "e={e}");
        }
    }

    #[test]
    fn rk4_energy_error_is_fourth_order() {
        let s = KeplerState::at_apoapsis(1.0, 0.3, 1.0, 1.0).unwrap();
        let t = kepler_period(&s).unwrap();
        let err = |n: usize| {
            let tr = direct_kepler_oracle(&s, t, n).unwrap();
            (tr.samples.last().unwrap().h - s.hamiltonian()).abs()
        };
        let ratio = err(200) / err(400);
        assert!(ratio > 12.0 && ratio < 40.0, "ratio {ratio}");
    }

    #[test]
    fn rk4_matches_closed_form() {
        let s = KeplerState::at_apoapsis(1.0, 0.1, 1.0, 1.0).unwrap();
        let t = kepler_period(&s).unwrap();
        let tr = direct_kepler_oracle(&s, t, 20_000).unwrap();
        let (x, _) = kepler_propagate(&s, t).unwrap();
        assert!(vec3::max_abs_diff(tr.samples.last().unwrap().state.x, x) < 1e-9);
    }
}
