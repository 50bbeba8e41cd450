//! Physical trajectories obtained by lifting, flowing exactly in fictitious
//! time and mapping back, with physical time recovered by quadrature.

use alloc::vec::Vec;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::charts::{
    change_variables_positive, change_variables_zero, flow_harmonic, flow_parabolic,
    flow_repulsive, free_to_cotangent, oscillator_to_spinor, positive_to_spinor,
    spinor_to_oscillator, DEFAULT_MAX_REPULSIVE_STEP,
};
use crate::ks::{
    collision_extraction, collision_injection, lift, momentum_map, runge_lenz, to_physical,
    KeplerState,
};
use crate::spinor::SpinorPoint;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Relative size of `ℋ` (against the kinetic and potential terms) below
/// which a state counts as zero-energy.
pub const ZERO_ENERGY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Neg,
    Pos,
    Zero,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Neg => "neg",
            Regime::Pos => "pos",
            Regime::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// Fictitious time for regularized runs, physical time for the oracle.
    pub s: f64,
    pub t: f64,
    pub state: KeplerState,
    pub h: f64,
    pub l: Vec3,
    pub rl: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TrajectoryEvent {
    /// Local minimum of the radius over the sample grid.
    Perihelion { s: f64, t: f64, r: f64 },
    /// Node where the physical chart is singular; no sample is emitted.
    Collision { s: f64, t: f64 },
}

/// Largest deviation of each conserved quantity from its first sample.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ConservationDrift {
    pub h: f64,
    pub l: f64,
    pub rl: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `None` for the direct integrator.
    pub regime: Option<Regime>,
    pub k: f64,
    pub samples: Vec<TrajectorySample>,
    pub events: Vec<TrajectoryEvent>,
    /// Set when the direct integrator met a collision or a non-finite state.
    pub diverged: bool,
    /// Largest `‖Δ(η, ζ)‖ / Δs` between consecutive nodes (regularized runs).
    pub max_linear_speed: f64,
}

impl Trajectory {
    pub fn drift(&self) -> ConservationDrift {
        let Some(first) = self.samples.first() else {
            return ConservationDrift::default();
        };
        self.samples
            .iter()
            .fold(ConservationDrift::default(), |d, smp| ConservationDrift {
                h: d.h.max((smp.h - first.h).abs()),
                l: d.l.max(vec3::max_abs_diff(smp.l, first.l)),
                rl: d.rl.max(vec3::max_abs_diff(smp.rl, first.rl)),
            })
    }

    pub fn final_time(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }
}

pub(crate) fn sample_of(s: f64, t: f64, state: KeplerState) -> Result<TrajectorySample> {
    Ok(TrajectorySample {
        s,
        t,
        h: state.hamiltonian(),
        l: state.angular_momentum(),
        rl: runge_lenz(&state)?,
        state,
    })
}

fn point_distance(a: &SpinorPoint, b: &SpinorPoint) -> f64 {
    let d: f64 = a
        .eta
        .iter()
        .chain(&a.zeta)
        .zip(b.eta.iter().chain(&b.zeta))
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Float::sqrt(d)
}

/// Calibrates `k` from the energy, lifts `initial`, and samples the exact
/// flow at `s_j = j·dlambda`, `j = 0..=n_steps`.
///
/// Physical time follows `dt = (2√m/k) ‖𝕏‖ ds`, integrated exactly per step. In
/// the zero-energy regime `initial.k` sets the scale.
pub fn propagate_physical(
    initial: &KeplerState,
    regime: Regime,
    n_steps: usize,
    dlambda: f64,
) -> Result<Trajectory> {
    if !initial.is_finite() || !(dlambda > 0.0) || !dlambda.is_finite() {
        return Err(Error::InvalidArgument(
            "need a finite state and a positive finite step",
        ));
    }
    let (m, gamma) = (initial.m, initial.gamma);
    if !(m > 0.0 && gamma > 0.0) {
        return Err(Error::InvalidArgument("m and gamma must be positive"));
    }
    let r0 = initial.radius();
    if !(r0 > 0.0) {
        return Err(Error::Domain("initial state is a collision"));
    }
    let h = initial.hamiltonian();
    let scale = vec3::dot(initial.y, initial.y) / (2.0 * m) + gamma / r0;
    let k = match regime {
        Regime::Neg if h < 0.0 => Float::sqrt(-2.0 * h),
        Regime::Pos if h > 0.0 => Float::sqrt(2.0 * h),
        Regime::Zero if h.abs() <= ZERO_ENERGY_TOLERANCE * scale => initial.k,
        Regime::Neg => return Err(Error::EnergySign("negative regime needs H < 0")),
        Regime::Pos => return Err(Error::EnergySign("positive regime needs H > 0")),
        Regime::Zero => return Err(Error::EnergySign("zero regime needs H = 0")),
    };
    let start = lift(&KeplerState { k, ..*initial })?;
    let s_total = n_steps as f64 * dlambda;
    if regime == Regime::Pos && s_total > DEFAULT_MAX_REPULSIVE_STEP {
        return Err(Error::FlowOverflow {
            step: s_total,
            bound: DEFAULT_MAX_REPULSIVE_STEP,
        });
    }

    let oscillator = spinor_to_oscillator(&start, 0.0);
    let repulsive = change_variables_positive(&start);
    let free = change_variables_zero(&collision_extraction(&start));
    let point_at = |s: f64| -> Result<SpinorPoint> {
        Ok(match regime {
            Regime::Neg => oscillator_to_spinor(&flow_harmonic(&oscillator, -s)),
            Regime::Pos => {
                positive_to_spinor(&flow_repulsive(&repulsive, s, DEFAULT_MAX_REPULSIVE_STEP)?)
            }
            Regime::Zero => collision_injection(&free_to_cotangent(&flow_parabolic(&free, s))),
        })
    };

    let time_factor = 2.0 * Float::sqrt(m) / k;
    let radius_factor = 1.0 / (Float::sqrt(m) * k);
    let radius_of = |p: &SpinorPoint| {
        let mm = momentum_map(p);
        vec3::norm(vec3::sub(mm.q_vec(), mm.r_prime())) * radius_factor
    };
    let weight = curvature_weight(regime, dlambda);
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut events = Vec::new();
    let mut radii = Vec::with_capacity(n_steps + 1);
    let mut nodes = Vec::with_capacity(n_steps + 1);
    let mut t = 0.0;
    let mut prev: Option<(SpinorPoint, f64)> = None;
    let mut max_speed = 0.0f64;
    for j in 0..=n_steps {
        let s = j as f64 * dlambda;
        let p = if j == 0 { start } else { point_at(s)? };
        let mm = momentum_map(&p);
        let r = radius_of(&p);
        if let Some((pp, pr)) = prev {
            let mid = radius_of(&point_at(s - 0.5 * dlambda)?);
            t += time_factor * (mid * dlambda + (pr + r - 2.0 * mid) * weight);
            max_speed = max_speed.max(point_distance(&p, &pp) / dlambda);
        }
        prev = Some((p, r));
        radii.push(r);
        nodes.push((s, t));
        let state = if j == 0 {
            Ok(*initial)
        } else {
            to_physical(&mm, m, gamma, k).map(|st| KeplerState { k: initial.k, ..st })
        };
        match state {
            Ok(state) => samples.push(sample_of(s, t, state)?),
            Err(Error::Collision | Error::SingularChart) => {
                events.push(TrajectoryEvent::Collision { s, t })
            }
            Err(e) => return Err(e),
        }
    }
    for j in 1..radii.len().saturating_sub(1) {
        if radii[j - 1] > radii[j] && radii[j] <= radii[j + 1] && radii[j] > 0.0 {
            let (s, t) = nodes[j];
            events.push(TrajectoryEvent::Perihelion { s, t, r: radii[j] });
        }
    }
    events.sort_by(|a, b| event_s(a).total_cmp(&event_s(b)));
    Ok(Trajectory {
        regime: Some(regime),
        k,
        samples,
        events,
        diverged: false,
        max_linear_speed: max_speed,
    })
}

/// Along each flow `‖𝕏‖(s)` lies in `span{1, cos 2s, sin 2s}` (negative
/// energy), `span{1, cosh 2s, sinh 2s}` (positive) or `span{1, s, s²}` (zero),
/// so the integral over a step is exact given the endpoint and midpoint
/// values: `∫ = h·r_mid + w·(r_0 + r_1 − 2r_mid)`, where `w` is returned here.
fn curvature_weight(regime: Regime, h: f64) -> f64 {
    if regime == Regime::Zero {
        return h / 6.0;
    }
    let sign = if regime == Regime::Neg { 1.0 } else { -1.0 };
    if h < 1e-2 {
        return h / 6.0 * (1.0 + sign * h * h / 30.0);
    }
    match regime {
        Regime::Neg => (h - Float::sin(h)) / (4.0 * Float::powi(Float::sin(0.5 * h), 2)),
        _ => (Float::sinh(h) - h) / (4.0 * Float::powi(Float::sinh(0.5 * h), 2)),
    }
}

fn event_s(e: &TrajectoryEvent) -> f64 {
    match *e {
        TrajectoryEvent::Perihelion { s, .. } | TrajectoryEvent::Collision { s, .. } => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn circular_orbit_is_conserved() {
        let init = KeplerState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 1.0, 1.0);
        let tr = propagate_physical(&init, Regime::Neg, 10_000, 2.0 * PI / 10_000.0).unwrap();
        assert_eq!(tr.samples.len(), 10_001);
        let d = tr.drift();
        assert!(d.h < 1e-12 && d.l < 1e-12 && d.rl < 1e-12, "{d:?}");
        assert!(tr
            .samples
            .windows(2)
            .all(|w| w[0].s < w[1].s && w[0].t <= w[1].t));
    }

    #[test]
    fn one_period_in_fictitious_time() {
        let init = KeplerState::at_apoapsis(1.0, 0.5, 1.0, 1.0).unwrap();
        let n = 100_000;
        let tr = propagate_physical(&init, Regime::Neg, n, PI / n as f64).unwrap();
        let last = tr.samples.last().unwrap();
        assert!((last.t - 2.0 * PI).abs() < 1e-6);
        assert!(vec3::max_abs_diff(last.state.x, init.x) < 1e-9);
        assert!(tr
            .events
            .iter()
            .any(|e| matches!(e, TrajectoryEvent::Perihelion { .. })));
    }

    #[test]
    fn energy_sign_is_checked() {
        let bound = KeplerState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 1.0, 1.0);
        assert!(matches!(
            propagate_physical(&bound, Regime::Pos, 10, 0.1),
            Err(Error::EnergySign(_))
        ));
        assert!(matches!(
            propagate_physical(&bound, Regime::Zero, 10, 0.1),
            Err(Error::EnergySign(_))
        ));
        let free = KeplerState::new([1.0, 0.0, 0.0], [0.0, 2.0, 0.0], 1.0, 1.0, 1.0);
        assert!(matches!(
            propagate_physical(&free, Regime::Neg, 10, 0.1),
            Err(Error::EnergySign(_))
        ));
    }

    #[test]
    fn hyperbolic_and_parabolic_orbits_are_conserved() {
        let hyp = KeplerState::new([1.0, 0.0, 0.0], [0.3, 2.0, 0.1], 1.0, 1.0, 1.0);
        let tr = propagate_physical(&hyp, Regime::Pos, 2000, 1e-3).unwrap();
        let d = tr.drift();
        assert!(d.h < 1e-12 && d.l < 1e-12 && d.rl < 1e-11, "{d:?}");
        let v = Float::sqrt(2.0f64);
        let par = KeplerState::new([1.0, 0.0, 0.0], [0.0, v, 0.0], 1.0, 1.0, 1.0);
        let tr = propagate_physical(&par, Regime::Zero, 2000, 1e-3).unwrap();
        let d = tr.drift();
        assert!(d.h < 1e-12 && d.l < 1e-12 && d.rl < 1e-12, "{d:?}");
        assert!(tr.samples.last().unwrap().state.radius() > 1.0);
    }

    #[test]
    fn physical_time_is_exact_on_coarse_grids() {
        let ellipse = KeplerState::at_apoapsis(1.3, 0.8, 1.0, 1.0).unwrap();
        let tr = propagate_physical(&ellipse, Regime::Neg, 8, PI / 8.0).unwrap();
        let period = crate::dynamics::kepler_period(&ellipse).unwrap();
        assert!((tr.final_time() - period).abs() < 1e-12 * period);

        let v = Float::sqrt(2.0f64);
        for (st, regime) in [
            (
                KeplerState::new([1.0, 0.0, 0.0], [0.3, 2.0, 0.1], 1.0, 1.0, 1.0),
                Regime::Pos,
            ),
            (
                KeplerState::new([1.0, 0.0, 0.0], [0.0, v, 0.0], 1.0, 1.0, 1.0),
                Regime::Zero,
            ),
        ] {
            let coarse = propagate_physical(&st, regime, 4, 0.25)
                .unwrap()
                .final_time();
            let fine = propagate_physical(&st, regime, 4096, 1.0 / 4096.0)
                .unwrap()
                .final_time();
            assert!(
                (coarse - fine).abs() < 1e-12 * fine,
                "{regime:?}: {coarse} vs {fine}"
            );
        }
    }
}
