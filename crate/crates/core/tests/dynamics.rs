use std::f64::consts::PI;

use keplerreg_core::dynamics::{
    change_variables_zero, direct_kepler_oracle, kepler_period, kepler_propagate,
    propagate_physical, Regime, TrajectoryEvent,
};
use keplerreg_core::ks::{collision_extraction, lift, momentum_map, KeplerState};
use keplerreg_core::quantum::zero_energy_sphere_radius_sq;
use keplerreg_core::vec3;

#[test]
fn regularized_and_direct_agree_on_low_eccentricity() {
    let s = KeplerState::at_apoapsis(1.0, 0.1, 1.0, 1.0).unwrap();
    let n = 4000;
    let reg = propagate_physical(&s, Regime::Neg, n, PI / n as f64).unwrap();
    let end = reg.samples.last().unwrap();
    let rk = direct_kepler_oracle(&s, end.t, 20_000).unwrap();
    let err = vec3::max_abs_diff(rk.samples.last().unwrap().state.x, end.state.x);
    assert!(err < 1e-6, "position error {err}");
}

#[test]
fn regularized_samples_follow_closed_form() {
    let s = KeplerState::at_apoapsis(2.0, 0.7, 1.5, 0.7).unwrap();
    let n = 20_000;
    let reg = propagate_physical(&s, Regime::Neg, n, PI / n as f64).unwrap();
    for smp in reg.samples.iter().step_by(997) {
        let (x, _) = kepler_propagate(&s, smp.t).unwrap();
        assert!(vec3::max_abs_diff(x, smp.state.x) < 1e-7, "t = {}", smp.t);
    }
    assert!((reg.final_time() - kepler_period(&s).unwrap()).abs() < 1e-8);
}

#[test]
fn eccentric_orbit_passes_perihelion_smoothly() {
    let s = KeplerState::at_apoapsis(1.0, 0.99, 1.0, 1.0).unwrap();
    let n = 2000;
    let reg = propagate_physical(&s, Regime::Neg, n, PI / n as f64).unwrap();
    let peri: Vec<_> = reg
        .events
        .iter()
        .filter_map(|e| match e {
            TrajectoryEvent::Perihelion { r, .. } => Some(*r),
            _ => None,
        })
        .collect();
    assert_eq!(peri.len(), 1);
    assert!((peri[0] - 0.01).abs() < 1e-4);
    // In fictitious time the lifted point moves on a circle of fixed radius.
    let radius = momentum_map(&lift(&KeplerState { k: reg.k, ..s }).unwrap()).j;
    assert!(reg.max_linear_speed <= 2.0 * radius.sqrt() * 1.0001);
    let max_speed = reg
        .samples
        .iter()
        .map(|p| vec3::norm(p.state.y))
        .fold(0.0, f64::max);
    assert!(max_speed > 10.0);
}

#[test]
fn zero_energy_lift_lies_on_the_sphere() {
    let (m, gamma, k) = (2.0, 0.5, 1.3);
    let v = (2.0 * gamma * m / 1.5f64).sqrt();
    let s = KeplerState::new([0.0, 1.5, 0.0], [-v * 0.6, 0.0, v * 0.8], m, gamma, k);
    assert!(s.hamiltonian().abs() < 1e-14);
    let free = change_variables_zero(&collision_extraction(&lift(&s).unwrap()));
    let sum = 2.0 * free.energy();
    assert!((sum - zero_energy_sphere_radius_sq(m, gamma, k).unwrap()).abs() < 1e-12);
}

#[test]
fn oracle_flags_collision() {
    let s = KeplerState::new([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], 1.0, 1.0, 1.0);
    let tr = direct_kepler_oracle(&s, 3.0, 64).unwrap();
    assert!(tr.diverged);
    assert!(tr.final_time() < 3.0);
}
