//! `benchmark`: regularized propagation against a direct RK4 integrator on
//! orbits of increasing eccentricity.

use std::f64::consts::PI;
use std::time::Instant;

use keplerreg_core::dynamics::{
    direct_kepler_oracle, kepler_period, kepler_propagate, propagate_physical, Regime, Trajectory,
};
use keplerreg_core::ks::KeplerState;
use keplerreg_core::vec3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::output::to_json;
use crate::{emit, CliError, RunConfig};

pub const THREADS_ENV: &str = "KEPLERREG_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub energy_drift: f64,
    pub relative_energy_drift: f64,
    /// Largest distance from the closed-form position over the samples.
    pub position_error: f64,
    pub diverged: bool,
    /// Wall-clock time per step; the only nondeterministic field.
    pub ns_per_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub eccentricity: f64,
    pub semi_major_axis: f64,
    pub steps: usize,
    pub period: f64,
    pub regularized: MethodResult,
    pub rk4: MethodResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub config: RunConfig,
    pub scenarios: Vec<Scenario>,
    /// RK4 energy drift grows with the eccentricity.
    pub rk4_drift_monotone: bool,
    pub regularized_drift_max: f64,
}

fn method_result(
    initial: &KeplerState,
    tr: &Trajectory,
    nanos: f64,
    steps: usize,
) -> keplerreg_core::Result<MethodResult> {
    let mut position_error: f64 = 0.0;
    for s in &tr.samples {
        let (x, _) = kepler_propagate(initial, s.t)?;
        position_error = position_error.max(vec3::norm(vec3::sub(s.state.x, x)));
    }
    let h0 = initial.hamiltonian();
    let drift = if tr.diverged {
        f64::INFINITY
    } else {
        tr.drift().h
    };
    Ok(MethodResult {
        energy_drift: drift,
        relative_energy_drift: drift / h0.abs(),
        position_error: if tr.diverged {
            f64::INFINITY
        } else {
            position_error
        },
        diverged: tr.diverged,
        ns_per_step: nanos / steps as f64,
    })
}

pub fn scenario(e: f64, config: &RunConfig) -> keplerreg_core::Result<Scenario> {
    let a = 1.0;
    let initial = KeplerState::at_apoapsis(a, e, config.m, config.gamma)?;
    let n = config.n_steps;
    let period = kepler_period(&initial)?;

    let start = Instant::now();
    let reg = propagate_physical(&initial, Regime::Neg, n, PI / n as f64)?;
    let reg_ns = start.elapsed().as_nanos() as f64;

    let start = Instant::now();
    let rk = direct_kepler_oracle(&initial, period, n)?;
    let rk_ns = start.elapsed().as_nanos() as f64;

    Ok(Scenario {
        eccentricity: e,
        semi_major_axis: a,
        steps: n,
        period,
        regularized: method_result(&initial, &reg, reg_ns, n)?,
        rk4: method_result(&initial, &rk, rk_ns, n)?,
    })
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))
        })?;
        if n == 0 {
            return Err(CliError::Usage(format!("{THREADS_ENV} must be positive")));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Other(e.into()))
}

pub fn report(config: &RunConfig) -> Result<BenchmarkReport, CliError> {
    let pool = thread_pool()?;
    let scenarios = pool
        .install(|| {
            config
                .eccentricities
                .par_iter()
                .map(|&e| scenario(e, config))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(|e| CliError::Other(e.into()))?;
    let rk4_drift_monotone = scenarios
        .windows(2)
        .all(|w| w[1].rk4.energy_drift >= w[0].rk4.energy_drift);
    let regularized_drift_max = scenarios
        .iter()
        .map(|s| s.regularized.energy_drift)
        .fold(0.0, f64::max);
    Ok(BenchmarkReport {
        config: config.clone(),
        scenarios,
        rk4_drift_monotone,
        regularized_drift_max,
    })
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let r = report(config)?;
    emit(config.out.as_deref(), &to_json(&r)?)
}
