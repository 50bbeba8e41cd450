//! Closed-form flows of the regularized Kepler problem in its three energy
//! regimes, the centrally extended group laws behind them, physical-time
//! recovery, and a direct integrator used as a baseline.

mod charts;
mod group;
mod kepler;
mod propagate;

pub use charts::{
    change_variables_positive, change_variables_zero, flow_free, flow_harmonic, flow_parabolic,
    flow_repulsive, free_potential_form, free_to_cotangent, oscillator_to_spinor,
    positive_to_spinor, spinor_to_oscillator, FreeState, OscillatorState, RepulsiveState,
    DEFAULT_MAX_REPULSIVE_STEP, NEG_P0_PER_ALPHA_NU,
};
pub use group::{FreeElement, HarmonicElement, RepulsiveElement};
pub use kepler::{direct_kepler_oracle, kepler_period, kepler_propagate};
pub use propagate::{
    propagate_physical, ConservationDrift, Regime, Trajectory, TrajectoryEvent, TrajectorySample,
    ZERO_ENERGY_TOLERANCE,
};
