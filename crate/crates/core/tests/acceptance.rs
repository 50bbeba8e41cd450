//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use keplerreg_core::dynamics::{
    change_variables_zero, direct_kepler_oracle, free_potential_form, free_to_cotangent,
    kepler_period, propagate_physical, FreeState, Regime,
};
use keplerreg_core::ks::{
    calibrate_k, canonical_potential, collision_extraction, ks_pi, lift, linearized_hamiltonian,
    linearized_runge_lenz, momentum_map, runge_lenz, to_physical, EnergySign, KeplerState,
};
use keplerreg_core::phasespace::{
    momentum_map_polynomials, sample_constraint_point, structure_table, SymplecticSignature,
};
use keplerreg_core::quantum::{
    casimir_check, commutator_table, constraint_kernel, hydrogen_spectrum_neg, subalgebra_table,
    Representation, SparseOperator,
};
use keplerreg_core::spinor::{CotangentPoint, Spinor};
use keplerreg_core::vec3;
use keplerreg_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPECTRUM_TOL: f64 = 1e-12;
const SPECTRUM_RUNTIME_S: f64 = 10.0;
const OPERATOR_TOL: f64 = 1e-12;
const CLOSURE_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-12;
const LINEARIZED_TOL: f64 = 1e-12;
const SHELL_TOL: f64 = 1e-12;
const PULLBACK_TOL: f64 = 1e-9;
const CASIMIR_TOL: f64 = 1e-10;
const CASIMIR_NEGATIVE_MIN: f64 = 1e-3;
const DRIFT_TOL: f64 = 1e-12;
const PERIOD_TOL: f64 = 1e-6;
const DRIFT_RATIO_MIN: f64 = 1e3;

const N_POINTS: u64 = 120;
const QUANTUM_CUTOFF: usize = 6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn hydrogen() -> Outcome {
    let start = Instant::now();
    let lines = match hydrogen_spectrum_neg(10, 1.0, 1.0) {
        Ok(l) => l,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let secs = start.elapsed().as_secs_f64();
    let mut worst: f64 = 0.0;
    let mut degs = Vec::new();
    for n in 1..=5u32 {
        match lines.iter().find(|l| l.n == n) {
            Some(l) => {
                worst = worst.max((l.energy + 1.0 / (2.0 * f64::from(n * n))).abs());
                degs.push(l.degeneracy);
            }
            None => return outcome(false, format!("level {n} missing")),
        }
    }
    let pass = worst < SPECTRUM_TOL && degs == [1, 4, 9, 16, 25] && secs < SPECTRUM_RUNTIME_S;
    outcome(
        pass,
        format!("max |E - E_n| = {worst:.2e}, degeneracies {degs:?}, {secs:.2} s"),
    )
}

fn square_sum(ops: &[&SparseOperator]) -> SparseOperator {
    let mut acc = SparseOperator::zero(ops[0].basis());
    for op in ops {
        acc = acc.add(&op.mul(op).unwrap()).unwrap();
    }
    acc
}

fn su2_identity() -> Outcome {
    let rep = Representation::new(Regime::Neg, 10);
    let kernel = constraint_kernel(&rep.constraint().unwrap()).unwrap();
    let j = rep.operator("J").unwrap();
    let id = SparseOperator::identity(rep.basis());
    let target = j.mul(&j).unwrap().scale(Complex64::new(0.25, 0.0)).combine(
        Complex64::new(1.0, 0.0),
        &id,
        Complex64::new(-0.25, 0.0),
    );
    let target = target.unwrap();
    let mut worst: f64 = 0.0;
    for names in [["M1", "M2", "M3"], ["N1", "N2", "N3"]] {
        let ops: Vec<SparseOperator> = names.iter().map(|n| rep.operator(n).unwrap()).collect();
        let sq = square_sum(&ops.iter().collect::<Vec<_>>());
        worst = worst.max(kernel.residual(&sq.sub(&target).unwrap()));
    }
    outcome(
        worst < OPERATOR_TOL,
        format!(
            "||M^2 - J^2/4 + 1/4||, ||N^2 - J^2/4 + 1/4|| <= {worst:.2e} on {} kernel states",
            kernel.safe_indices().len()
        ),
    )
}

fn closure(regime: Regime) -> Outcome {
    let rep = Representation::new(regime, QUANTUM_CUTOFF);
    let ops = rep.subalgebra_generators().unwrap();
    let report = commutator_table(&ops).unwrap();
    let dev = report
        .table
        .max_deviation(&subalgebra_table(regime), Complex64::new(1.0, 0.0))
        .unwrap();
    outcome(
        dev < CLOSURE_TOL && report.residual < CLOSURE_TOL,
        format!(
            "table deviation {dev:.2e}, fit residual {:.2e}",
            report.residual
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let classical = structure_table(
        &momentum_map_polynomials(),
        &SymplecticSignature::linearizing(),
    )
    .unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for regime in [Regime::Neg, Regime::Pos, Regime::Zero] {
        let rep = Representation::new(regime, QUANTUM_CUTOFF);
        let report = commutator_table(&rep.momentum_map().unwrap()).unwrap();
        let dev = report
            .table
            .max_deviation(&classical, Complex64::i())
            .unwrap();
        pass &= dev < ORACLE_TOL && report.residual < ORACLE_TOL;
        parts.push(format!(
            "{}: {dev:.2e} (fit {:.2e})",
            regime.name(),
            report.residual
        ));
    }
    outcome(
        pass,
        format!("max |[X,Y] - i{{X,Y}}|: {}", parts.join(", ")),
    )
}

fn linearized_quantities() -> Outcome {
    let (m, gamma) = (1.7, 0.8);
    let (mut dh, mut drl, mut dl) = (0.0f64, 0.0f64, 0.0f64);
    let mut tested = 0;
    for seed in 0..N_POINTS {
        let p = sample_constraint_point(seed);
        let mm = momentum_map(&p);
        let mut signs = vec![EnergySign::Neg];
        if -mm.p[0] > 0.0 {
            signs.push(EnergySign::Pos);
        }
        for sign in signs {
            let k = calibrate_k(&mm, m, gamma, sign).unwrap();
            let st = to_physical(&mm, m, gamma, k).unwrap();
            let h_lin = linearized_hamiltonian(&mm, m, gamma, k).unwrap();
            dh = dh.max((h_lin - st.hamiltonian()).abs());
            let rl = linearized_runge_lenz(&mm, m, gamma, k).unwrap();
            drl = drl.max(vec3::max_abs_diff(rl, runge_lenz(&st).unwrap()));
            dl = dl.max(vec3::max_abs_diff(st.angular_momentum(), mm.angular()));
            tested += 1;
        }
    }
    outcome(
        dh < LINEARIZED_TOL && drl < LINEARIZED_TOL && dl < LINEARIZED_TOL,
        format!("{tested} evaluations: H {dh:.2e}, RL {drl:.2e}, L {dl:.2e}"),
    )
}

fn energy_shell() -> Outcome {
    let (m, gamma) = (1.7, 0.8);
    let (mut neg, mut pos) = (0.0f64, 0.0f64);
    let mut n_pos = 0;
    for seed in 0..N_POINTS {
        let mm = momentum_map(&sample_constraint_point(seed));
        let k = calibrate_k(&mm, m, gamma, EnergySign::Neg).unwrap();
        let h = to_physical(&mm, m, gamma, k).unwrap().hamiltonian();
        neg = neg.max((h + m * gamma * gamma / (2.0 * mm.j * mm.j)).abs());
        if -mm.p[0] > 0.0 {
            let k = calibrate_k(&mm, m, gamma, EnergySign::Pos).unwrap();
            let h = to_physical(&mm, m, gamma, k).unwrap().hamiltonian();
            pos = pos.max((h - m * gamma * gamma / (2.0 * mm.p[0] * mm.p[0])).abs());
            n_pos += 1;
        }
    }
    outcome(
        neg < SHELL_TOL && pos < SHELL_TOL && n_pos > 0,
        format!("negative {neg:.2e}, positive {pos:.2e} ({n_pos} points with -P0 > 0)"),
    )
}

fn random_spinor(rng: &mut ChaCha8Rng) -> Spinor {
    let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    [c(), c()]
}

fn shifted(p: &CotangentPoint, dz: &Spinor, dw: &Spinor, h: f64) -> CotangentPoint {
    CotangentPoint::new(
        [p.z[0] + dz[0] * h, p.z[1] + dz[1] * h],
        [p.w[0] + dw[0] * h, p.w[1] + dw[1] * h],
    )
}

fn free_shift(s: &FreeState, d: &FreeState, h: f64) -> FreeState {
    let f = |a: [f64; 2], b: [f64; 2]| [a[0] + h * b[0], a[1] + h * b[1]];
    FreeState {
        a: f(s.a, d.a),
        b: f(s.b, d.b),
        big_a: f(s.big_a, d.big_a),
        big_b: f(s.big_b, d.big_b),
        lambda: s.lambda,
    }
}

fn pullbacks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = 1e-5;
    let (mut ks, mut free) = (0.0f64, 0.0f64);
    for _ in 0..N_POINTS {
        // Base points on Re⟨z,w⟩ = 0, reached through the lift.
        let x = [
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        ];
        let y = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let st = KeplerState::new(x, y, 1.0, 1.0, 1.0);
        let p = collision_extraction(&lift(&st).unwrap());
        let (dz, dw) = (random_spinor(&mut rng), random_spinor(&mut rng));
        let (xp, _) = ks_pi(&shifted(&p, &dz, &dw, h)).unwrap();
        let (xm, _) = ks_pi(&shifted(&p, &dz, &dw, -h)).unwrap();
        let (_, y0) = ks_pi(&p).unwrap();
        let dx = vec3::scale(vec3::sub(xp, xm), 0.5 / h);
        ks = ks.max((vec3::dot(y0, dx) - canonical_potential(&p, &dz)).abs());

        // Zero-energy chart: the free form and 2Im⟨w,dz⟩ share an exterior
        // derivative, checked on pairs of constant vector fields.
        let s = change_variables_zero(&p);
        let u = change_variables_zero(&CotangentPoint::new(
            random_spinor(&mut rng),
            random_spinor(&mut rng),
        ));
        let v = change_variables_zero(&CotangentPoint::new(
            random_spinor(&mut rng),
            random_spinor(&mut rng),
        ));
        let d_free = |a: &FreeState, b: &FreeState| {
            (free_potential_form(&free_shift(&s, a, h), b)
                - free_potential_form(&free_shift(&s, a, -h), b))
                / (2.0 * h)
        };
        let d_canon = |a: &FreeState, b: &FreeState| {
            let dzb = free_to_cotangent(b).z;
            (canonical_potential(&free_to_cotangent(&free_shift(&s, a, h)), &dzb)
                - canonical_potential(&free_to_cotangent(&free_shift(&s, a, -h)), &dzb))
                / (2.0 * h)
        };
        let omega_free = d_free(&u, &v) - d_free(&v, &u);
        let omega_canon = d_canon(&u, &v) - d_canon(&v, &u);
        free = free.max((omega_free - omega_canon).abs());
    }
    outcome(
        ks < PULLBACK_TOL && free < PULLBACK_TOL,
        format!("Y.dX vs 2Im<w,dz>: {ks:.2e}; d(free form) vs d(2Im<w,dz>): {free:.2e}"),
    )
}

fn casimir() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for regime in [Regime::Neg, Regime::Pos, Regime::Zero] {
        let rep = Representation::new(regime, QUANTUM_CUTOFF);
        let ops = rep.momentum_map().unwrap();
        let table = commutator_table(&ops).unwrap().table;
        let kernel = constraint_kernel(&rep.constraint().unwrap()).unwrap();
        let on_kernel = casimir_check(&ops, &table, &kernel.safe_indices()).unwrap();
        pass &= on_kernel.residual < CASIMIR_TOL;
        parts.push(format!(
            "{} kernel {:.2e}",
            regime.name(),
            on_kernel.residual
        ));
        if regime == Regime::Neg {
            let all: Vec<usize> = (0..rep.basis().safe_dim()).collect();
            let full = casimir_check(&ops, &table, &all).unwrap();
            pass &= full.residual > CASIMIR_NEGATIVE_MIN;
            parts.push(format!("neg unconstrained {:.2e}", full.residual));
        }
    }
    outcome(pass, parts.join(", "))
}

fn propagation() -> Outcome {
    let circular = KeplerState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 1.0, 1.0);
    let tr = propagate_physical(&circular, Regime::Neg, 10_000, 2.0 * PI / 10_000.0).unwrap();
    let d = tr.drift();
    let drift = d.h.max(d.l).max(d.rl);

    let ellipse = KeplerState::at_apoapsis(1.3, 0.6, 1.0, 1.0).unwrap();
    let n = 100_000;
    let tr = propagate_physical(&ellipse, Regime::Neg, n, PI / n as f64).unwrap();
    let period_err = (tr.final_time() - kepler_period(&ellipse).unwrap()).abs();

    let eccentric = KeplerState::at_apoapsis(1.0, 0.99, 1.0, 1.0).unwrap();
    let steps = 2000;
    let reg = propagate_physical(&eccentric, Regime::Neg, steps, PI / steps as f64).unwrap();
    let rk = direct_kepler_oracle(&eccentric, kepler_period(&eccentric).unwrap(), steps).unwrap();
    let h0 = eccentric.hamiltonian().abs();
    let floor = f64::EPSILON * h0;
    let reg_drift = reg.drift().h;
    let rk_drift = if rk.diverged {
        f64::INFINITY
    } else {
        rk.drift().h
    };
    let ratio = rk_drift / reg_drift.max(floor);
    outcome(
        drift < DRIFT_TOL && period_err < PERIOD_TOL && ratio >= DRIFT_RATIO_MIN,
        format!(
            "circular drift {drift:.2e}; period error {period_err:.2e}; e=0.99 with {steps} steps: RK4 drift {rk_drift:.2e}, regularized {reg_drift:.2e}, ratio {ratio:.2e}"
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("hydrogen spectrum", hydrogen),
        ("su(2) x su(2) identity", su2_identity),
        ("Lorentz closure", || closure(Regime::Pos)),
        ("e(3) closure", || closure(Regime::Zero)),
        ("oracle equivalence", oracle_equivalence),
        ("linearized quantities", linearized_quantities),
        ("energy shell", energy_shell),
        ("pullback identities", pullbacks),
        ("Casimir constancy", casimir),
        ("propagation", propagation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
