//! `verify`: numerical checks of the algebra, the charts and the quantum
//! representations, reported as JSON.

use keplerreg_core::dynamics::{
    change_variables_zero, free_potential_form, free_to_cotangent, FreeState, Regime,
};
use keplerreg_core::ks::{
    calibrate_k, canonical_potential, collision_extraction, ks_pi, lift, linearized_hamiltonian,
    linearized_runge_lenz, momentum_map, runge_lenz, to_physical, EnergySign, KeplerState,
};
use keplerreg_core::phasespace::{
    momentum_map_polynomials, sample_constraint_point, structure_table, SymplecticSignature,
};
use keplerreg_core::quantum::{
    casimir_check, commutator_table, constraint_kernel, subalgebra_table, Representation,
    SparseOperator,
};
use keplerreg_core::spinor::{CotangentPoint, Spinor};
use keplerreg_core::{vec3, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{emit, output, CliError, RunConfig};

pub const OPERATOR_TOL: f64 = 1e-12;
pub const CLASSICAL_TOL: f64 = 1e-12;
pub const PULLBACK_TOL: f64 = 1e-9;
pub const CASIMIR_TOL: f64 = 1e-10;
/// The Casimir must visibly fail to be scalar off the constraint.
pub const CASIMIR_OFF_SHELL_MIN: f64 = 1e-3;
pub const N_POINTS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Below,
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound,
            relation: Relation::Below,
            pass: value < bound,
        }
    }

    fn above(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound,
            relation: Relation::Above,
            pass: value > bound,
        }
    }

    fn error(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            value: f64::NAN,
            bound: 0.0,
            relation: Relation::Below,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub cutoff: usize,
    pub m: f64,
    pub gamma: f64,
    pub injected_sign_error: bool,
    pub checks: Vec<Check>,
    pub failed: Vec<String>,
    pub pass: bool,
}

const REGIMES: [Regime; 3] = [Regime::Neg, Regime::Pos, Regime::Zero];

fn oracle(cutoff: usize, out: &mut Vec<Check>) -> keplerreg_core::Result<()> {
    let classical = structure_table(
        &momentum_map_polynomials(),
        &SymplecticSignature::linearizing(),
    )?;
    for regime in REGIMES {
        let rep = Representation::new(regime, cutoff);
        let report = commutator_table(&rep.momentum_map()?)?;
        let dev = report.table.max_deviation(&classical, Complex64::i())?;
        out.push(Check::below(
            format!("oracle_{}", regime.name()),
            dev.max(report.residual),
            OPERATOR_TOL,
        ));
    }
    Ok(())
}

fn closure(cutoff: usize, inject: bool, out: &mut Vec<Check>) -> keplerreg_core::Result<()> {
    for regime in REGIMES {
        let rep = Representation::new(regime, cutoff);
        let mut ops = rep.subalgebra_generators()?;
        if inject {
            let last = ops.last_mut().expect("six generators");
            last.value = last.value.scale(Complex64::new(-1.0, 0.0));
        }
        let report = commutator_table(&ops)?;
        let dev = report
            .table
            .max_deviation(&subalgebra_table(regime), Complex64::new(1.0, 0.0))?;
        out.push(Check::below(
            format!("closure_{}", regime.name()),
            dev.max(report.residual),
            OPERATOR_TOL,
        ));
    }
    Ok(())
}

fn su2_identity(cutoff: usize, out: &mut Vec<Check>) -> keplerreg_core::Result<()> {
    let rep = Representation::new(Regime::Neg, cutoff);
    let kernel = constraint_kernel(&rep.constraint()?)?;
    let j = rep.operator("J")?;
    let quarter = Complex64::new(0.25, 0.0);
    let target = j.mul(&j)?.scale(quarter).combine(
        Complex64::new(1.0, 0.0),
        &SparseOperator::identity(rep.basis()),
        -quarter,
    )?;
    let mut worst: f64 = 0.0;
    for names in [["M1", "M2", "M3"], ["N1", "N2", "N3"]] {
        let mut sq = SparseOperator::zero(rep.basis());
        for n in names {
            let op = rep.operator(n)?;
            sq = sq.add(&op.mul(&op)?)?;
        }
        worst = worst.max(kernel.residual(&sq.sub(&target)?));
    }
    out.push(Check::below("su2_identity", worst, OPERATOR_TOL));
    Ok(())
}

fn casimir(cutoff: usize, out: &mut Vec<Check>) -> keplerreg_core::Result<()> {
    for regime in REGIMES {
        let rep = Representation::new(regime, cutoff);
        let ops = rep.momentum_map()?;
        let table = commutator_table(&ops)?.table;
        let kernel = constraint_kernel(&rep.constraint()?)?;
        let on = casimir_check(&ops, &table, &kernel.safe_indices())?;
        out.push(Check::below(
            format!("casimir_{}", regime.name()),
            on.residual,
            CASIMIR_TOL,
        ));
        if regime == Regime::Neg {
            let all: Vec<usize> = (0..rep.basis().safe_dim()).collect();
            let off = casimir_check(&ops, &table, &all)?;
            out.push(Check::above(
                "casimir_off_constraint_neg",
                off.residual,
                CASIMIR_OFF_SHELL_MIN,
            ));
        }
    }
    Ok(())
}

fn linearized_quantities(
    seed: u64,
    m: f64,
    gamma: f64,
    out: &mut Vec<Check>,
) -> keplerreg_core::Result<()> {
    let (mut dh, mut drl, mut dl, mut shell) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..N_POINTS {
        let mm = momentum_map(&sample_constraint_point(
            seed.wrapping_mul(N_POINTS).wrapping_add(i),
        ));
        let mut signs = vec![EnergySign::Neg];
        if -mm.p[0] > 0.0 {
            signs.push(EnergySign::Pos);
        }
        for sign in signs {
            let k = calibrate_k(&mm, m, gamma, sign)?;
            let st = to_physical(&mm, m, gamma, k)?;
            let h = st.hamiltonian();
            dh = dh.max((linearized_hamiltonian(&mm, m, gamma, k)? - h).abs());
            drl = drl.max(vec3::max_abs_diff(
                linearized_runge_lenz(&mm, m, gamma, k)?,
                runge_lenz(&st)?,
            ));
            dl = dl.max(vec3::max_abs_diff(st.angular_momentum(), mm.angular()));
            let shell_value = match sign {
                EnergySign::Neg => -m * gamma * gamma / (2.0 * mm.j * mm.j),
                _ => m * gamma * gamma / (2.0 * mm.p[0] * mm.p[0]),
            };
            shell = shell.max((h - shell_value).abs());
        }
    }
    out.push(Check::below("linearized_hamiltonian", dh, CLASSICAL_TOL));
    out.push(Check::below("linearized_runge_lenz", drl, CLASSICAL_TOL));
    out.push(Check::below(
        "linearized_angular_momentum",
        dl,
        CLASSICAL_TOL,
    ));
    out.push(Check::below("energy_shell", shell, CLASSICAL_TOL));
    Ok(())
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

fn pullbacks(seed: u64, out: &mut Vec<Check>) -> keplerreg_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-5;
    let (mut ks, mut free) = (0.0f64, 0.0f64);
    for _ in 0..N_POINTS {
        let mut v3 = |r: f64| {
            [
                rng.random_range(-r..r),
                rng.random_range(-r..r),
                rng.random_range(-r..r),
            ]
        };
        let (x, y) = (v3(2.0), v3(1.0));
        let p = collision_extraction(&lift(&KeplerState::new(x, y, 1.0, 1.0, 1.0))?);
        let (dz, dw) = (random_spinor(&mut rng), random_spinor(&mut rng));
        let (xp, _) = ks_pi(&shifted(&p, &dz, &dw, h))?;
        let (xm, _) = ks_pi(&shifted(&p, &dz, &dw, -h))?;
        let (_, y0) = ks_pi(&p)?;
        let dx = vec3::scale(vec3::sub(xp, xm), 0.5 / h);
        ks = ks.max((vec3::dot(y0, dx) - canonical_potential(&p, &dz)).abs());

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
        free = free
            .max(((d_free(&u, &v) - d_free(&v, &u)) - (d_canon(&u, &v) - d_canon(&v, &u))).abs());
    }
    out.push(Check::below("pullback_ks", ks, PULLBACK_TOL));
    out.push(Check::below("pullback_free", free, PULLBACK_TOL));
    Ok(())
}

pub fn report(config: &RunConfig) -> VerifyReport {
    let mut checks = Vec::new();
    let c = config.cutoff;
    type Step<'a> = (
        &'a str,
        Box<dyn Fn(&mut Vec<Check>) -> keplerreg_core::Result<()> + 'a>,
    );
    let steps: Vec<Step> = vec![
        ("oracle", Box::new(|o| oracle(c, o))),
        (
            "closure",
            Box::new(|o| closure(c, config.inject_sign_error, o)),
        ),
        ("su2_identity", Box::new(|o| su2_identity(c, o))),
        ("casimir", Box::new(|o| casimir(c, o))),
        (
            "linearized",
            Box::new(|o| linearized_quantities(config.seed, config.m, config.gamma, o)),
        ),
        ("pullback", Box::new(|o| pullbacks(config.seed, o))),
    ];
    for (name, step) in steps {
        let before = checks.len();
        if let Err(e) = step(&mut checks) {
            checks.truncate(before);
            checks.push(Check::error(format!("{name}: {e}")));
        }
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.clone())
        .collect();
    VerifyReport {
        seed: config.seed,
        cutoff: c,
        m: config.m,
        gamma: config.gamma,
        injected_sign_error: config.inject_sign_error,
        pass: failed.is_empty(),
        failed,
        checks,
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let r = report(config);
    emit(config.out.as_deref(), &output::to_json(&r)?)?;
    if r.pass {
        Ok(())
    } else {
        Err(CliError::Check(r.failed.join(", ")))
    }
}
