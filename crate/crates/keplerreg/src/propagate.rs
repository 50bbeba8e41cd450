//! `propagate`: a trajectory sampled from the regularized flow.

use keplerreg_core::dynamics::{
    propagate_physical, ConservationDrift, Regime, Trajectory, TrajectoryEvent,
};
use keplerreg_core::ks::KeplerState;
use keplerreg_core::vec3::Vec3;
use keplerreg_core::Error;
use serde::Serialize;

use crate::output::{fmt_f64, to_json, write_csv};
use crate::{emit, CliError, Format, RunConfig};

pub const CSV_HEADER: [&str; 15] = [
    "s", "t", "x1", "x2", "x3", "y1", "y2", "y3", "H", "L1", "L2", "L3", "RL1", "RL2", "RL3",
];

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub regime: Regime,
    pub k: f64,
    pub n_steps: usize,
    pub dlambda: f64,
    pub samples: usize,
    pub final_time: f64,
    pub drift: ConservationDrift,
    pub max_linear_speed: f64,
    pub events: Vec<TrajectoryEvent>,
}

#[derive(Serialize)]
struct SampleRow {
    s: f64,
    t: f64,
    #[serde(rename = "X")]
    x: Vec3,
    #[serde(rename = "Y")]
    y: Vec3,
    #[serde(rename = "H")]
    h: f64,
    #[serde(rename = "L")]
    l: Vec3,
    #[serde(rename = "RL")]
    rl: Vec3,
}

pub fn initial_state(config: &RunConfig) -> Result<KeplerState, CliError> {
    match (&config.state, &config.initial) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read state {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("malformed state {}: {e}", path.display())))
        }
        (None, Some(s)) => Ok(*s),
        (None, None) => Err(CliError::Usage(
            "propagate needs --state or an initial state in the config".into(),
        )),
    }
}

pub fn trajectory(config: &RunConfig, initial: &KeplerState) -> Result<Trajectory, CliError> {
    propagate_physical(initial, config.regime, config.n_steps, config.step()).map_err(|e| match e {
        Error::EnergySign(_) | Error::InvalidArgument(_) | Error::Domain(_) => {
            CliError::Usage(format!(
                "cannot propagate in the {} regime: {e}",
                config.regime.name()
            ))
        }
        e => CliError::Other(e.into()),
    })
}

fn csv_text(tr: &Trajectory) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    let rows = tr.samples.iter().map(|s| {
        [s.s, s.t]
            .into_iter()
            .chain(s.state.x)
            .chain(s.state.y)
            .chain([s.h])
            .chain(s.l)
            .chain(s.rl)
            .map(fmt_f64)
            .collect()
    });
    write_csv(&mut buf, &CSV_HEADER, rows)?;
    Ok(String::from_utf8(buf)?)
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let initial = initial_state(config)?;
    let tr = trajectory(config, &initial)?;
    let text = match config.format {
        Format::Csv => csv_text(&tr)?,
        Format::Json => {
            let rows: Vec<SampleRow> = tr
                .samples
                .iter()
                .map(|s| SampleRow {
                    s: s.s,
                    t: s.t,
                    x: s.state.x,
                    y: s.state.y,
                    h: s.h,
                    l: s.l,
                    rl: s.rl,
                })
                .collect();
            to_json(&rows)?
        }
    };
    emit(config.out.as_deref(), &text)?;
    let summary = Summary {
        regime: config.regime,
        k: tr.k,
        n_steps: config.n_steps,
        dlambda: config.step(),
        samples: tr.samples.len(),
        final_time: tr.final_time(),
        drift: tr.drift(),
        max_linear_speed: tr.max_linear_speed,
        events: tr.events.clone(),
    };
    let s = to_json(&summary)?;
    if config.out.is_some() {
        print!("{s}");
    } else {
        eprint!("{s}");
    }
    Ok(())
}
