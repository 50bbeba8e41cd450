//! Run configuration: a JSON file with command-line overrides.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use keplerreg_core::dynamics::Regime;
use keplerreg_core::ks::KeplerState;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Spectrum,
    Propagate,
    Benchmark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub m: f64,
    pub gamma: f64,
    /// Scale used at zero energy, where it cannot be calibrated.
    pub k: f64,
    pub regime: Regime,
    pub cutoff: usize,
    pub n_steps: usize,
    /// Fictitious-time step; `None` spreads `n_steps` over half an
    /// oscillator period (one Kepler period for bound orbits).
    pub dlambda: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Initial state file for `propagate`.
    pub state: Option<PathBuf>,
    /// Inline initial state for `propagate`; a state file wins.
    pub initial: Option<KeplerState>,
    pub eccentricities: Vec<f64>,
    pub inject_sign_error: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            m: 1.0,
            gamma: 1.0,
            k: 1.0,
            regime: Regime::Neg,
            cutoff: 8,
            n_steps: 2000,
            dlambda: None,
            seed: 0,
            out: None,
            format: Format::Json,
            state: None,
            initial: None,
            eccentricities: vec![0.5, 0.9, 0.99],
            inject_sign_error: false,
        }
    }
}

/// Values given on the command line; each one replaces the config value.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// JSON configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long, value_parser = parse_regime)]
    pub regime: Option<Regime>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub n_steps: Option<usize>,
    #[arg(long)]
    pub dlambda: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Initial KeplerState JSON (propagate).
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Flip the sign of one generator to exercise the failure path (verify).
    #[arg(long)]
    pub inject_sign_error: bool,
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    match s {
        "neg" => Ok(Regime::Neg),
        "pos" => Ok(Regime::Pos),
        "zero" => Ok(Regime::Zero),
        _ => Err(format!("unknown regime '{s}' (expected neg, pos or zero)")),
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Config file (if any) with the overrides applied, then validated.
    pub fn resolve(command: Command, o: &Overrides) -> Result<Self, CliError> {
        let mut c = match &o.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        c.command = Some(command);
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { c.$f = v; } )* };
        }
        take!(m, gamma, k, regime, cutoff, n_steps, seed, format);
        if o.dlambda.is_some() {
            c.dlambda = o.dlambda;
        }
        if o.out.is_some() {
            c.out = o.out.clone();
        }
        if o.state.is_some() {
            c.state = o.state.clone();
        }
        c.inject_sign_error |= o.inject_sign_error;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.m) || !positive(self.gamma) || !positive(self.k) {
            return Err(CliError::Usage(
                "m, gamma and k must be positive and finite".into(),
            ));
        }
        if self.command == Some(Command::Spectrum) && self.cutoff < 2 {
            return Err(CliError::Usage("spectrum needs cutoff >= 2".into()));
        }
        if self.command == Some(Command::Verify) && self.cutoff < 4 {
            return Err(CliError::Usage("verify needs cutoff >= 4".into()));
        }
        if self.n_steps == 0 {
            return Err(CliError::Usage("n_steps must be positive".into()));
        }
        if let Some(d) = self.dlambda {
            if !positive(d) {
                return Err(CliError::Usage(
                    "dlambda must be positive and finite".into(),
                ));
            }
        }
        if self.eccentricities.iter().any(|e| !(0.0..1.0).contains(e)) {
            return Err(CliError::Usage("eccentricities must lie in [0, 1)".into()));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        self.dlambda.unwrap_or(PI / self.n_steps as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips() {
        let c = RunConfig {
            command: Some(Command::Benchmark),
            regime: Regime::Pos,
            dlambda: Some(0.1),
            ..Default::default()
        };
        let text = crate::output::to_json(&c).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c);
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"m": 2.0, "cutoff": 4, "regime": "pos"}"#).unwrap();
        let o = Overrides {
            config: Some(p),
            cutoff: Some(6),
            ..Default::default()
        };
        let c = RunConfig::resolve(Command::Spectrum, &o).unwrap();
        assert_eq!((c.m, c.cutoff, c.regime), (2.0, 6, Regime::Pos));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_json(r#"{"bogus": 1}"#).is_err());
        let o = Overrides {
            m: Some(-1.0),
            ..Default::default()
        };
        assert!(matches!(
            RunConfig::resolve(Command::Verify, &o),
            Err(CliError::Usage(_))
        ));
        let o = Overrides {
            cutoff: Some(1),
            ..Default::default()
        };
        assert!(RunConfig::resolve(Command::Spectrum, &o).is_err());
    }
}
