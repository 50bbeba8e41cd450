//! `spectrum`: energy levels of the quantized problem in one regime.

use keplerreg_core::dynamics::Regime;
use keplerreg_core::quantum::{
    hydrogen_spectrum_neg, positive_spectrum, zero_energy_sphere_radius_sq, SpectrumLine,
};
use serde::Serialize;

use crate::output::{fmt_f64, to_json, write_csv};
use crate::{emit, CliError, Format, RunConfig};

#[derive(Debug, Clone, Serialize)]
pub struct ZeroEnergyReport {
    pub regime: Regime,
    pub message: String,
    pub k: f64,
    /// `2γ√m/k`.
    pub sphere_radius_sq: f64,
}

/// Closed-form energy of level `n`: `∓mγ²/(2n²)`.
pub fn closed_form(regime: Regime, n: u32, m: f64, gamma: f64) -> f64 {
    let e = m * gamma * gamma / (2.0 * f64::from(n) * f64::from(n));
    if regime == Regime::Neg {
        -e
    } else {
        e
    }
}

pub fn lines(config: &RunConfig) -> Result<Vec<SpectrumLine>, CliError> {
    let r = match config.regime {
        Regime::Neg => hydrogen_spectrum_neg(config.cutoff, config.m, config.gamma),
        Regime::Pos => positive_spectrum(config.cutoff, config.m, config.gamma),
        Regime::Zero => {
            return Err(CliError::Usage(
                "the zero-energy regime has no discrete levels".into(),
            ))
        }
    };
    r.map_err(|e| CliError::Other(e.into()))
}

fn table(config: &RunConfig, lines: &[SpectrumLine]) -> String {
    let mut s = format!(
        "{:>4} {:>24} {:>24} {:>6} {:>8}\n",
        "n", "energy", "closed_form", "deg", "complete"
    );
    for l in lines {
        s += &format!(
            "{:>4} {:>24} {:>24} {:>6} {:>8}\n",
            l.n,
            fmt_f64(l.energy),
            fmt_f64(closed_form(config.regime, l.n, config.m, config.gamma)),
            l.degeneracy,
            l.truncation_complete
        );
    }
    s
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    if config.regime == Regime::Zero {
        let r2 = zero_energy_sphere_radius_sq(config.m, config.gamma, config.k)
            .map_err(|e| CliError::Other(e.into()))?;
        let report = ZeroEnergyReport {
            regime: Regime::Zero,
            message: "E = 0 has no discrete ladder; zero-energy states lie on a constraint sphere of the given squared radius"
                .into(),
            k: config.k,
            sphere_radius_sq: r2,
        };
        return emit(config.out.as_deref(), &to_json(&report)?);
    }
    let lines = lines(config)?;
    let text = match config.format {
        Format::Json => to_json(&lines)?,
        Format::Csv => {
            let mut buf = Vec::new();
            let rows = lines.iter().map(|l| {
                vec![
                    l.n.to_string(),
                    fmt_f64(l.energy),
                    l.degeneracy.to_string(),
                    l.truncation_complete.to_string(),
                    fmt_f64(closed_form(config.regime, l.n, config.m, config.gamma)),
                ]
            });
            write_csv(
                &mut buf,
                &[
                    "n",
                    "energy",
                    "degeneracy",
                    "truncation_complete",
                    "closed_form",
                ],
                rows,
            )?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    };
    emit(config.out.as_deref(), &text)?;
    let t = table(config, &lines);
    if config.out.is_some() {
        print!("{t}");
    } else {
        eprint!("{t}");
    }
    Ok(())
}
