//! Run configuration: command-line flags layered over an optional TOML file,
//! then command-specific defaults.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// σ_G, σ_Ω and their normalized difference over (ω, x)
    Spectrum,
    /// 10 log10(σ_G/σ_Ω) over ω at fixed x
    Suppression,
    /// Equal-point tangential autocorrelation over s
    Autocorr,
    /// Analytic and numerical transforms of the switching window
    Smearing,
    /// Homodyne mean sweep, variance ladder and dB comparison
    Bhd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "homodyne", version, about, allow_negative_numbers = true)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[command(flatten)]
    pub params: Params,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// TOML file with the same keys as the long flags; flags take precedence
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// Every tunable, all optional so that flags and file can be merged.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Params {
    /// Image-sum period L in µm (twice the plate separation)
    #[arg(long = "L", value_name = "UM")]
    #[serde(rename = "L")]
    pub period: Option<f64>,
    /// Distances from the first plate in µm, comma separated
    #[arg(long, value_delimiter = ',', value_name = "UM,...")]
    pub x: Option<Vec<f64>>,
    /// Evenly spaced x points on [0, L/2] when --x is not given
    #[arg(long)]
    pub x_count: Option<usize>,
    /// ω/c in rad/µm
    #[arg(long)]
    pub omega_min: Option<f64>,
    /// Upper end of the ω grid (inclusive)
    #[arg(long)]
    pub omega_max: Option<f64>,
    /// Number of ω points, at least 2
    #[arg(long)]
    pub omega_count: Option<usize>,
    /// Window plateau duration
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub duration: Option<f64>,
    /// Window edge steepness
    #[arg(long)]
    pub a: Option<f64>,
    /// LO carrier frequency ω_LO
    #[arg(long)]
    pub omega_lo: Option<f64>,
    /// Gaussian LO envelope width σ_k
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Phase times per LO period in the `bhd` mean sweep
    #[arg(long)]
    pub t0_count: Option<usize>,
    /// Time separation grid of `autocorr`, in µm
    #[arg(long)]
    pub s_min: Option<f64>,
    #[arg(long)]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub s_count: Option<usize>,
    /// Image truncation of the autocorrelation sum
    #[arg(long)]
    pub max_image: Option<usize>,
    /// Tolerance of the numerical oracles (brute-force sum, numerical ĝ)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Add a brute-force image-sum column to `spectrum`
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub bruteforce: Option<bool>,
    /// Electron charge e
    #[arg(long)]
    pub charge: Option<f64>,
    /// Effective mass m*
    #[arg(long)]
    pub mass: Option<f64>,
    /// Bound-state energy E0 of the photodiode electron
    #[arg(long)]
    pub e0: Option<f64>,
    /// Width of the Gaussian dipole profile h(q)
    #[arg(long)]
    pub dipole_width: Option<f64>,
    /// Tangential LO amplitude K
    #[arg(long)]
    pub lo_amplitude: Option<f64>,
    /// Tangential coherent-signal amplitude C (same at both diodes)
    #[arg(long)]
    pub signal_amplitude: Option<f64>,
    /// Phase time t_s of the coherent signal
    #[arg(long)]
    pub signal_phase_time: Option<f64>,
}

macro_rules! overlay {
    ($hi:expr, $lo:expr, $($f:ident),*) => {
        Params { $($f: $hi.$f.or($lo.$f)),* }
    };
}

impl Params {
    /// Fields set in `self` win over `file`.
    pub fn over(self, file: Params) -> Params {
        overlay!(
            self,
            file,
            period,
            x,
            x_count,
            omega_min,
            omega_max,
            omega_count,
            duration,
            a,
            omega_lo,
            bandwidth,
            t0_count,
            s_min,
            s_max,
            s_count,
            max_image,
            tol,
            bruteforce,
            charge,
            mass,
            e0,
            dipole_width,
            lo_amplitude,
            signal_amplitude,
            signal_phase_time
        )
    }

    pub fn from_toml(text: &str) -> Result<Params, CliError> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("config file: {}", e.message())))
    }
}

/// Fully resolved configuration; recorded verbatim in every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub command: Command,
    #[serde(rename = "L")]
    pub period: f64,
    pub x: Vec<f64>,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_count: usize,
    #[serde(rename = "T")]
    pub duration: f64,
    pub a: f64,
    pub omega_lo: f64,
    pub bandwidth: f64,
    pub t0_count: usize,
    pub s_min: f64,
    pub s_max: f64,
    pub s_count: usize,
    pub max_image: usize,
    pub tol: f64,
    pub bruteforce: bool,
    pub charge: f64,
    pub mass: f64,
    pub e0: f64,
    pub dipole_width: f64,
    pub lo_amplitude: f64,
    pub signal_amplitude: f64,
    pub signal_phase_time: f64,
}

/// `count` points from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
        .collect()
}

fn invalid(field: &str, why: &str) -> CliError {
    CliError::Validation(format!("{field}: {why}"))
}

impl Settings {
    pub fn resolve(command: Command, p: Params) -> Result<Settings, CliError> {
        let period = p.period.unwrap_or(2.0);
        if !(period > 0.0 && period.is_finite()) {
            return Err(invalid("L", "must be positive"));
        }
        let x = match (p.x, p.x_count) {
            (Some(x), _) => x,
            (None, Some(n)) => {
                if n < 2 {
                    return Err(invalid("x-count", "must be at least 2"));
                }
                linspace(0.0, 0.5 * period, n)
            }
            (None, None) => match command {
                Command::Spectrum => linspace(0.0, 0.5 * period, 11),
                Command::Suppression => vec![0.25, 0.5],
                _ => vec![0.25 * period],
            },
        };
        if x.is_empty() {
            return Err(invalid("x", "needs at least one position"));
        }
        if let Some(bad) = x.iter().find(|&&v| !(0.0..=0.5 * period).contains(&v)) {
            return Err(invalid("x", &format!("{bad} outside [0, L/2]")));
        }

        let a = p.a.unwrap_or(1.0);
        let (omega_min, omega_max, omega_count) = match command {
            Command::Smearing => (p.omega_min.unwrap_or(0.0), p.omega_max.unwrap_or(10.0 * a), p.omega_count.unwrap_or(101)),
            _ => (
                p.omega_min.unwrap_or(4.0 * PI / 200.0),
                p.omega_max.unwrap_or(4.0 * PI),
                p.omega_count.unwrap_or(200),
            ),
        };

        let s = Settings {
            command,
            period,
            x,
            omega_min,
            omega_max,
            omega_count,
            duration: p.duration.unwrap_or(10.0),
            a,
            omega_lo: p.omega_lo.unwrap_or(1.5 * PI),
            bandwidth: p.bandwidth.unwrap_or(0.1),
            t0_count: p.t0_count.unwrap_or(64),
            s_min: p.s_min.unwrap_or(-2.95),
            s_max: p.s_max.unwrap_or(2.95),
            s_count: p.s_count.unwrap_or(60),
            max_image: p.max_image.unwrap_or(1000),
            tol: p.tol.unwrap_or(1e-10),
            bruteforce: p.bruteforce.unwrap_or(false),
            charge: p.charge.unwrap_or(1.0),
            mass: p.mass.unwrap_or(1.0),
            e0: p.e0.unwrap_or(0.0),
            dipole_width: p.dipole_width.unwrap_or(2.0),
            lo_amplitude: p.lo_amplitude.unwrap_or(1.0),
            signal_amplitude: p.signal_amplitude.unwrap_or(1.0),
            signal_phase_time: p.signal_phase_time.unwrap_or(0.0),
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(name, "must be positive and finite"))
            }
        };
        let count = |name: &str, n: usize| if n >= 2 { Ok(()) } else { Err(invalid(name, "must be at least 2")) };
        let range = |lo_name: &str, lo: f64, hi: f64| {
            if lo < hi && lo.is_finite() && hi.is_finite() {
                Ok(())
            } else {
                Err(invalid(lo_name, "range must be non-empty"))
            }
        };
        positive("tol", self.tol)?;
        match self.command {
            Command::Spectrum | Command::Suppression => {
                positive("omega-min", self.omega_min)?;
                range("omega-min", self.omega_min, self.omega_max)?;
                count("omega-count", self.omega_count)?;
            }
            Command::Smearing => {
                positive("T", self.duration)?;
                positive("a", self.a)?;
                if !(self.omega_min >= 0.0) {
                    return Err(invalid("omega-min", "must be non-negative"));
                }
                range("omega-min", self.omega_min, self.omega_max)?;
                count("omega-count", self.omega_count)?;
            }
            Command::Autocorr => {
                range("s-min", self.s_min, self.s_max)?;
                count("s-count", self.s_count)?;
                if self.max_image < 1 {
                    return Err(invalid("max-image", "must be at least 1"));
                }
            }
            Command::Bhd => {
                positive("omega-lo", self.omega_lo)?;
                positive("bandwidth", self.bandwidth)?;
                positive("mass", self.mass)?;
                positive("dipole-width", self.dipole_width)?;
                count("t0-count", self.t0_count)?;
                if self.charge == 0.0 || !self.charge.is_finite() {
                    return Err(invalid("charge", "must be non-zero"));
                }
                if !(self.omega_lo + self.e0 > 0.0) {
                    return Err(invalid("omega-lo", "omega-lo + e0 must be positive"));
                }
            }
        }
        Ok(())
    }
}
