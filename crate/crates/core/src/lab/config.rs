use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dirac::Scheme;
use crate::error::{Error, Result};
use crate::spectral::{GridSpec, MAX_SOBOLEV_INDEX};

use super::presets::{InitialShape, Preset};

/// Largest initial amplitude accepted for presets with a nonlinear coin.
pub const MAX_NONLINEAR_AMPLITUDE: f64 = 4.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
    #[default]
    Both,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "both" => Ok(Self::Both),
            other => Err(Error::Config(format!("unknown format `{other}` (expected csv, json or both)"))),
        }
    }
}

/// A validated experiment description.
///
/// Parsed from a flat TOML file; every key except `preset` has a default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub preset: Preset,
    #[serde(default)]
    pub initial: InitialShape,
    #[serde(default = "one")]
    pub amplitude: f64,
    /// Gaussian width, or bump radius.
    #[serde(default = "one")]
    pub width: f64,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub coupling: f64,
    #[serde(default = "one")]
    pub final_time: f64,
    #[serde(default = "one_usize")]
    pub sobolev: usize,
    #[serde(default = "default_deltas")]
    pub deltas: Vec<f64>,
    #[serde(default = "default_length")]
    pub length: f64,
    /// Defaults to the smallest δ over 64.
    #[serde(default)]
    pub reference_step: Option<f64>,
    #[serde(default = "default_reference_points")]
    pub reference_points: usize,
    #[serde(default = "default_scheme")]
    pub reference_scheme: Scheme,
    #[serde(default = "default_reference_tolerance")]
    pub reference_tolerance: f64,
    #[serde(default)]
    pub drop_coarsest: bool,
    #[serde(default)]
    pub seed: u64,
    /// Snapshots written by `simulate`, evenly spaced in time.
    #[serde(default = "default_snapshots")]
    pub snapshots: usize,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub format: ReportFormat,
}

fn one() -> f64 {
    1.0
}

fn one_usize() -> usize {
    1
}

fn default_deltas() -> Vec<f64> {
    (4..=9).map(|k| 2f64.powi(-k)).collect()
}

fn default_length() -> f64 {
    64.0
}

fn default_reference_points() -> usize {
    1024
}

fn default_scheme() -> Scheme {
    Scheme::Strang
}

fn default_reference_tolerance() -> f64 {
    1e-9
}

fn default_snapshots() -> usize {
    8
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    /// All defaults for `preset`.
    pub fn new(preset: Preset) -> Self {
        let mut cfg: Self = toml::from_str(&format!("preset = \"{}\"", preset.name()))
            .expect("defaults deserialize");
        cfg.preset = preset;
        cfg
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn finest_delta(&self) -> f64 {
        self.deltas.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn coarsest_delta(&self) -> f64 {
        self.deltas.iter().copied().fold(0.0, f64::max)
    }

    pub fn reference_step(&self) -> f64 {
        self.reference_step.unwrap_or(self.finest_delta() / 64.0)
    }

    /// Finest walk lattice; every coarser lattice is a subsampling of it.
    pub fn master_grid(&self) -> Result<GridSpec> {
        let delta = self.finest_delta();
        GridSpec::new(delta, integral(self.length / delta, "length / delta")?)
    }

    pub fn reference_grid(&self) -> Result<GridSpec> {
        GridSpec::with_length(self.length, self.reference_points)
    }

    pub fn steps(&self, delta: f64) -> usize {
        (self.final_time / delta).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.sobolev < 1 || self.sobolev > MAX_SOBOLEV_INDEX {
            return Err(Error::Config(format!(
                "sobolev index must lie in [1, {MAX_SOBOLEV_INDEX}], got {}",
                self.sobolev
            )));
        }
        positive(self.final_time, "final_time")?;
        positive(self.length, "length")?;
        positive(self.width, "width")?;
        positive(self.reference_tolerance, "reference_tolerance")?;
        if !self.amplitude.is_finite() || self.amplitude <= 0.0 {
            return Err(Error::Config(format!("amplitude must be positive, got {}", self.amplitude)));
        }
        if self.preset.is_nonlinear() && self.amplitude > MAX_NONLINEAR_AMPLITUDE {
            return Err(Error::Config(format!(
                "amplitude {} exceeds {MAX_NONLINEAR_AMPLITUDE} for the nonlinear preset `{}`",
                self.amplitude,
                self.preset.name()
            )));
        }
        if self.deltas.is_empty() {
            return Err(Error::Config("deltas must not be empty".into()));
        }
        for &d in &self.deltas {
            positive(d, "delta")?;
        }
        for pair in self.deltas.windows(2) {
            if (pair[1] * 2.0 - pair[0]).abs() > 1e-12 * pair[0] {
                return Err(Error::Config(format!(
                    "deltas must halve at each entry; {} does not follow {}",
                    pair[1], pair[0]
                )));
            }
        }
        for &d in &self.deltas {
            integral(self.final_time / d, "final_time / delta")?;
        }
        let master = self.master_grid()?;
        if master.points() % 2 != 0 {
            return Err(Error::Config("length / delta must be even".into()));
        }
        let reference = self.reference_grid()?;
        if reference.spacing() > self.coarsest_delta() * (1.0 + 1e-12) {
            return Err(Error::Config(format!(
                "reference grid spacing {} is coarser than the coarsest delta {}",
                reference.spacing(),
                self.coarsest_delta()
            )));
        }
        if reference.nested_stride(&master).is_none() {
            return Err(Error::Config("the reference grid must be a subsampling of the finest lattice".into()));
        }
        let dt = self.reference_step();
        positive(dt, "reference_step")?;
        integral(self.finest_delta() / dt, "finest delta / reference_step")?;
        if self.initial == InitialShape::Bump && self.width > self.length / 2.0 {
            return Err(Error::Config("bump radius exceeds half the domain".into()));
        }
        Ok(())
    }
}

fn positive(v: f64, name: &str) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be positive, got {v}")))
    }
}

fn integral(ratio: f64, name: &str) -> Result<usize> {
    let r = ratio.round();
    if r >= 1.0 && (ratio - r).abs() <= 1e-9 * r {
        Ok(r as usize)
    } else {
        Err(Error::Config(format!("{name} must be a positive integer, got {ratio}")))
    }
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    ExperimentConfig::from_toml(&text)
}
