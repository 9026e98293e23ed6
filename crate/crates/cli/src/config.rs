//! Scenario files.
//!
//! JSON with unknown keys rejected at every level. Missing optional sections
//! take the defaults below; [`ScenarioConfig::to_json`] emits the normalized
//! form with every default spelled out. Relative output paths are resolved
//! against the directory holding the config file.

use std::f64::consts::PI;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wedgewave::evolution::{ForcingSpec, SimulationConfig};
use wedgewave::{LogRadialGrid, WedgeGeometry};

use crate::error::{CliError, CliResult};

/// Grids above this many nodes are refused; the banded factor would not fit
/// comfortably in memory.
pub const MAX_NODES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub alpha: f64,
    #[serde(default = "default_g")]
    pub g: f64,
    pub grid: GridConfig,
    #[serde(default)]
    pub initial: InitialConfig,
    #[serde(default)]
    pub forcing: ForcingSpec,
    #[serde(default)]
    pub time: TimeConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
    #[serde(default)]
    pub checks: CheckConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(default)]
    pub eta0: Profile,
    #[serde(default)]
    pub v0: Profile,
}

/// Surface data on the radial nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    Zero {},
    Gaussian {
        center: f64,
        width: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    Values {
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    #[serde(alias = "T")]
    pub t_final: f64,
    pub dt_out: f64,
    #[serde(default = "default_n_sub")]
    pub n_sub: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg_path: Option<PathBuf>,
    /// Directory receiving `dtn_matrix.csv` and `dtn_eigenvalues.csv`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump_operator: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    #[serde(default = "default_max_asymmetry")]
    pub max_asymmetry: f64,
    #[serde(default = "default_energy_drift")]
    pub energy_drift_tol: f64,
}

fn default_g() -> f64 {
    9.81
}

fn one() -> f64 {
    1.0
}

fn default_n_sub() -> usize {
    32
}

fn default_max_asymmetry() -> f64 {
    0.05
}

fn default_energy_drift() -> f64 {
    1e-10
}

impl Default for TimeConfig {
    fn default() -> Self {
        Self {
            t_final: 5.0,
            dt_out: 0.25,
            n_sub: default_n_sub(),
        }
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            max_asymmetry: default_max_asymmetry(),
            energy_drift_tol: default_energy_drift(),
        }
    }
}

impl Default for ScenarioConfig {
    /// Quarter plane on `r ∈ [1e-2, 1e2]`, 96×48 nodes, a Gaussian hump of
    /// water at `r = 1` released from rest.
    fn default() -> Self {
        Self {
            alpha: PI / 2.0,
            g: default_g(),
            grid: GridConfig {
                r_min: 1e-2,
                r_max: 1e2,
                n_r: 96,
                n_theta: 48,
            },
            initial: InitialConfig {
                eta0: Profile::Gaussian {
                    center: 1.0,
                    width: 0.3,
                    amplitude: 0.1,
                },
                v0: Profile::Zero {},
            },
            forcing: ForcingSpec::None {},
            time: TimeConfig::default(),
            outputs: OutputConfig::default(),
            checks: CheckConfig::default(),
        }
    }
}

impl Default for Profile {
    fn default() -> Self {
        Profile::Zero {}
    }
}

impl Profile {
    pub fn sample(&self, r: &[f64]) -> CliResult<Vec<f64>> {
        match self {
            Profile::Zero {} => Ok(vec![0.0; r.len()]),
            Profile::Gaussian {
                center,
                width,
                amplitude,
            } => {
                if !(*width > 0.0) {
                    return Err(CliError::Usage(format!("profile width must be positive, got {width}")));
                }
                Ok(r.iter().map(|x| amplitude * (-((x - center) / width).powi(2)).exp()).collect())
            }
            Profile::Values { values } => {
                if values.len() != r.len() {
                    return Err(CliError::Usage(format!(
                        "profile has {} values but the grid has {} radial nodes",
                        values.len(),
                        r.len()
                    )));
                }
                Ok(values.clone())
            }
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates a config file; relative output paths are rebased
    /// onto the file's directory.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| match source.kind() {
            io::ErrorKind::NotFound | io::ErrorKind::PermissionDenied => CliError::MissingFile {
                path: path.to_path_buf(),
                source,
            },
            _ => CliError::Usage(format!("cannot read {}: {source}", path.display())),
        })?;
        let mut cfg = Self::from_json(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.outputs.csv_path, &mut cfg.outputs.svg_path, &mut cfg.outputs.dump_operator]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    pub fn validate(&self) -> CliResult<()> {
        let grid = self.log_grid()?;
        if !(self.g.is_finite() && self.g > 0.0) {
            return Err(CliError::Usage(format!("g must be positive, got {}", self.g)));
        }
        let c = &self.checks;
        if !(c.max_asymmetry >= 0.0 && c.energy_drift_tol >= 0.0) {
            return Err(CliError::Usage("check tolerances must be nonnegative".into()));
        }
        self.simulation(&grid)?.validate(grid.n_r()).map_err(CliError::from_validation)
    }

    pub fn geometry(&self) -> CliResult<WedgeGeometry> {
        WedgeGeometry::new(self.alpha).map_err(CliError::from_validation)
    }

    pub fn log_grid(&self) -> CliResult<LogRadialGrid> {
        self.geometry()?;
        let g = &self.grid;
        if g.n_r.saturating_mul(g.n_theta) > MAX_NODES {
            return Err(CliError::Usage(format!(
                "grid {}x{} exceeds {MAX_NODES} nodes",
                g.n_r, g.n_theta
            )));
        }
        LogRadialGrid::new(g.r_min, g.r_max, g.n_r, g.n_theta, self.alpha).map_err(CliError::from_validation)
    }

    pub fn simulation(&self, grid: &LogRadialGrid) -> CliResult<SimulationConfig> {
        let r = grid.r();
        Ok(SimulationConfig {
            g: self.g,
            t_final: self.time.t_final,
            dt_out: self.time.dt_out,
            eta0: self.initial.eta0.sample(r)?,
            v0: self.initial.v0.sample(r)?,
            forcing: self.forcing.clone(),
            n_sub: self.time.n_sub,
        })
    }
}
