//! Run configuration as read from JSON. Unknown fields anywhere are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    HalfplaneCoupled,
    Strip,
    DiskCoupled,
    Annulus,
}

impl ProblemKind {
    pub fn is_polar(self) -> bool {
        matches!(self, ProblemKind::DiskCoupled | ProblemKind::Annulus)
    }

    pub fn is_coupled(self) -> bool {
        matches!(
            self,
            ProblemKind::HalfplaneCoupled | ProblemKind::DiskCoupled
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::HalfplaneCoupled => "halfplane_coupled",
            ProblemKind::Strip => "strip",
            ProblemKind::DiskCoupled => "disk_coupled",
            ProblemKind::Annulus => "annulus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Asymptotic,
    Oracle,
    /// The model function û evaluated as if it were the solution.
    Raw,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Asymptotic => "asymptotic",
            Method::Oracle => "oracle",
            Method::Raw => "raw",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub l: Option<f64>,
    pub k: Option<f64>,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ModeConfig {
    Planar(PlanarModeConfig),
    Disk(DiskModeConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanarModeConfig {
    pub omega: f64,
    #[serde(rename = "A", default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskModeConfig {
    pub n: usize,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryConfig {
    pub modes: Option<Vec<ModeConfig>>,
    /// CSV of `(abscissa, value)` pairs: `y` on `x = 0`, or `θ` on `r = 1`.
    pub samples: Option<PathBuf>,
    /// Fourier modes kept when projecting circle samples.
    pub sample_modes: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationConfig {
    #[serde(rename = "J")]
    pub terms: Option<usize>,
    pub tol: Option<f64>,
    pub sup_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub from: f64,
    pub to: f64,
    pub n: usize,
}

impl Axis {
    pub fn nodes(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.from];
        }
        let h = (self.to - self.from) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.to
                } else {
                    self.from + i as f64 * h
                }
            })
            .collect()
    }
}

/// Cartesian grids give `x` and `y`; polar grids give `r` and the number of
/// equally spaced angles on `[0, 2π)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x: Option<Axis>,
    pub y: Option<Axis>,
    pub r: Option<Axis>,
    pub theta: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hold {
    /// Keep the coupling ratio; the Robin parameter changes with thickness.
    #[default]
    K,
    /// Keep the Robin parameter h; k is recomputed for each thickness.
    Robin,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Outer-layer thicknesses: `l`, or `1 − R` for the radial problems.
    pub thickness: Vec<f64>,
    #[serde(default)]
    pub hold: Hold,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksConfig {
    #[serde(default = "default_check_tol")]
    pub pde: f64,
    #[serde(default = "default_check_tol")]
    pub boundary: f64,
    #[serde(default = "default_check_tol")]
    pub value_jump: f64,
    #[serde(default = "default_check_tol")]
    pub flux_jump: f64,
    #[serde(default = "default_samples")]
    pub interior_samples: usize,
    #[serde(default = "default_edge_samples")]
    pub boundary_samples: usize,
    #[serde(default = "default_edge_samples")]
    pub interface_samples: usize,
}

fn default_check_tol() -> f64 {
    1e-8
}

fn default_samples() -> usize {
    100
}

fn default_edge_samples() -> usize {
    50
}

impl Default for ChecksConfig {
    fn default() -> Self {
        ChecksConfig {
            pde: default_check_tol(),
            boundary: default_check_tol(),
            value_jump: default_check_tol(),
            flux_jump: default_check_tol(),
            interior_samples: default_samples(),
            boundary_samples: default_edge_samples(),
            interface_samples: default_edge_samples(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeConfig {
    pub threshold: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemKind,
    #[serde(default)]
    pub geometry: GeometryConfig,
    pub boundary: BoundaryConfig,
    pub method: Option<Method>,
    pub methods: Option<Vec<Method>>,
    /// Euler–Maclaurin order for the asymptotic method; leading order if absent.
    pub em_order: Option<usize>,
    #[serde(default)]
    pub truncation: TruncationConfig,
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub checks: ChecksConfig,
    #[serde(default)]
    pub regime: RegimeConfig,
    #[serde(default)]
    pub seed: u64,
    /// A grid CSV written by `solve`, re-checked by `verify`.
    pub solution: Option<PathBuf>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn from_json(text: &str, base_dir: impl Into<PathBuf>) -> CliResult<Self> {
        let mut cfg: RunConfig = serde_json::from_str(text)
            .map_err(|e| CliError::validation(format!("invalid config: {e}")))?;
        cfg.base_dir = base_dir.into();
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> CliResult<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_json(&text, base)
    }

    /// Paths in the config are relative to the config file.
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// The single method of `solve` and `verify`.
    pub fn single_method(&self) -> CliResult<Method> {
        match (self.method, &self.methods) {
            (Some(m), None) => Ok(m),
            (None, Some(ms)) if ms.len() == 1 => Ok(ms[0]),
            (None, None) => Ok(Method::Series),
            _ => Err(CliError::validation(
                "give exactly one method for this command",
            )),
        }
    }

    pub fn method_list(&self) -> CliResult<Vec<Method>> {
        let ms = match (self.method, &self.methods) {
            (None, Some(ms)) => ms.clone(),
            (Some(m), None) => vec![m],
            (Some(_), Some(_)) => {
                return Err(CliError::validation(
                    "give either method or methods, not both",
                ))
            }
            (None, None) => Vec::new(),
        };
        if ms.len() < 2 {
            return Err(CliError::validation("compare needs at least two methods"));
        }
        Ok(ms)
    }
}
