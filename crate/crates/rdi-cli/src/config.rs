use rdi::solution_catalog::{Family, SolutionSpec, Waveform, WaveformKind};
use rdi::verifier::{CheckKind, NegativeControl};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::CliError;

/// Effective run configuration. Every section defaults, so a config file
/// may set any subset; flags are applied on top.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub solution: SolutionConfig,
    pub grid: GridConfig,
    pub verify: VerifyConfig,
    pub output: OutputConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolutionConfig {
    pub family: Option<String>,
    pub n: u32,
    pub l: u32,
    pub m_orbital: u32,
    pub b: f64,
    pub p_z: f64,
    pub mass: f64,
    /// Bessel families only.
    pub energy: f64,
    /// Dressed families only.
    pub waveform: String,
    pub amplitude: f64,
    pub omega: f64,
    pub tau: f64,
}

impl Default for SolutionConfig {
    fn default() -> Self {
        Self {
            family: None,
            n: 1,
            l: 0,
            m_orbital: 0,
            b: 1.0,
            p_z: 0.0,
            mass: 1.0,
            energy: 1.5,
            waveform: "circular".into(),
            amplitude: 0.4,
            omega: 0.8,
            tau: 3.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|k| self.lo + step * k as f64).collect()
    }
}

impl std::str::FromStr for Axis {
    type Err = String;
    /// `lo:hi:count`, or a single value.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number '{p}': {e}"));
        match parts.as_slice() {
            [v] => Ok(Axis { lo: num(v)?, hi: num(v)?, count: 1 }),
            [lo, hi, n] => {
                let count = n.trim().parse::<usize>().map_err(|e| format!("bad count '{n}': {e}"))?;
                Ok(Axis { lo: num(lo)?, hi: num(hi)?, count })
            }
            _ => Err(format!("expected lo:hi:count, got '{s}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub t: f64,
    pub x: Axis,
    pub y: Axis,
    pub z: Axis,
    /// Rows closer than this to the singular axis are skipped. Zero disables
    /// the exclusion, and a grid that then touches the axis is a domain error.
    pub axis_radius: f64,
    pub h: f64,
    pub fd_tolerance: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        let axis = Axis { lo: -3.0, hi: 3.0, count: 21 };
        Self { t: 0.0, x: axis, y: axis, z: Axis { lo: 0.0, hi: 0.0, count: 1 }, axis_radius: 1e-3, h: 1e-3, fd_tolerance: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// "all" or a comma-separated list of family names.
    pub families: String,
    /// Empty means the default suite.
    pub checks: Vec<String>,
    pub points: usize,
    pub seed: u64,
    pub negative_control: Option<String>,
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { families: "all".into(), checks: Vec::new(), points: 100, seed: 20240917, negative_control: None, timing: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Natural,
    Si,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Standard output when absent.
    pub path: Option<PathBuf>,
    pub format: Format,
    pub units: UnitSystem,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { path: None, format: Format::Jsonl, units: UnitSystem::Natural }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

pub fn parse_family(name: &str) -> Result<Family, CliError> {
    name.parse::<Family>().map_err(|_| CliError::UnknownFamily(name.to_string()))
}

pub fn build_spec(s: &SolutionConfig) -> Result<SolutionSpec, CliError> {
    let Some(name) = s.family.as_deref() else {
        return Err(CliError::Usage("no family given (use --family or [solution] family)".into()));
    };
    let fam = parse_family(name)?;
    let base = match fam.stationary() {
        Family::FreeBessel => SolutionSpec::free_bessel(s.l, s.energy, s.b),
        Family::HomogeneousDegenerate => SolutionSpec::homogeneous_degenerate(s.n, s.l, s.b),
        Family::HomogeneousNondegenerate => SolutionSpec::homogeneous_nondegenerate(s.n, s.l, s.b),
        _ => SolutionSpec::inhomogeneous(s.n, s.m_orbital, s.b),
    };
    let mut spec = base.with_pz(s.p_z).with_mass(s.mass);
    if fam.is_dressed() {
        let kind: WaveformKind = s.waveform.parse().map_err(|e: rdi::error::RdiError| CliError::Usage(e.to_string()))?;
        spec = spec.with_waveform(Waveform { tau: s.tau, ..Waveform::new(kind, s.amplitude, s.omega) });
    }
    spec.validate()?;
    Ok(spec)
}

pub fn parse_families(list: &str) -> Result<Vec<Family>, CliError> {
    if list.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    list.split(',').map(|f| parse_family(f.trim())).collect()
}

pub fn parse_checks(names: &[String]) -> Result<Vec<CheckKind>, CliError> {
    if names.is_empty() {
        return Ok(CheckKind::DEFAULT.to_vec());
    }
    names.iter().map(|n| n.parse::<CheckKind>().map_err(|_| CliError::Usage(format!("unknown check '{n}'")))).collect()
}

pub fn parse_control(name: Option<&str>) -> Result<Option<NegativeControl>, CliError> {
    name.map(|n| n.parse::<NegativeControl>().map_err(|_| CliError::Usage(format!("unknown negative control '{n}'"))))
        .transpose()
}
