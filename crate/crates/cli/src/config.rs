use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use swkb::catalog::{self, Params};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown potential `{0}`")]
    UnknownPotential(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("no checks requested")]
    EmptyChecks,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad level range `{0}`; expected N or N..M")]
    BadRange(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Swkb,
    Bswkb,
    Wkb,
    LangerWkb,
    LangerIdentity,
    Oracle,
    ShapeInvariance,
    Extended,
    Projections,
    Appc,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Swkb,
        Check::Bswkb,
        Check::Wkb,
        Check::LangerWkb,
        Check::LangerIdentity,
        Check::Oracle,
        Check::ShapeInvariance,
        Check::Extended,
        Check::Projections,
        Check::Appc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Swkb => "swkb",
            Check::Bswkb => "bswkb",
            Check::Wkb => "wkb",
            Check::LangerWkb => "langer-wkb",
            Check::LangerIdentity => "langer-identity",
            Check::Oracle => "oracle",
            Check::ShapeInvariance => "shape-invariance",
            Check::Extended => "extended",
            Check::Projections => "projections",
            Check::Appc => "appc",
        }
    }

    /// Level range used when none is given.
    pub fn default_levels(self) -> (usize, usize) {
        match self {
            Check::Swkb => (1, 8),
            Check::Bswkb | Check::Wkb | Check::LangerWkb => (0, 8),
            Check::LangerIdentity => (0, 5),
            Check::Oracle => (0, 4),
            Check::Extended => (1, 4),
            Check::ShapeInvariance | Check::Projections | Check::Appc => (1, 1),
        }
    }

    /// Pass threshold used when none is given.
    pub fn default_tol(self) -> f64 {
        match self {
            Check::Swkb | Check::Bswkb | Check::Wkb | Check::LangerWkb => 1e-8,
            Check::LangerIdentity | Check::ShapeInvariance => 1e-9,
            Check::Oracle | Check::Extended => 1e-6,
            Check::Projections => swkb::transforms::RATIO_TOL,
            Check::Appc => 1e-10,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownCheck(s.to_string()))
    }
}

/// Comma-separated check names; `all` selects every check.
pub fn parse_checks(s: &str) -> Result<Vec<Check>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Check::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(ConfigError::EmptyChecks);
    }
    Ok(out)
}

/// `N` or inclusive `N..M`.
pub fn parse_levels(s: &str) -> Result<(usize, usize), ConfigError> {
    let bad = || ConfigError::BadRange(s.to_string());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(ConfigError::Invalid(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Catalog names; `all` expands to the conventional entries.
    pub potentials: Vec<String>,
    /// Per-potential parameter overrides.
    pub params: BTreeMap<String, Params>,
    pub hbar: f64,
    pub n_range: Option<(usize, usize)>,
    pub checks: Vec<Check>,
    pub tol: Option<f64>,
    pub output: Format,
    pub out_path: Option<PathBuf>,
    pub seed: u64,
    pub lambdas: Vec<f64>,
    pub workers: usize,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            potentials: vec!["all".into()],
            params: BTreeMap::new(),
            hbar: 1.0,
            n_range: None,
            checks: Vec::new(),
            tol: None,
            output: Format::Json,
            out_path: None,
            seed: 1,
            lambdas: vec![3.0],
            workers: 1,
            timings: false,
        }
    }
}

/// The parts of a configuration that determine the report's content.
#[derive(Serialize)]
pub struct ConfigEcho {
    pub potentials: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub hbar: f64,
    pub n_range: Option<(usize, usize)>,
    pub checks: Vec<Check>,
    pub tol: Option<f64>,
    pub output: Format,
    pub seed: u64,
    pub lambdas: Vec<f64>,
    pub timings: bool,
}

impl RunConfig {
    /// Expanded potential names, in catalog order.
    pub fn resolved_potentials(&self) -> Result<Vec<&'static str>, ConfigError> {
        let all = catalog::names();
        let mut out = Vec::new();
        for p in &self.potentials {
            if p == "all" {
                out.extend(catalog::conventional().iter().map(|s| s.name));
            } else {
                let name = all
                    .iter()
                    .find(|n| **n == p.as_str())
                    .ok_or_else(|| ConfigError::UnknownPotential(p.clone()))?;
                out.push(*name);
            }
        }
        out.sort_by_key(|n| all.iter().position(|m| m == n));
        out.dedup();
        Ok(out)
    }

    /// Rejects anything that would fail before computing.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.checks.is_empty() {
            return Err(ConfigError::EmptyChecks);
        }
        let pots = self.resolved_potentials()?;
        for (name, params) in &self.params {
            let sp = catalog::lookup(name).map_err(|_| ConfigError::UnknownPotential(name.clone()))?;
            if !pots.contains(&sp.name()) {
                return Err(ConfigError::BadParams(format!("parameters given for `{name}`, which is not selected")));
            }
            sp.coords(params, self.hbar).map_err(|e| ConfigError::BadParams(format!("{name}: {e}")))?;
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(ConfigError::Invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError::Invalid(format!("tol must be positive, got {t}")));
            }
        }
        if self.lambdas.iter().any(|l| !(*l > 0.5 && l.is_finite())) {
            return Err(ConfigError::Invalid("lambda values must exceed 1/2".into()));
        }
        if self.workers == 0 {
            return Err(ConfigError::Invalid("workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn levels(&self, check: Check) -> (usize, usize) {
        self.n_range.unwrap_or_else(|| check.default_levels())
    }

    pub fn tol_for(&self, check: Check) -> f64 {
        self.tol.unwrap_or_else(|| check.default_tol())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            potentials: self.potentials.clone(),
            params: self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            hbar: self.hbar,
            n_range: self.n_range,
            checks: self.checks.clone(),
            tol: self.tol,
            output: self.output,
            seed: self.seed,
            lambdas: self.lambdas.clone(),
            timings: self.timings,
        }
    }
}
