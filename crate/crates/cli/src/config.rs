//! JSON experiment configuration. Every field has a default, unknown fields
//! are rejected, and the resolved value is written back next to the outputs.

use std::path::{Path, PathBuf};

use histopol_core::{BasisKind, Method};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::families::Family;

/// Largest degree accepted from a config.
pub const MAX_DEGREE: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Support family for `lebesgue` and `extract`.
    pub family: Family,
    /// Families compared by `interp`.
    pub families: Vec<Family>,
    pub degrees: DegreeRange,
    pub basis: BasisKind,
    /// Disc radius as a fraction of the minimal center separation.
    pub radius_ratio: f64,
    pub grid: GridConfig,
    /// `short` (point grid) or `long` (probe discs).
    pub method: Method,
    pub probes: ProbeConfig,
    /// Also report the nodal Lebesgue constant of the centers.
    pub nodal_baseline: bool,
    pub radius_sweep: Option<SweepConfig>,
    pub pool: PoolConfig,
    /// Data integrals use exactness `2d + data_exactness_offset`.
    pub data_exactness_offset: usize,
    pub surface: Option<SurfaceConfig>,
    /// Halton families start after this many sequence indices.
    pub seed: u64,
    /// Support set JSON for the `file` family, relative to the config file.
    pub supports_file: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            family: Family::BojanovXu,
            families: vec![Family::Halton, Family::BojanovXu, Family::Orbit, Family::Afs, Family::Dls],
            degrees: DegreeRange { min: 1, max: 10 },
            basis: BasisKind::Chebyshev,
            radius_ratio: 0.4,
            grid: GridConfig::default(),
            method: Method::Short,
            probes: ProbeConfig::default(),
            nodal_baseline: false,
            radius_sweep: None,
            pool: PoolConfig::default(),
            data_exactness_offset: 20,
            surface: None,
            seed: 0,
            supports_file: None,
        }
    }
}

/// Inclusive degree range; `min > max` is an empty range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRange {
    pub min: usize,
    pub max: usize,
}

impl DegreeRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.min..=self.max
    }

    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }
}

/// Polar evaluation grid: `radii × angles` points plus the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub radii: usize,
    pub angles: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { radii: 60, angles: 120 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    pub radii: usize,
    pub angles: usize,
    pub radius: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self { radii: 40, angles: 80, radius: 0.01 }
    }
}

/// Lebesgue constant at one degree for radii `k/steps · r_max`, `k = 1..=steps`,
/// where `r_max` is the largest radius keeping the discs disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub degree: usize,
    pub steps: usize,
}

/// Uniform grid of about `size` candidate discs of radius `radius_ratio · spacing`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoolConfig {
    pub size: usize,
    pub radius_ratio: f64,
}

impl Default for PoolConfig {
    fn default() -> Self {
        Self { size: 8000, radius_ratio: 0.4 }
    }
}

/// Values of `f2` and its interpolant on a polar grid, one file per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub degree: usize,
    pub radii: usize,
    pub angles: usize,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if !self.degrees.is_empty() && self.degrees.max > MAX_DEGREE {
            return bad(format!("degree {} exceeds {MAX_DEGREE}", self.degrees.max));
        }
        if !(self.radius_ratio > 0.0 && self.radius_ratio <= 0.5) {
            return bad(format!("radius_ratio {} outside (0, 0.5]", self.radius_ratio));
        }
        if self.grid.radii == 0 || self.grid.angles == 0 {
            return bad("grid needs at least one radius and one angle".into());
        }
        if self.probes.radii == 0 || self.probes.angles == 0 || !(self.probes.radius > 0.0 && self.probes.radius < 1.0)
        {
            return bad("probes need positive counts and a radius in (0, 1)".into());
        }
        if self.method == Method::Nodal {
            return bad("method must be \"short\" or \"long\"; use nodal_baseline for the nodal constant".into());
        }
        if self.pool.size == 0 || !(self.pool.radius_ratio > 0.0 && self.pool.radius_ratio <= 0.5) {
            return bad("pool needs a positive size and radius_ratio in (0, 0.5]".into());
        }
        if let Some(s) = self.radius_sweep {
            if s.steps == 0 || s.degree > MAX_DEGREE {
                return bad("radius_sweep needs steps > 0 and a supported degree".into());
            }
        }
        if let Some(s) = self.surface {
            if s.radii == 0 || s.angles == 0 || s.degree > MAX_DEGREE {
                return bad("surface needs positive grid counts and a supported degree".into());
            }
        }
        let uses_file = self.family == Family::File || self.families.contains(&Family::File);
        if uses_file && self.supports_file.is_none() {
            return bad("family \"file\" requires supports_file".into());
        }
        Ok(())
    }
}
