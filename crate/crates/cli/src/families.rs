//! Support families: how each experiment turns a degree into a support set.

use std::fmt;
use std::path::Path;

use histopol_core::greedy::{uniform_pool, CandidatePool, ExtractedSet};
use histopol_core::{
    approximate_fekete, basis_size, bojanov_xu_points, discrete_leja, fitted_discs, halton_points, orbit_supports,
    BasisSpec, OrbitSchedule, Point2, SupportSet,
};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Halton,
    BojanovXu,
    Orbit,
    Afs,
    Dls,
    File,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Halton => "halton",
            Family::BojanovXu => "bojanov-xu",
            Family::Orbit => "orbit",
            Family::Afs => "afs",
            Family::Dls => "dls",
            Family::File => "file",
        }
    }

    /// Families built as equal discs around a point set.
    pub fn is_point_based(self) -> bool {
        matches!(self, Family::Halton | Family::BojanovXu)
    }

    pub fn is_extracted(self) -> bool {
        matches!(self, Family::Afs | Family::Dls)
    }

    /// Raw nodes of a point-based family at degree `d`.
    pub fn nodes(self, d: usize, seed: u64) -> Option<Vec<Point2>> {
        match self {
            Family::Halton => Some(halton_points(basis_size(d), seed)),
            Family::BojanovXu => Some(bojanov_xu_points(d)),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Produces the support set of one family at each degree of a run.
pub struct SupportSource {
    family: Family,
    radius_ratio: f64,
    seed: u64,
    pool: Option<CandidatePool>,
    file: Option<SupportSet>,
}

impl SupportSource {
    /// Builds shared state (the candidate pool up to `max_degree`, or the
    /// loaded file) once for the whole run. `base_dir` resolves relative
    /// support file paths.
    pub fn new(family: Family, cfg: &ExperimentConfig, max_degree: usize, base_dir: &Path) -> Result<Self> {
        let pool = if family.is_extracted() {
            let spec = BasisSpec::new(cfg.basis, max_degree);
            Some(uniform_pool(cfg.pool.size, cfg.pool.radius_ratio, &spec)?)
        } else {
            None
        };
        let file = if family == Family::File {
            let rel = cfg.supports_file.as_ref().ok_or_else(|| CliError::Config("supports_file missing".into()))?;
            Some(load_supports(&base_dir.join(rel))?)
        } else {
            None
        };
        Ok(Self { family, radius_ratio: cfg.radius_ratio, seed: cfg.seed, pool, file })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn pool_size(&self) -> Option<usize> {
        self.pool.as_ref().map(CandidatePool::len)
    }

    /// The degree a loaded file supports, from its size.
    pub fn file_degree(&self) -> Option<usize> {
        self.file.as_ref().map(|s| degree_for_size(s.len()))
    }

    pub fn supports(&self, d: usize) -> histopol_core::Result<SupportSet> {
        match self.family {
            Family::Halton | Family::BojanovXu => {
                let nodes = self.family.nodes(d, self.seed).expect("point family");
                Ok(fitted_discs(&nodes, self.radius_ratio)?.0)
            }
            Family::Orbit => orbit_supports(d, &OrbitSchedule::chebyshev(d, self.radius_ratio)?),
            Family::Afs | Family::Dls => Ok(self.extract(d)?.set),
            Family::File => {
                let set = self.file.clone().expect("file loaded");
                if set.len() != basis_size(d) {
                    return Err(histopol_core::Error::SizeMismatch { expected: basis_size(d), got: set.len() });
                }
                Ok(set)
            }
        }
    }

    /// Extraction at degree `d` from the shared pool.
    pub fn extract(&self, d: usize) -> histopol_core::Result<ExtractedSet> {
        let pool = self.pool.as_ref().expect("extracted family has a pool").truncated(d);
        match self.family {
            Family::Afs => approximate_fekete(&pool),
            _ => discrete_leja(&pool),
        }
    }
}

/// Smallest `d` with `basis_size(d) >= n`.
pub fn degree_for_size(n: usize) -> usize {
    (0..).find(|&d| basis_size(d) >= n).expect("unbounded")
}

/// Reads a support set written by `extract` or by hand; an `"order"` field is allowed.
pub fn load_supports(path: &Path) -> Result<SupportSet> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let set: ExtractedSet =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(set.set)
}
