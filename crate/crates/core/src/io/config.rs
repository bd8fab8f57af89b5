//! JSON cluster configuration.
//!
//! ```json
//! {
//!   "group": "dihedral",
//!   "m": 5,
//!   "shells": [[1.1, 1.3], [1, 0]],
//!   "limits": { "max_points": 5000, "max_radius": 14, "max_coordinate": 200 },
//!   "output": { "format": "csv" }
//! }
//! ```
//!
//! `group` is `"dihedral"` (needs `m`), `"icosahedral"`, or `"explicit"`;
//! for the latter `shells` lists the half-points `v_1 … v_k` themselves.
//! Unknown keys are rejected.

use std::path::Path;

use serde::Deserialize;

use crate::embedding::{build_embedding, Embedding};
use crate::enumerate::EnumerationLimits;
use crate::error::{Error, Result};
use crate::group::{
    build_cluster, dihedral_generators, icosahedral_generators, orbit, Cluster, GeneratorSet,
    DEFAULT_DEDUP_TOL,
};
use crate::io::export::Format;
use crate::strip::{build_constraints, StripConstraintSet};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    group: String,
    m: Option<u32>,
    shells: Vec<Vec<f64>>,
    limits: Option<RawLimits>,
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLimits {
    max_points: Option<usize>,
    max_radius: Option<f64>,
    max_coordinate: Option<i32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    Dihedral { m: u32 },
    Icosahedral,
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSpec {
    pub group: GroupSpec,
    pub shells: Vec<Vec<f64>>,
    pub limits: EnumerationLimits,
    pub format: Format,
}

pub fn load_config(path: &Path) -> Result<ClusterSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading config {}", path.display()), e))?;
    parse_config(&text, path)
}

pub fn parse_config(text: &str, path: &Path) -> Result<ClusterSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.validate()
}

impl RawSpec {
    fn validate(self) -> Result<ClusterSpec> {
        let group = match (self.group.as_str(), self.m) {
            ("dihedral", Some(m)) if m >= 2 => GroupSpec::Dihedral { m },
            ("dihedral", Some(m)) => {
                return Err(Error::validation("m", format!("must be >= 2, got {m}")))
            }
            ("dihedral", None) => {
                return Err(Error::validation("m", "required for the dihedral group"))
            }
            (_, Some(_)) => {
                return Err(Error::validation("m", "only applies to the dihedral group"))
            }
            ("icosahedral", None) => GroupSpec::Icosahedral,
            ("explicit", None) => GroupSpec::Explicit,
            (other, None) => {
                return Err(Error::validation(
                    "group",
                    format!("expected dihedral, icosahedral or explicit, got {other:?}"),
                ))
            }
        };

        if self.shells.is_empty() {
            return Err(Error::validation("shells", "at least one shell is required"));
        }
        let dim = match group {
            GroupSpec::Dihedral { .. } => 2,
            GroupSpec::Icosahedral => 3,
            GroupSpec::Explicit => self.shells[0].len(),
        };
        for (i, s) in self.shells.iter().enumerate() {
            let field = format!("shells[{i}]");
            if s.len() != dim || dim == 0 {
                return Err(Error::validation(
                    field,
                    format!("expected {dim} coordinates, got {}", s.len()),
                ));
            }
            if s.iter().any(|c| !c.is_finite()) {
                return Err(Error::validation(field, "coordinates must be finite"));
            }
            if s.iter().all(|&c| c == 0.0) {
                return Err(Error::validation(field, "seed must be nonzero"));
            }
        }

        let mut limits = EnumerationLimits::default();
        if let Some(l) = self.limits {
            if l.max_points.is_some() || l.max_radius.is_some() {
                limits.max_points = l.max_points;
                limits.max_physical_radius = l.max_radius;
            }
            if let Some(c) = l.max_coordinate {
                limits.max_coordinate = c;
            }
        }
        limits.validate()?;

        let format = match self.output.and_then(|o| o.format) {
            None => Format::Csv,
            Some(f) => f.parse().map_err(|_| {
                Error::validation("output.format", format!("expected csv or json, got {f:?}"))
            })?,
        };

        Ok(ClusterSpec {
            group,
            shells: self.shells,
            limits,
            format,
        })
    }
}

impl ClusterSpec {
    pub fn generators(&self) -> Result<Option<GeneratorSet>> {
        Ok(match self.group {
            GroupSpec::Dihedral { m } => Some(dihedral_generators(m)?),
            GroupSpec::Icosahedral => Some(icosahedral_generators()),
            GroupSpec::Explicit => None,
        })
    }

    pub fn cluster(&self) -> Result<Cluster> {
        match self.generators()? {
            Some(gens) => {
                let shells = self
                    .shells
                    .iter()
                    .map(|s| orbit(&gens, s, DEFAULT_DEDUP_TOL))
                    .collect::<Result<Vec<_>>>()?;
                build_cluster(&shells)
            }
            None => Cluster::from_half_points(self.shells.clone()),
        }
    }

    /// Cluster → embedding → constraint set.
    pub fn prepare(&self) -> Result<(Embedding, StripConstraintSet)> {
        let emb = build_embedding(self.cluster()?)?;
        let cs = build_constraints(&emb)?;
        Ok((emb, cs))
    }
}
