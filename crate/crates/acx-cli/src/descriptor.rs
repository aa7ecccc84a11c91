//! The JSON descriptor file format (version 1) and its conversion into core
//! manifold descriptors. Unknown fields are rejected and the version is
//! checked, so fixtures stay honest as the schema evolves.

use acx_core::charclass::ChernVector;
use acx_core::graded::{
    FundamentalSpec, GeneratorSpec, GradedElement, MonomialSpec, RingModel, RingSpec,
};
use acx_core::manifold::{Flag, ManifoldData, ManifoldError, SummandList};
use acx_core::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming a directory searched when a descriptor path
/// does not resolve as given.
pub const FIXTURE_DIR_ENV: &str = "ACX_FIXTURE_DIR";

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("`{path}` is not a valid descriptor file: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("unsupported descriptor version {found} (expected {SCHEMA_VERSION})")]
    Version { found: u32 },
    #[error("duplicate manifold name `{name}`")]
    DuplicateManifold { name: String },
    #[error("no manifold named `{name}` in the descriptor file")]
    UnknownManifold { name: String },
    #[error("no summand list named `{name}` in the descriptor file")]
    UnknownList { name: String },
    #[error("manifold `{name}` is invalid: {source}")]
    Invalid { name: String, source: ManifoldError },
    #[error("manifold `{name}` has no tangent Chern data")]
    MissingChernData { name: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub version: u32,
    pub manifolds: Vec<ManifoldEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub summand_lists: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldEntry {
    pub name: String,
    pub dim: u32,
    pub euler: i64,
    #[serde(default)]
    pub signature: i64,
    pub ring: RingEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tangent_chern: Option<ChernEntry>,
    #[serde(default)]
    pub flags: Vec<Flag>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingEntry {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorEntry>,
    pub top_degree: u32,
    /// Name -> exponent map; the empty map designates the formal top class
    /// of a point-like model.
    pub fundamental: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zero_monomials: Vec<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identify_with_fundamental: Vec<BTreeMap<String, u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_vanishes: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernEntry {
    pub rank: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    /// Which Chern class this is: `j` for `c_j` (degree `2j`).
    pub j: u32,
    pub terms: Vec<TermEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    /// Generator name -> exponent; empty for the unit monomial. The formal
    /// top class of a point-like ring is spelled `[M]`.
    #[serde(default)]
    pub monomial: BTreeMap<String, u32>,
    pub coeff: Rational,
}

/// Resolves a descriptor path, falling back to `$ACX_FIXTURE_DIR/<path>`
/// when the path does not exist as given.
pub fn resolve_path(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    if path.is_relative() {
        if let Ok(dir) = std::env::var(FIXTURE_DIR_ENV) {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

pub fn load_descriptor(path: &Path) -> Result<DescriptorFile, DescriptorError> {
    let resolved = resolve_path(path);
    let text = std::fs::read_to_string(&resolved).map_err(|source| DescriptorError::Read {
        path: resolved.clone(),
        source,
    })?;
    let file: DescriptorFile =
        serde_json::from_str(&text).map_err(|source| DescriptorError::Parse {
            path: resolved,
            source,
        })?;
    if file.version != SCHEMA_VERSION {
        return Err(DescriptorError::Version {
            found: file.version,
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for m in &file.manifolds {
        if !seen.insert(&m.name) {
            return Err(DescriptorError::DuplicateManifold {
                name: m.name.clone(),
            });
        }
    }
    Ok(file)
}

fn monomial_spec(map: &BTreeMap<String, u32>) -> MonomialSpec {
    map.iter().map(|(n, e)| (n.clone(), *e)).collect()
}

impl ManifoldEntry {
    pub fn to_manifold(&self) -> Result<ManifoldData, DescriptorError> {
        let invalid = |source: ManifoldError| DescriptorError::Invalid {
            name: self.name.clone(),
            source,
        };
        let spec = RingSpec {
            top_degree: self.ring.top_degree,
            generators: self
                .ring
                .generators
                .iter()
                .map(|g| GeneratorSpec {
                    name: g.name.clone(),
                    degree: g.degree,
                    power_vanishes: g.power_vanishes,
                })
                .collect(),
            zero_monomials: self.ring.zero_monomials.iter().map(monomial_spec).collect(),
            identify_with_fundamental: self
                .ring
                .identify_with_fundamental
                .iter()
                .map(monomial_spec)
                .collect(),
            fundamental: if self.ring.fundamental.is_empty() {
                FundamentalSpec::FormalTop
            } else {
                FundamentalSpec::Monomial(monomial_spec(&self.ring.fundamental))
            },
        };
        let ring = RingModel::new(spec).map_err(|e| invalid(e.into()))?;
        let tangent_chern = match &self.tangent_chern {
            None => None,
            Some(entry) => Some(build_chern(entry, &ring, &self.name)?),
        };
        ManifoldData::new(
            self.name.clone(),
            self.dim,
            self.euler,
            self.signature,
            ring,
            tangent_chern,
            self.flags.iter().copied(),
        )
        .map_err(invalid)
    }
}

fn build_chern(
    entry: &ChernEntry,
    ring: &Arc<RingModel>,
    name: &str,
) -> Result<ChernVector<Rational>, DescriptorError> {
    let invalid = |source: ManifoldError| DescriptorError::Invalid {
        name: name.to_owned(),
        source,
    };
    // Classes above half the dimension live past the truncation degree and
    // are zero in the ring model; they are dropped like torsion classes.
    let cap = ring.top_degree() / 2;
    let max_j = entry
        .classes
        .iter()
        .map(|c| c.j)
        .filter(|j| *j <= cap)
        .max()
        .unwrap_or(0);
    let mut classes = vec![GradedElement::zero(ring); max_j as usize];
    for class in &entry.classes {
        if class.j < 1 || class.j > cap {
            continue;
        }
        let mut elem = GradedElement::zero(ring);
        for term in &class.terms {
            let pairs: Vec<(&str, u32)> = term
                .monomial
                .iter()
                .map(|(n, e)| (n.as_str(), *e))
                .collect();
            let t = GradedElement::term(ring, &pairs, term.coeff.clone())
                .map_err(|e| invalid(e.into()))?;
            elem = elem.add(&t).map_err(|e| invalid(e.into()))?;
        }
        classes[class.j as usize - 1] = elem;
    }
    ChernVector::new(entry.rank, ring, classes).map_err(|e| invalid(e.into()))
}

impl DescriptorFile {
    pub fn manifold(&self, name: &str) -> Result<ManifoldData, DescriptorError> {
        let entry = self
            .manifolds
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| DescriptorError::UnknownManifold {
                name: name.to_owned(),
            })?;
        entry.to_manifold()
    }

    pub fn summand_list(&self, name: &str) -> Result<SummandList, DescriptorError> {
        let names = self
            .summand_lists
            .get(name)
            .ok_or_else(|| DescriptorError::UnknownList {
                name: name.to_owned(),
            })?;
        let summands = names
            .iter()
            .map(|n| self.manifold(n))
            .collect::<Result<Vec<_>, _>>()?;
        SummandList::new(summands).map_err(|source| DescriptorError::Invalid {
            name: name.to_owned(),
            source,
        })
    }
}
