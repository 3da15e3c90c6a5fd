//! The versioned fixture file shared by the CLI, the report and the tests.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::json::GroupJson;
use crate::problems::ConstraintJson;

pub const FIXTURE_ENV: &str = "G2TOPO_FIXTURES";
pub const EMBEDDED_FIXTURES: &str = include_str!("../fixtures/tables.json");
pub const FIXTURE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureFile {
    pub version: u32,
    pub tables: Vec<TableFixture>,
    #[serde(default)]
    pub scalars: Vec<ScalarFixture>,
    #[serde(default)]
    pub replays: Vec<ReplayFixture>,
    #[serde(default)]
    pub gysin: Vec<GysinFixture>,
    #[serde(default)]
    pub rings: Vec<RingFixture>,
    #[serde(default)]
    pub ring_homs: Vec<RingHomFixture>,
    #[serde(default)]
    pub g2: Vec<G2Fixture>,
}

/// A homology table, optionally tied to a cell model by space name.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFixture {
    pub name: String,
    pub citation: String,
    pub homology: Vec<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientable: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalarFixture {
    pub name: String,
    pub citation: String,
    #[serde(flatten)]
    pub check: ScalarCheck,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarCheck {
    /// Betti numbers as polynomial coefficients.
    Poincare { table: String, value: Vec<usize> },
    Euler { table: String, value: i64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplayFixture {
    pub name: String,
    pub citation: String,
    pub fiber: String,
    pub base: String,
    pub total: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknown: Option<Unknowns>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintJson>,
    pub expect: Expectation,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceJson {
    Base,
    Total,
}

/// Which entries of a replay are hidden from the solver. No `degrees`
/// means the whole table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Unknowns {
    pub space: SpaceJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// At least one consistent scenario with every table known.
    Exists,
    /// The hidden entries are recovered uniquely and match the fixture.
    Unique,
    /// Every scenario has these total-space groups.
    ForallTotal(Vec<DegreeExpectation>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeExpectation {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GysinFixture {
    pub name: String,
    pub citation: String,
    pub sphere_dim: usize,
    pub base: GysinSide,
    pub total: GysinSide,
    /// Start `n` of the stretch `H^n(B) -> H^{n+r+1}(B) -> H^{n+r+1}(E) -> H^{n+1}(B)`.
    pub degree: usize,
    pub forced: Vec<ForcedValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
}

/// Cohomology of one side of a sphere bundle. With `table`, degrees up to
/// `known_through` (or all) come from universal coefficients; the rest are
/// unknown. `known` entries override.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GysinSide {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_through: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub known: Vec<KnownCohomology>,
}

/// A cohomology group given outright or taken from another deduction as
/// `"<fixture>:<label>"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnownCohomology {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForcedValue {
    pub label: String,
    pub group: GroupJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationJson {
    pub coeff: String,
    pub gens: Vec<(String, usize)>,
    pub rels: Vec<String>,
    #[serde(default)]
    pub exterior: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingFixture {
    pub name: String,
    pub citation: String,
    pub cutoff: usize,
    pub summands: Vec<PresentationJson>,
    pub compare: RingCompare,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
}

/// What the additive structure of a ring is checked against.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingCompare {
    /// Integral cohomology of a table by universal coefficients.
    Uct { uct_of: String },
    ModPUct { mod_p_uct_of: String, prime: u64 },
    /// Monomial count of a polynomial ring on generators of these degrees.
    Polynomial { polynomial_on: Vec<usize>, prime: u64 },
    /// Mod-p reduction of this integral ring against another ring's ranks.
    ModPRanksOf { mod_p_ranks_of: String, prime: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingHomFixture {
    pub name: String,
    pub citation: String,
    pub source: String,
    pub target: String,
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub pins: Vec<(String, String)>,
    pub expect: HomExpectation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomExpectation {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct G2Fixture {
    pub name: String,
    pub citation: String,
    #[serde(flatten)]
    pub check: G2Check,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum G2Check {
    Phi0 { terms: Vec<(Vec<usize>, i64)> },
    StarPhi0 { terms: Vec<(Vec<usize>, i64)> },
    Calibration { samples: usize },
    Classify { plane: String, class: String },
    Perp { samples: usize },
    Metric,
    Flow { samples: usize, tolerance: f64 },
    HlPair { p1: i64, euler: i64, expect: bool },
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: FixtureFile = serde_json::from_str(text).context("malformed fixture file")?;
        file.validate()?;
        Ok(file)
    }

    /// Explicit path, then the environment override, then the copy built
    /// into the binary.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let from_env = std::env::var_os(FIXTURE_ENV);
        let path = path.map(Path::to_path_buf).or_else(|| from_env.map(Into::into));
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                Self::parse(&text).with_context(|| format!("in {}", p.display()))
            }
            None => Self::parse(EMBEDDED_FIXTURES),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.version != FIXTURE_VERSION {
            bail!("fixture version {} is not {FIXTURE_VERSION}", self.version);
        }
        let mut seen = BTreeSet::new();
        for (name, citation) in self.names() {
            if citation.trim().is_empty() {
                bail!("fixture `{name}` has no citation");
            }
            if !seen.insert(name) {
                bail!("fixture name `{name}` is used twice");
            }
        }
        Ok(())
    }

    /// Every fixture as `(name, citation)`.
    pub fn names(&self) -> Vec<(&str, &str)> {
        let mut out: Vec<(&str, &str)> = Vec::new();
        out.extend(self.tables.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out.extend(self.scalars.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out.extend(self.replays.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out.extend(self.gysin.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out.extend(self.rings.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out.extend(self.ring_homs.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out.extend(self.g2.iter().map(|f| (f.name.as_str(), f.citation.as_str())));
        out
    }

    pub fn table(&self, name: &str) -> Option<&TableFixture> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn ring(&self, name: &str) -> Option<&RingFixture> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn replay(&self, name: &str) -> Option<&ReplayFixture> {
        self.replays.iter().find(|r| r.name == name)
    }

    pub fn gysin_fixture(&self, name: &str) -> Option<&GysinFixture> {
        self.gysin.iter().find(|g| g.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_file_parses() {
        let f = FixtureFile::parse(EMBEDDED_FIXTURES).unwrap();
        assert!(f.table("g37").is_some());
        assert_eq!(f.replays.len(), 5);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(EMBEDDED_FIXTURES).unwrap();
        let first = v["tables"][0].clone();
        v["tables"].as_array_mut().unwrap().push(first);
        assert!(FixtureFile::parse(&v.to_string()).is_err());
    }

    #[test]
    fn wrong_version_is_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(EMBEDDED_FIXTURES).unwrap();
        v["version"] = 2.into();
        assert!(FixtureFile::parse(&v.to_string()).is_err());
    }
}
