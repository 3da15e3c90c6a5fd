//! Presentation files and the additive comparisons run on ring fixtures.

use std::collections::BTreeMap;

use anyhow::{anyhow, Context, Result};
use g2topo::abelian::{uct_cohomology, uct_mod_p_cohomology};
use g2topo::gradedring::{Coefficients, RingMap, RingPresentation, SplitPresentation};
use g2topo::homology::compute_homology;
use g2topo::FGAbelianGroup;
use serde::{Deserialize, Serialize};

use crate::fixtures::{FixtureFile, PresentationJson, RingCompare, RingFixture};
use crate::json::table_from_json;
use crate::spaces::parse_space;

impl PresentationJson {
    pub fn to_presentation(&self) -> Result<RingPresentation> {
        let coeff = Coefficients::parse(&self.coeff)?;
        let gens: Vec<(&str, usize)> = self.gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let rels: Vec<&str> = self.rels.iter().map(String::as_str).collect();
        let mut p = if self.exterior {
            RingPresentation::exterior(coeff, &gens, &rels)?
        } else {
            RingPresentation::parse(coeff, &gens, &rels)?
        };
        p.annotations = self.annotations.clone();
        Ok(p)
    }
}

/// A presentation file: one presentation, or `{"summands": [...]}` for
/// `A ⊕ B ⊕ …`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingFile {
    Split { summands: Vec<PresentationJson> },
    Single(PresentationJson),
}

impl RingFile {
    pub fn to_split(&self) -> Result<SplitPresentation> {
        match self {
            RingFile::Split { summands } => split_of(summands),
            RingFile::Single(p) => Ok(p.to_presentation()?.into()),
        }
    }
}

pub fn split_of(summands: &[PresentationJson]) -> Result<SplitPresentation> {
    let parts = summands
        .iter()
        .enumerate()
        .map(|(i, s)| s.to_presentation().with_context(|| format!("summand {i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SplitPresentation::new(parts))
}

/// `{"images": {"x": "d", ...}, "pins": [["xy", "d^2"], ...]}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MapFile {
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub pins: Vec<(String, String)>,
}

impl From<MapFile> for RingMap {
    fn from(m: MapFile) -> RingMap {
        RingMap {
            images: m.images,
            pins: m.pins,
        }
    }
}

/// Monomials `y_1^{a_1} … y_k^{a_k}` in each degree up to `cutoff`.
pub fn monomial_counts(degrees: &[usize], cutoff: usize) -> Vec<usize> {
    let mut counts = vec![0; cutoff + 1];
    counts[0] = 1;
    for &d in degrees.iter().filter(|&&d| d > 0) {
        for n in d..=cutoff {
            counts[n] += counts[n - d];
        }
    }
    counts
}

/// `dim H^n(X; Z/p) = dim H^n ⊗ Z/p + dim Tor(H^{n+1}, Z/p)`, from integral
/// cohomology. The last degree is dropped since it needs `H^{n+1}`.
pub fn mod_p_from_cohomology(groups: &[FGAbelianGroup], p: u64) -> Vec<usize> {
    (0..groups.len().saturating_sub(1))
        .map(|n| groups[n].mod_p_rank(p) + groups[n + 1].factors_divisible_by(p))
        .collect()
}

/// Homology of a fixture table, computed from cells when the fixture names
/// a model.
pub fn homology_for(fixtures: &FixtureFile, table: &str) -> Result<(Vec<FGAbelianGroup>, &'static str)> {
    let t = fixtures.table(table).ok_or_else(|| anyhow!("no table fixture `{table}`"))?;
    match &t.space {
        Some(space) => Ok((compute_homology(table, &parse_space(space)?)?.groups, "computed")),
        None => Ok((table_from_json(&t.homology)?, "fixture")),
    }
}

/// The two sides of a ring comparison, rendered.
pub struct RingComparison {
    pub computed: String,
    pub expected: String,
    pub source: String,
    pub passed: bool,
}

fn pad<T: Clone + Default>(mut v: Vec<T>, len: usize) -> Vec<T> {
    v.resize(len, T::default());
    v
}

fn render_groups(g: &[FGAbelianGroup]) -> String {
    let parts: Vec<String> = g.iter().map(FGAbelianGroup::notation).collect();
    format!("({})", parts.join(", "))
}

fn render_ranks(r: &[usize]) -> String {
    format!("{r:?}")
}

pub fn compare_ring(fixtures: &FixtureFile, ring: &RingFixture) -> Result<RingComparison> {
    let split = split_of(&ring.summands).with_context(|| format!("ring `{}`", ring.name))?;
    let cutoff = ring.cutoff;
    let len = cutoff + 1;
    let out = match &ring.compare {
        RingCompare::Uct { uct_of } => {
            let (homology, source) = homology_for(fixtures, uct_of)?;
            let computed = split.graded_dimensions(cutoff).groups().to_vec();
            let expected = pad(uct_cohomology(&homology), len);
            RingComparison {
                passed: computed == expected[..len],
                computed: render_groups(&computed),
                expected: render_groups(&expected[..len]),
                source: format!("universal coefficients of {source} {uct_of}"),
            }
        }
        RingCompare::ModPUct { mod_p_uct_of, prime } => {
            let (homology, source) = homology_for(fixtures, mod_p_uct_of)?;
            let computed = split.graded_dimensions(cutoff).mod_p_ranks(*prime);
            let expected = pad(uct_mod_p_cohomology(&homology, *prime), len);
            RingComparison {
                passed: computed == expected[..len],
                computed: render_ranks(&computed),
                expected: render_ranks(&expected[..len]),
                source: format!("mod {prime} universal coefficients of {source} {mod_p_uct_of}"),
            }
        }
        RingCompare::Polynomial { polynomial_on, prime } => {
            let computed = split.graded_dimensions(cutoff).mod_p_ranks(*prime);
            let expected = monomial_counts(polynomial_on, cutoff);
            RingComparison {
                passed: computed == expected,
                computed: render_ranks(&computed),
                expected: render_ranks(&expected),
                source: format!("monomial count on degrees {polynomial_on:?}"),
            }
        }
        RingCompare::ModPRanksOf { mod_p_ranks_of, prime } => {
            let other = fixtures
                .ring(mod_p_ranks_of)
                .ok_or_else(|| anyhow!("no ring fixture `{mod_p_ranks_of}`"))?;
            let integral = split.graded_dimensions(cutoff + 1);
            let computed = mod_p_from_cohomology(integral.groups(), *prime);
            let expected = split_of(&other.summands)?.graded_dimensions(cutoff).mod_p_ranks(*prime);
            RingComparison {
                passed: computed == expected,
                computed: render_ranks(&computed),
                expected: render_ranks(&expected),
                source: format!("mod {prime} reduction against {mod_p_ranks_of}"),
            }
        }
    };
    Ok(out)
}
