//! Spectral-sequence problem files, the named replays and the Gysin
//! deductions, all resolved against the fixture tables.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use g2topo::abelian::uct_cohomology;
use g2topo::homology::compute_homology;
use g2topo::specseq::{
    gysin_solve, BaseConnectivity, Constraint, FibrationProblem, GysinReport, LongExactTemplate, SearchBounds, Slot,
    Solution, SolveReport, Space,
};
use g2topo::FGAbelianGroup;
use serde::{Deserialize, Serialize};

use crate::fixtures::{FixtureFile, GysinFixture, GysinSide, ReplayFixture, SpaceJson};
use crate::json::{table_to_json, CellJson, GroupJson};
use crate::spaces::parse_space;

impl From<SpaceJson> for Space {
    fn from(s: SpaceJson) -> Space {
        match s {
            SpaceJson::Base => Space::Base,
            SpaceJson::Total => Space::Total,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintJson {
    PoincareDuality { space: SpaceJson, dim: usize },
    EulerCharacteristic { space: SpaceJson, value: i64 },
    CohomologyZero { space: SpaceJson, degree: usize },
    CyclicCohomology { space: SpaceJson, degree: usize },
    MaxRank { space: SpaceJson, degree: usize, max: usize },
}

impl From<&ConstraintJson> for Constraint {
    fn from(c: &ConstraintJson) -> Constraint {
        match *c {
            ConstraintJson::PoincareDuality { space, dim } => Constraint::PoincareDuality { space: space.into(), dim },
            ConstraintJson::EulerCharacteristic { space, value } => {
                Constraint::EulerCharacteristic { space: space.into(), value }
            }
            ConstraintJson::CohomologyZero { space, degree } => {
                Constraint::CohomologyZero { space: space.into(), degree }
            }
            ConstraintJson::CyclicCohomology { space, degree } => {
                Constraint::CyclicCohomology { space: space.into(), degree }
            }
            ConstraintJson::MaxRank { space, degree, max } => Constraint::MaxRank {
                space: space.into(),
                degree,
                max,
            },
        }
    }
}

/// Overrides for [`SearchBounds`]; missing fields keep the defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub max_rank: Option<usize>,
    pub max_torsion: Option<u64>,
    pub max_torsion_factors: Option<usize>,
    pub coefficient_bound: Option<u64>,
    pub node_budget: Option<u64>,
}

impl BoundsJson {
    pub fn resolve(&self) -> SearchBounds {
        let d = SearchBounds::default();
        SearchBounds {
            max_rank: self.max_rank.unwrap_or(d.max_rank),
            max_torsion: self.max_torsion.unwrap_or(d.max_torsion),
            max_torsion_factors: self.max_torsion_factors.unwrap_or(d.max_torsion_factors),
            coefficient_bound: self.coefficient_bound.unwrap_or(d.coefficient_bound),
            node_budget: self.node_budget.unwrap_or(d.node_budget),
        }
    }
}

/// A table given by fixture or space name, `"?"`, or cell by cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableRef {
    Name(String),
    Cells(Vec<CellJson>),
}

/// `{"fiber": ..., "base": ..., "total": ..., "constraints": [...], "bounds": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default)]
    pub name: Option<String>,
    pub fiber: TableRef,
    pub base: TableRef,
    pub total: TableRef,
    #[serde(default)]
    pub constraints: Vec<ConstraintJson>,
    #[serde(default)]
    pub bounds: BoundsJson,
    /// Proceed with untwisted coefficients over a base that is not simply
    /// connected.
    #[serde(default)]
    pub untwisted_override: bool,
}

/// Homology of a fixture table, or of a cell model named like `sphere:4`.
pub fn named_table(fixtures: &FixtureFile, name: &str) -> Result<Vec<FGAbelianGroup>> {
    if let Some(t) = fixtures.table(name) {
        return crate::json::table_from_json(&t.homology).with_context(|| format!("fixture `{name}`"));
    }
    let complex = parse_space(name).with_context(|| format!("`{name}` is neither a fixture nor a space"))?;
    Ok(compute_homology(name, &complex)?.groups)
}

fn resolve_slots(fixtures: &FixtureFile, table: &TableRef) -> Result<Option<Vec<Slot>>> {
    match table {
        TableRef::Name(n) if n.trim() == "?" => Ok(None),
        TableRef::Name(n) => Ok(Some(named_table(fixtures, n)?.into_iter().map(Slot::Known).collect())),
        TableRef::Cells(cells) => Ok(Some(cells.iter().map(CellJson::to_slot).collect::<Result<_>>()?)),
    }
}

impl ProblemFile {
    /// A wholly unknown base or total takes its length from the other two
    /// tables, `dim E = dim F + dim B`.
    pub fn to_problem(&self, fixtures: &FixtureFile) -> Result<(FibrationProblem, SearchBounds)> {
        let fiber: Vec<FGAbelianGroup> = match resolve_slots(fixtures, &self.fiber)? {
            Some(slots) => slots
                .into_iter()
                .map(|s| s.known().cloned().ok_or_else(|| anyhow!("the fiber must be fully known")))
                .collect::<Result<_>>()?,
            None => bail!("the fiber must be fully known"),
        };
        if fiber.is_empty() {
            bail!("empty fiber table");
        }
        let base = resolve_slots(fixtures, &self.base)?;
        let total = resolve_slots(fixtures, &self.total)?;
        let (base, total) = match (base, total) {
            (Some(b), Some(t)) => (b, t),
            (None, Some(t)) => {
                let len = (t.len() + 1)
                    .checked_sub(fiber.len())
                    .filter(|&l| l > 0)
                    .ok_or_else(|| anyhow!("total is shorter than the fiber"))?;
                (vec![Slot::Unknown; len], t)
            }
            (Some(b), None) => {
                let len = b.len() + fiber.len() - 1;
                (b, vec![Slot::Unknown; len])
            }
            (None, None) => bail!("base and total cannot both be wholly unknown"),
        };
        let connectivity = if self.untwisted_override {
            BaseConnectivity::UntwistedOverride
        } else {
            BaseConnectivity::SimplyConnected
        };
        let problem = FibrationProblem {
            name: self.name.clone().unwrap_or_else(|| "problem".into()),
            fiber,
            base,
            total,
            connectivity,
            constraints: self.constraints.iter().map(Constraint::from).collect(),
        };
        Ok((problem, self.bounds.resolve()))
    }
}

/// A replay with every table known, and the deduction variant when the
/// fixture hides some entries.
pub struct ReplayProblems {
    pub known: FibrationProblem,
    pub deduction: Option<FibrationProblem>,
}

pub fn replay_problems(fixtures: &FixtureFile, replay: &ReplayFixture) -> Result<ReplayProblems> {
    let fiber = named_table(fixtures, &replay.fiber)?;
    let base = named_table(fixtures, &replay.base)?;
    let total = named_table(fixtures, &replay.total)?;
    let constraints: Vec<Constraint> = replay.constraints.iter().map(Constraint::from).collect();
    let known = FibrationProblem {
        name: replay.name.clone(),
        fiber: fiber.clone(),
        base: base.iter().cloned().map(Slot::Known).collect(),
        total: total.iter().cloned().map(Slot::Known).collect(),
        connectivity: BaseConnectivity::SimplyConnected,
        constraints: constraints.clone(),
    };
    let deduction = replay.unknown.as_ref().map(|u| {
        let mut p = known.clone();
        let slots = match u.space {
            SpaceJson::Base => &mut p.base,
            SpaceJson::Total => &mut p.total,
        };
        match &u.degrees {
            Some(degrees) => {
                for &d in degrees {
                    if let Some(s) = slots.get_mut(d) {
                        *s = Slot::Unknown;
                    }
                }
            }
            None => slots.iter_mut().for_each(|s| *s = Slot::Unknown),
        }
        p
    });
    Ok(ReplayProblems { known, deduction })
}

/// One solution in the serialized report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionJson {
    pub base: Vec<GroupJson>,
    pub total: Vec<GroupJson>,
    pub nonzero_differentials: usize,
    pub necessary_only: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveJson {
    pub name: String,
    pub nodes: u64,
    pub solutions: Vec<SolutionJson>,
}

pub fn solution_json(s: &Solution) -> Result<SolutionJson> {
    Ok(SolutionJson {
        base: table_to_json(&s.base)?,
        total: table_to_json(&s.total)?,
        nonzero_differentials: s.differentials.iter().map(|d| d.maps().filter(|(_, m)| !m.is_zero()).count()).sum(),
        necessary_only: s.necessary_only,
    })
}

pub fn solve_json(name: &str, report: &SolveReport) -> Result<SolveJson> {
    Ok(SolveJson {
        name: name.into(),
        nodes: report.nodes,
        solutions: report.solutions.iter().map(solution_json).collect::<Result<_>>()?,
    })
}

/// Runs the Gysin fixtures in file order so that later ones can use values
/// forced by earlier ones.
pub fn run_gysin_chain(fixtures: &FixtureFile, bounds: SearchBounds) -> Result<BTreeMap<String, GysinReport>> {
    let mut done = BTreeMap::new();
    for g in &fixtures.gysin {
        let template = gysin_template(fixtures, g, &done)?;
        let report = gysin_solve(&template, bounds).with_context(|| format!("Gysin deduction `{}`", g.name))?;
        done.insert(g.name.clone(), report);
    }
    Ok(done)
}

pub fn gysin_template(
    fixtures: &FixtureFile,
    g: &GysinFixture,
    done: &BTreeMap<String, GysinReport>,
) -> Result<LongExactTemplate> {
    let len = g.degree + g.sphere_dim + 3;
    let base = side_slots(fixtures, &g.base, len, done)?;
    let total = side_slots(fixtures, &g.total, len, done)?;
    Ok(LongExactTemplate::gysin(&base, &total, g.sphere_dim, g.degree, g.degree))
}

fn side_slots(
    fixtures: &FixtureFile,
    side: &GysinSide,
    len: usize,
    done: &BTreeMap<String, GysinReport>,
) -> Result<Vec<Slot>> {
    let mut slots = vec![Slot::Unknown; len];
    if let Some(name) = &side.table {
        let homology = named_table(fixtures, name)?;
        // H^n = F_n + T_{n-1} needs homology through degree n only
        let visible = match side.known_through {
            Some(k) => homology.iter().take(k + 1).cloned().collect(),
            None => homology,
        };
        let cohomology = uct_cohomology(&visible);
        let top = side.known_through.unwrap_or(usize::MAX);
        for (n, slot) in slots.iter_mut().enumerate() {
            if n <= top {
                *slot = Slot::Known(cohomology.get(n).cloned().unwrap_or_default());
            }
        }
    }
    for k in &side.known {
        let group = match (&k.group, &k.from) {
            (Some(g), None) => g.to_group()?,
            (None, Some(from)) => {
                let (fixture, label) = from
                    .split_once(':')
                    .ok_or_else(|| anyhow!("`{from}` should read <fixture>:<label>"))?;
                let report = done
                    .get(fixture)
                    .ok_or_else(|| anyhow!("`{fixture}` must come earlier in the Gysin list"))?;
                report
                    .forced(label)
                    .cloned()
                    .ok_or_else(|| anyhow!("`{from}` is not forced to a single value"))?
            }
            _ => bail!("degree {}: give exactly one of `group` and `from`", k.degree),
        };
        if k.degree >= slots.len() {
            slots.resize(k.degree + 1, Slot::Unknown);
        }
        slots[k.degree] = Slot::Known(group);
    }
    Ok(slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::EMBEDDED_FIXTURES;

    fn fixtures() -> FixtureFile {
        FixtureFile::parse(EMBEDDED_FIXTURES).unwrap()
    }

    #[test]
    fn problem_file_lengths() {
        let f = fixtures();
        let p: ProblemFile =
            serde_json::from_str(r#"{"fiber": "s1", "base": "?", "total": "v27", "bounds": {"max_rank": 2}}"#).unwrap();
        let (problem, bounds) = p.to_problem(&f).unwrap();
        assert_eq!(problem.base.len(), 11);
        assert_eq!(bounds.max_rank, 2);
        assert_eq!(bounds.max_torsion, SearchBounds::default().max_torsion);
        let p: ProblemFile = serde_json::from_str(r#"{"fiber": "sphere:1", "base": ["Z","0","Z"], "total": "?"}"#).unwrap();
        assert_eq!(p.to_problem(&f).unwrap().0.total.len(), 4);
        let p: ProblemFile = serde_json::from_str(r#"{"fiber": "s1", "base": "?", "total": "?"}"#).unwrap();
        assert!(p.to_problem(&f).is_err());
    }

    #[test]
    fn constraints_parse() {
        let c: ConstraintJson = serde_json::from_str(r#"{"kind": "max_rank", "space": "total", "degree": 5, "max": 1}"#).unwrap();
        assert_eq!(
            Constraint::from(&c),
            Constraint::MaxRank {
                space: Space::Total,
                degree: 5,
                max: 1
            }
        );
    }

    #[test]
    fn replay_hides_requested_degrees() {
        let f = fixtures();
        let r = replay_problems(&f, f.replay("so4-g2-ass").unwrap()).unwrap();
        let d = r.deduction.unwrap();
        let hidden: Vec<usize> = (0..d.total.len()).filter(|&n| d.total[n] == Slot::Unknown).collect();
        assert_eq!(hidden, [5, 6, 7, 8, 9]);
        assert!(r.known.total.iter().all(|s| s.known().is_some()));
    }
}
