use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::abelian::{hom_homology, hom_iter, AbelianError, FGAbelianGroup, GroupHom};

use super::solver::{SearchBounds, Slot};
use super::SpecSeqError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSlot {
    Known(GroupHom),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateNode {
    pub label: String,
    pub group: Slot,
}

/// A finite stretch `A_0 -> A_1 -> … -> A_m` of a long exact sequence.
/// Exactness is required at every interior node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongExactTemplate {
    nodes: Vec<TemplateNode>,
    maps: Vec<MapSlot>,
}

impl LongExactTemplate {
    pub fn new(nodes: Vec<TemplateNode>, maps: Vec<MapSlot>) -> Result<Self, SpecSeqError> {
        if nodes.is_empty() || maps.len() + 1 != nodes.len() {
            return Err(SpecSeqError::Abelian(AbelianError::SequenceLength {
                groups: nodes.len(),
                maps: maps.len(),
            }));
        }
        Ok(LongExactTemplate { nodes, maps })
    }

    pub fn nodes(&self) -> &[TemplateNode] {
        &self.nodes
    }

    /// Gysin sequence of a sphere bundle `S^r -> E -> B` in cohomology,
    /// `H^n(B) -> H^{n+r+1}(B) -> H^{n+r+1}(E) -> H^{n+1}(B) -> …`, for
    /// `n` in `from..=to`. Degrees outside a table are zero; all maps are
    /// unknown.
    pub fn gysin(base: &[Slot], total: &[Slot], sphere_dim: usize, from: usize, to: usize) -> Self {
        let slot = |t: &[Slot], k: usize| t.get(k).cloned().unwrap_or(Slot::Known(FGAbelianGroup::zero()));
        let mut nodes = Vec::new();
        for n in from..=to {
            let k = n + sphere_dim + 1;
            nodes.push(TemplateNode {
                label: format!("H^{n}(B)"),
                group: slot(base, n),
            });
            nodes.push(TemplateNode {
                label: format!("H^{k}(B)"),
                group: slot(base, k),
            });
            nodes.push(TemplateNode {
                label: format!("H^{k}(E)"),
                group: slot(total, k),
            });
        }
        nodes.push(TemplateNode {
            label: format!("H^{}(B)", to + 1),
            group: slot(base, to + 1),
        });
        let maps = (1..nodes.len()).map(|_| MapSlot::Unknown).collect();
        LongExactTemplate { nodes, maps }
    }
}

/// Values of each node over all exact completions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinReport {
    pub labels: Vec<String>,
    pub values: Vec<BTreeSet<FGAbelianGroup>>,
}

impl GysinReport {
    pub fn is_consistent(&self) -> bool {
        self.values.iter().all(|v| !v.is_empty())
    }

    /// The single possible value of a node, if exactness forces it.
    pub fn forced(&self, label: &str) -> Option<&FGAbelianGroup> {
        let i = self.labels.iter().position(|l| l == label)?;
        let v = &self.values[i];
        (v.len() == 1).then(|| v.iter().next().expect("one element"))
    }
}

struct Search<'a> {
    template: &'a LongExactTemplate,
    bounds: SearchBounds,
    candidates: Vec<FGAbelianGroup>,
    nodes: u64,
    groups: Vec<FGAbelianGroup>,
    maps: Vec<GroupHom>,
    values: Vec<BTreeSet<FGAbelianGroup>>,
}

impl Search<'_> {
    fn run(&mut self) -> Result<(), SpecSeqError> {
        let i = self.groups.len();
        if i == self.template.nodes.len() {
            for (k, g) in self.groups.iter().enumerate() {
                self.values[k].insert(g.clone());
            }
            return Ok(());
        }
        let options = match &self.template.nodes[i].group {
            Slot::Known(g) => alloc::vec![g.clone()],
            Slot::Unknown => self.candidates.clone(),
        };
        for g in options {
            self.groups.push(g.clone());
            if i == 0 {
                self.run()?;
            } else {
                let maps: Vec<GroupHom> = match &self.template.maps[i - 1] {
                    MapSlot::Known(h) => {
                        if h.domain() == &self.groups[i - 1] && h.codomain() == &g {
                            alloc::vec![h.clone()]
                        } else {
                            Vec::new()
                        }
                    }
                    MapSlot::Unknown => {
                        hom_iter(&self.groups[i - 1], &g, Some(self.bounds.coefficient_bound))?.collect()
                    }
                };
                for h in maps {
                    self.nodes += 1;
                    if self.nodes > self.bounds.node_budget {
                        return Err(SpecSeqError::BudgetExceeded { nodes: self.nodes });
                    }
                    if i >= 2 && !exact_at(&self.groups[i - 1], &self.maps[i - 2], &h)? {
                        continue;
                    }
                    self.maps.push(h);
                    self.run()?;
                    self.maps.pop();
                }
            }
            self.groups.pop();
        }
        Ok(())
    }
}

fn exact_at(middle: &FGAbelianGroup, incoming: &GroupHom, outgoing: &GroupHom) -> Result<bool, SpecSeqError> {
    match hom_homology(middle, Some(incoming), Some(outgoing)) {
        Ok(h) => Ok(h.is_zero()),
        Err(AbelianError::NonzeroComposite) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Every assignment of unknown groups and maps, within the bounds, that makes
/// the template exact.
pub fn gysin_solve(template: &LongExactTemplate, bounds: SearchBounds) -> Result<GysinReport, SpecSeqError> {
    let mut search = Search {
        template,
        bounds,
        candidates: bounds.candidate_groups(),
        nodes: 0,
        groups: Vec::new(),
        maps: Vec::new(),
        values: alloc::vec![BTreeSet::new(); template.nodes.len()],
    };
    search.run()?;
    Ok(GysinReport {
        labels: template.nodes.iter().map(|n| n.label.clone()).collect(),
        values: search.values,
    })
}
