use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::abelian::{hom_homology, hom_iter, FGAbelianGroup, GroupHom};

use super::extension::{diagonal_verdict, iterated_extensions, DiagonalVerdict};
use super::page::{e2_from_groups, BaseConnectivity, BigradedPage, Bidegree, DifferentialAssignment};
use super::SpecSeqError;

/// A homology group that is either given or to be determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Known(FGAbelianGroup),
    Unknown,
}

impl Slot {
    pub fn known(&self) -> Option<&FGAbelianGroup> {
        match self {
            Slot::Known(g) => Some(g),
            Slot::Unknown => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Base,
    Total,
}

/// Extra facts about the base or the total space that solutions must obey.
/// Cohomology is read off homology by the universal coefficient theorem,
/// `H^n = F_n ⊕ T_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// Closed orientable manifold of the given dimension:
    /// `F_k ≅ F_{d-k}` and `T_k ≅ T_{d-k-1}`.
    PoincareDuality { space: Space, dim: usize },
    EulerCharacteristic { space: Space, value: i64 },
    CohomologyZero { space: Space, degree: usize },
    CyclicCohomology { space: Space, degree: usize },
    MaxRank { space: Space, degree: usize, max: usize },
}

impl Constraint {
    fn space(&self) -> Space {
        match self {
            Constraint::PoincareDuality { space, .. }
            | Constraint::EulerCharacteristic { space, .. }
            | Constraint::CohomologyZero { space, .. }
            | Constraint::CyclicCohomology { space, .. }
            | Constraint::MaxRank { space, .. } => *space,
        }
    }

    /// `false` only when the assigned degrees already violate the constraint.
    fn holds_partial(&self, groups: &[Option<FGAbelianGroup>]) -> bool {
        let at = |n: usize| -> Option<FGAbelianGroup> {
            match groups.get(n) {
                Some(slot) => slot.clone(),
                None => Some(FGAbelianGroup::zero()),
            }
        };
        match *self {
            Constraint::PoincareDuality { dim, .. } => (0..=dim).all(|k| {
                let free_ok = match (at(k), at(dim - k)) {
                    (Some(a), Some(b)) => a.rank() == b.rank(),
                    _ => true,
                };
                let torsion_ok = k + 1 > dim
                    || match (at(k), at(dim - k - 1)) {
                        (Some(a), Some(b)) => a.torsion_part() == b.torsion_part(),
                        _ => true,
                    };
                free_ok && torsion_ok
            }),
            Constraint::EulerCharacteristic { value, .. } => {
                if groups.iter().any(Option::is_none) {
                    return true;
                }
                let chi: i64 = groups
                    .iter()
                    .enumerate()
                    .map(|(n, g)| {
                        let r = g.as_ref().map_or(0, |g| g.rank() as i64);
                        if n % 2 == 0 {
                            r
                        } else {
                            -r
                        }
                    })
                    .sum();
                chi == value
            }
            Constraint::CohomologyZero { degree, .. } => {
                let free_ok = at(degree).is_none_or(|g| g.rank() == 0);
                let torsion_ok = degree == 0 || at(degree - 1).is_none_or(|g| g.is_free());
                free_ok && torsion_ok
            }
            Constraint::CyclicCohomology { degree, .. } => {
                let free = at(degree).map(|g| g.rank());
                let torsion = if degree == 0 {
                    Some(FGAbelianGroup::zero())
                } else {
                    at(degree - 1).map(|g| g.torsion_part())
                };
                match (free, torsion) {
                    (Some(f), Some(t)) => FGAbelianGroup::free(f).direct_sum(&t).is_cyclic(),
                    (Some(f), None) => f <= 1,
                    (None, Some(t)) => t.is_cyclic(),
                    (None, None) => true,
                }
            }
            Constraint::MaxRank { degree, max, .. } => at(degree).is_none_or(|g| g.rank() <= max),
        }
    }
}

/// A Serre spectral sequence question: fiber known, base and total partly
/// known, plus constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationProblem {
    pub name: String,
    pub fiber: Vec<FGAbelianGroup>,
    pub base: Vec<Slot>,
    pub total: Vec<Slot>,
    pub connectivity: BaseConnectivity,
    pub constraints: Vec<Constraint>,
}

/// Search limits. Results are complete relative to these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_rank: usize,
    /// Largest invariant factor allowed in an unknown group.
    pub max_torsion: u64,
    pub max_torsion_factors: usize,
    /// Free-to-free matrix entries of differentials range over `-b..=b`.
    pub coefficient_bound: u64,
    pub node_budget: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_rank: 4,
            max_torsion: 8,
            max_torsion_factors: 4,
            coefficient_bound: 2,
            node_budget: 10_000_000,
        }
    }
}

impl SearchBounds {
    /// Every group allowed for an unknown slot, smallest first.
    pub fn candidate_groups(&self) -> Vec<FGAbelianGroup> {
        fn chains(max: u64, len: usize, lo: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            out.push(prefix.clone());
            if prefix.len() == len {
                return;
            }
            let mut d = lo;
            while d <= max {
                prefix.push(d);
                chains(max, len, d, prefix, out);
                prefix.pop();
                d += lo;
            }
        }
        let mut torsion = Vec::new();
        let mut prefix = Vec::new();
        torsion.push(Vec::new());
        for first in 2..=self.max_torsion {
            if self.max_torsion_factors == 0 {
                break;
            }
            prefix.push(first);
            let mut sub = Vec::new();
            chains(self.max_torsion, self.max_torsion_factors, first, &mut prefix, &mut sub);
            torsion.extend(sub);
            prefix.pop();
        }
        let mut out = Vec::new();
        for rank in 0..=self.max_rank {
            for t in &torsion {
                let factors: Vec<BigInt> = t.iter().map(|&d| BigInt::from(d)).collect();
                if let Ok(g) = FGAbelianGroup::new(rank, factors) {
                    out.push(g);
                }
            }
        }
        out.sort_by_key(|g| (g.generator_count(), g.clone()));
        out
    }
}

/// One consistent scenario: filled-in tables, the limit page and a witness
/// list of differentials, one assignment per page from `E^2` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub base: Vec<FGAbelianGroup>,
    pub total: Vec<FGAbelianGroup>,
    pub limit: BigradedPage,
    pub differentials: Vec<DifferentialAssignment>,
    /// Some extension question was only checked by necessary conditions.
    pub necessary_only: bool,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solutions: Vec<Solution>,
    pub nodes: u64,
}

impl SolveReport {
    pub fn is_unique(&self) -> bool {
        self.solutions.len() == 1
    }
}

#[derive(Clone, Debug)]
struct ChainOutcome {
    groups: Vec<FGAbelianGroup>,
    maps: Vec<GroupHom>,
}

type Witness = Vec<DifferentialAssignment>;

struct Engine {
    bounds: SearchBounds,
    nodes: u64,
    chains: BTreeMap<Vec<FGAbelianGroup>, Rc<Vec<ChainOutcome>>>,
    extensions: BTreeMap<Vec<FGAbelianGroup>, Option<Rc<BTreeSet<FGAbelianGroup>>>>,
}

/// What the page checker knows about the problem at one search node.
struct CheckContext<'a> {
    total: &'a [Slot],
    fiber_rows: Vec<bool>,
    /// Columns from here on are not yet part of the page but may be nonzero.
    open_from: Option<usize>,
    constraints: &'a [Constraint],
}

impl CheckContext<'_> {
    fn fiber_row(&self, q: usize) -> bool {
        self.fiber_rows.get(q).copied().unwrap_or(false)
    }

    /// No differential from an open column can ever reach `at`.
    fn immune(&self, at: Bidegree) -> bool {
        let Some(open) = self.open_from else { return true };
        let (p, q) = at;
        (2..=q + 1).all(|r| {
            let src_q = q + 1 - r;
            p + r < open || !self.fiber_row(src_q)
        })
    }

    /// The diagonal can receive no entries from open columns.
    fn complete_diagonal(&self, n: usize) -> bool {
        self.open_from.is_none_or(|open| n < open)
    }

    fn admits_total(&self, n: usize, g: &FGAbelianGroup) -> bool {
        let mut assign: Vec<Option<FGAbelianGroup>> = vec![None; self.total.len().max(n + 1)];
        assign[n] = Some(g.clone());
        self.constraints
            .iter()
            .filter(|c| c.space() == Space::Total)
            .all(|c| c.holds_partial(&assign))
    }
}

fn is_final(page: &BigradedPage, at: Bidegree, after: usize, ctx: &CheckContext) -> bool {
    if !ctx.immune(at) {
        return false;
    }
    let (p, q) = at;
    let reach = p.max(q + 1) + 1;
    (after + 1..=reach).all(|r| {
        let out = BigradedPage::target(at, r).is_some_and(|t| page.is_nonzero(t));
        let inc = BigradedPage::source(at, r).is_some_and(|s| page.is_nonzero(s));
        !out && !inc
    })
}

impl Engine {
    fn new(bounds: SearchBounds) -> Self {
        Engine {
            bounds,
            nodes: 0,
            chains: BTreeMap::new(),
            extensions: BTreeMap::new(),
        }
    }

    fn tick(&mut self, n: u64) -> Result<(), SpecSeqError> {
        self.nodes += n;
        if self.nodes > self.bounds.node_budget {
            return Err(SpecSeqError::BudgetExceeded { nodes: self.nodes });
        }
        Ok(())
    }

    fn extensions(&mut self, layers: Vec<FGAbelianGroup>) -> Option<Rc<BTreeSet<FGAbelianGroup>>> {
        if let Some(hit) = self.extensions.get(&layers) {
            return hit.clone();
        }
        let value = iterated_extensions(&layers).map(Rc::new);
        self.extensions.insert(layers, value.clone());
        value
    }

    /// Every distinct homology pattern along a chain `g_0 -> g_1 -> … -> g_m`
    /// with consecutive composites zero.
    fn chain_outcomes(&mut self, nodes: &[FGAbelianGroup]) -> Result<Rc<Vec<ChainOutcome>>, SpecSeqError> {
        if let Some(hit) = self.chains.get(nodes) {
            return Ok(hit.clone());
        }
        let mut found: BTreeMap<Vec<FGAbelianGroup>, Vec<GroupHom>> = BTreeMap::new();
        let mut groups = Vec::new();
        let mut maps = Vec::new();
        self.chain_search(nodes, None, &mut groups, &mut maps, &mut found)?;
        let list: Vec<ChainOutcome> = found
            .into_iter()
            .map(|(groups, maps)| ChainOutcome { groups, maps })
            .collect();
        let rc = Rc::new(list);
        self.chains.insert(nodes.to_vec(), rc.clone());
        Ok(rc)
    }

    fn chain_search(
        &mut self,
        nodes: &[FGAbelianGroup],
        prev: Option<&GroupHom>,
        groups: &mut Vec<FGAbelianGroup>,
        maps: &mut Vec<GroupHom>,
        found: &mut BTreeMap<Vec<FGAbelianGroup>, Vec<GroupHom>>,
    ) -> Result<(), SpecSeqError> {
        let i = groups.len();
        if i + 1 == nodes.len() {
            groups.push(hom_homology(&nodes[i], prev, None)?);
            found.entry(groups.clone()).or_insert_with(|| maps.clone());
            groups.pop();
            return Ok(());
        }
        for f in hom_iter(&nodes[i], &nodes[i + 1], Some(self.bounds.coefficient_bound))? {
            self.tick(1)?;
            if let Some(g) = prev {
                if !f.after(g)?.is_zero() {
                    continue;
                }
            }
            groups.push(hom_homology(&nodes[i], prev, Some(&f))?);
            maps.push(f.clone());
            self.chain_search(nodes, Some(&f), groups, maps, found)?;
            maps.pop();
            groups.pop();
        }
        Ok(())
    }

    /// Cheap and full checks of every diagonal whose fate is settled.
    fn viable(&mut self, page: &BigradedPage, after: usize, ctx: &CheckContext) -> bool {
        let top = page.max_total_degree().max(ctx.total.len().saturating_sub(1));
        for n in 0..=top {
            let cells: Vec<(Bidegree, &FGAbelianGroup)> =
                (0..=n).filter_map(|p| page.entry((p, n - p)).map(|g| ((p, n - p), g))).collect();
            let all_final = cells.iter().all(|(at, _)| is_final(page, *at, after, ctx));
            let known = ctx.total.get(n).map_or(Some(FGAbelianGroup::zero()), |s| s.known().cloned());
            if all_final && ctx.complete_diagonal(n) {
                let layers = page.diagonal(n);
                match &known {
                    Some(h) => {
                        if diagonal_verdict(&layers, h) == DiagonalVerdict::Inconsistent {
                            return false;
                        }
                    }
                    None => {
                        if let Some(set) = self.extensions(layers) {
                            if !set.iter().any(|g| ctx.admits_total(n, g)) {
                                return false;
                            }
                        }
                    }
                }
                continue;
            }
            let Some(h) = known else { continue };
            let current_rank: usize = cells.iter().map(|(_, g)| g.rank()).sum();
            if ctx.complete_diagonal(n) && current_rank < h.rank() {
                return false;
            }
            let finals: Vec<&FGAbelianGroup> = cells
                .iter()
                .filter(|(at, _)| is_final(page, *at, after, ctx))
                .map(|(_, g)| *g)
                .collect();
            if finals.iter().map(|g| g.rank()).sum::<usize>() > h.rank() {
                return false;
            }
            if h.is_finite() {
                if finals.iter().any(|g| !g.is_finite()) {
                    return false;
                }
                let order: BigInt = finals.iter().map(|g| g.torsion_order()).product();
                if !h.torsion_order().is_multiple_of(&order) {
                    return false;
                }
            }
        }
        true
    }

    /// All limit pages reachable from `e2`, each with one witness.
    fn run_pages(
        &mut self,
        e2: BigradedPage,
        ctx: &CheckContext,
    ) -> Result<BTreeMap<BigradedPage, Witness>, SpecSeqError> {
        let mut states: BTreeMap<BigradedPage, Witness> = BTreeMap::new();
        if !self.viable(&e2, 1, ctx) {
            return Ok(states);
        }
        let last_page = e2.max_p().min(e2.max_q() + 1);
        states.insert(e2, Vec::new());
        for r in 2..=last_page.max(1) {
            let mut next: BTreeMap<BigradedPage, Witness> = BTreeMap::new();
            for (page, witness) in states {
                self.tick(1)?;
                let mut page = page;
                page.set_page_number(r);
                let chains = chains_on(&page, r);
                let mut outcome_lists = Vec::with_capacity(chains.len());
                for chain in &chains {
                    let groups: Vec<FGAbelianGroup> = chain.iter().map(|&at| page.get(at)).collect();
                    outcome_lists.push(self.chain_outcomes(&groups)?);
                }
                let mut choice = vec![0usize; chains.len()];
                loop {
                    self.tick(1)?;
                    let mut turned = page.clone();
                    turned.set_page_number(r + 1);
                    let mut d = DifferentialAssignment::zero(r);
                    for (c, chain) in chains.iter().enumerate() {
                        let outcome = &outcome_lists[c][choice[c]];
                        for (k, &at) in chain.iter().enumerate() {
                            turned.set(at, outcome.groups[k].clone());
                            if k + 1 < chain.len() {
                                d.insert(at, outcome.maps[k].clone());
                            }
                        }
                    }
                    if !next.contains_key(&turned) && self.viable(&turned, r, ctx) {
                        let mut w = witness.clone();
                        w.push(d);
                        next.insert(turned, w);
                    }
                    if !advance(&mut choice, |c| outcome_lists[c].len()) {
                        break;
                    }
                }
            }
            states = next;
        }
        Ok(states)
    }
}

/// Odometer step over independent choices; `false` once exhausted.
fn advance(choice: &mut [usize], len: impl Fn(usize) -> usize) -> bool {
    for c in (0..choice.len()).rev() {
        choice[c] += 1;
        if choice[c] < len(c) {
            return true;
        }
        choice[c] = 0;
    }
    false
}

/// Maximal strings of nonzero entries joined by `d^r`, each listed from its
/// source end. Entries touching no differential are omitted.
fn chains_on(page: &BigradedPage, r: usize) -> Vec<Vec<Bidegree>> {
    let mut out = Vec::new();
    for (&at, _) in page.entries() {
        let has_in = BigradedPage::source(at, r).is_some_and(|s| page.is_nonzero(s));
        if has_in {
            continue;
        }
        let mut chain = vec![at];
        let mut cur = at;
        while let Some(t) = BigradedPage::target(cur, r).filter(|t| page.is_nonzero(*t)) {
            chain.push(t);
            cur = t;
        }
        if chain.len() > 1 {
            out.push(chain);
        }
    }
    out
}

fn constraints_hold(constraints: &[Constraint], space: Space, groups: &[FGAbelianGroup]) -> bool {
    let assign: Vec<Option<FGAbelianGroup>> = groups.iter().cloned().map(Some).collect();
    constraints
        .iter()
        .filter(|c| c.space() == space)
        .all(|c| c.holds_partial(&assign))
}

/// Enumerates all consistent completions of the problem within the bounds.
///
/// Differentials are arbitrary homomorphisms between the abstract groups of
/// each page, enumerated chain by chain; pages are deduplicated by their
/// groups. Unknown base groups are fixed degree by degree, each prefix being
/// tested on the truncated page with the remaining columns treated as open.
/// Unknown total groups are read off the limit page as iterated extensions
/// and then filtered by the constraints.
pub fn solve(problem: &FibrationProblem, bounds: SearchBounds) -> Result<SolveReport, SpecSeqError> {
    if problem.connectivity == BaseConnectivity::NotSimplyConnected {
        return Err(SpecSeqError::TwistedCoefficients);
    }
    if problem.base.is_empty() {
        return Err(SpecSeqError::EmptyBase);
    }
    let mut engine = Engine::new(bounds);
    let candidates = bounds.candidate_groups();
    let mut found: BTreeMap<(Vec<FGAbelianGroup>, Vec<FGAbelianGroup>), Solution> = BTreeMap::new();
    let mut prefix = Vec::new();
    base_search(problem, &mut engine, &candidates, &mut prefix, &mut found)?;
    Ok(SolveReport {
        solutions: found.into_values().collect(),
        nodes: engine.nodes,
    })
}

fn base_search(
    problem: &FibrationProblem,
    engine: &mut Engine,
    candidates: &[FGAbelianGroup],
    prefix: &mut Vec<FGAbelianGroup>,
    found: &mut BTreeMap<(Vec<FGAbelianGroup>, Vec<FGAbelianGroup>), Solution>,
) -> Result<(), SpecSeqError> {
    let p = prefix.len();
    let last = p + 1 == problem.base.len();
    if !last && problem.base[p..].iter().all(|s| s.known().is_some()) {
        // nothing left to choose: jump to the full page
        let rest: Vec<FGAbelianGroup> = problem.base[p..problem.base.len() - 1]
            .iter()
            .filter_map(|s| s.known().cloned())
            .collect();
        let depth = prefix.len();
        prefix.extend(rest);
        let result = base_search(problem, engine, candidates, prefix, found);
        prefix.truncate(depth);
        return result;
    }
    let options: Vec<FGAbelianGroup> = match &problem.base[p] {
        Slot::Known(g) => vec![g.clone()],
        Slot::Unknown => candidates.to_vec(),
    };
    let fiber_rows: Vec<bool> = problem.fiber.iter().map(|g| !g.is_zero()).collect();
    for g in options {
        prefix.push(g);
        let mut assign: Vec<Option<FGAbelianGroup>> = prefix.iter().cloned().map(Some).collect();
        assign.resize(problem.base.len(), None);
        let base_ok = problem
            .constraints
            .iter()
            .filter(|c| c.space() == Space::Base)
            .all(|c| c.holds_partial(&assign));
        if base_ok {
            let ctx = CheckContext {
                total: &problem.total,
                fiber_rows: fiber_rows.clone(),
                open_from: if last { None } else { Some(p + 1) },
                constraints: &problem.constraints,
            };
            let e2 = e2_from_groups(prefix, &problem.fiber);
            let limits = engine.run_pages(e2, &ctx)?;
            if last {
                for (limit, witness) in limits {
                    collect_solutions(problem, engine, prefix, limit, witness, found)?;
                }
            } else if !limits.is_empty() {
                base_search(problem, engine, candidates, prefix, found)?;
            }
        }
        prefix.pop();
    }
    Ok(())
}

fn collect_solutions(
    problem: &FibrationProblem,
    engine: &mut Engine,
    base: &[FGAbelianGroup],
    limit: BigradedPage,
    witness: Witness,
    found: &mut BTreeMap<(Vec<FGAbelianGroup>, Vec<FGAbelianGroup>), Solution>,
) -> Result<(), SpecSeqError> {
    let top = limit.max_total_degree().max(problem.total.len().saturating_sub(1));
    let mut necessary_only = false;
    let mut options: Vec<Vec<FGAbelianGroup>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let layers = limit.diagonal(n);
        match problem.total.get(n).unwrap_or(&Slot::Known(FGAbelianGroup::zero())) {
            Slot::Known(h) => {
                match diagonal_verdict(&layers, h) {
                    DiagonalVerdict::Inconsistent => return Ok(()),
                    DiagonalVerdict::NecessaryOnly => necessary_only = true,
                    DiagonalVerdict::Consistent => {}
                }
                options.push(vec![h.clone()]);
            }
            Slot::Unknown => {
                let set = engine
                    .extensions(layers)
                    .ok_or(SpecSeqError::ExtensionCap { degree: n })?;
                options.push(set.iter().cloned().collect());
            }
        }
    }
    let mut chosen: Vec<Option<FGAbelianGroup>> = vec![None; top + 1];
    let mut results = Vec::new();
    assign_totals(&options, &problem.constraints, 0, &mut chosen, &mut results);
    for total in results {
        if !constraints_hold(&problem.constraints, Space::Total, &total) {
            continue;
        }
        let key = (base.to_vec(), total.clone());
        found.entry(key).or_insert_with(|| Solution {
            base: base.to_vec(),
            total,
            limit: limit.clone(),
            differentials: witness.clone(),
            necessary_only,
        });
    }
    Ok(())
}

fn assign_totals(
    options: &[Vec<FGAbelianGroup>],
    constraints: &[Constraint],
    n: usize,
    chosen: &mut Vec<Option<FGAbelianGroup>>,
    out: &mut Vec<Vec<FGAbelianGroup>>,
) {
    if n == options.len() {
        out.push(chosen.iter().map(|g| g.clone().unwrap_or_default()).collect());
        return;
    }
    for g in &options[n] {
        chosen[n] = Some(g.clone());
        let ok = constraints
            .iter()
            .filter(|c| c.space() == Space::Total)
            .all(|c| c.holds_partial(chosen));
        if ok {
            assign_totals(options, constraints, n + 1, chosen, out);
        }
    }
    chosen[n] = None;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    fn groups(s: &str) -> Vec<FGAbelianGroup> {
        s.split(',').map(g).collect()
    }

    fn known(s: &str) -> Vec<Slot> {
        groups(s).into_iter().map(Slot::Known).collect()
    }

    #[test]
    fn candidate_list_shape() {
        let b = SearchBounds {
            max_rank: 1,
            max_torsion: 4,
            max_torsion_factors: 2,
            ..SearchBounds::default()
        };
        let c = b.candidate_groups();
        // torsion: 0, Z2, Z3, Z4, Z2^2, Z2+Z4, Z3^2, Z4^2 ; times two ranks
        assert_eq!(c.len(), 16);
        assert!(c.contains(&g("Z+Z2+Z4")));
        assert!(!c.contains(&g("Z2+Z3")));
    }

    #[test]
    fn hopf_fibration() {
        // S^1 -> S^3 -> S^2 forces d^2 = ±1
        let problem = FibrationProblem {
            name: "hopf".into(),
            fiber: groups("Z,Z"),
            base: known("Z,0,Z"),
            total: known("Z,0,0,Z"),
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        let report = solve(&problem, SearchBounds::default()).unwrap();
        assert!(report.is_unique());
        let d = &report.solutions[0].differentials[0];
        assert!(d.get((2, 0)).is_some());
    }

    #[test]
    fn trivial_product_needs_zero_differential() {
        let problem = FibrationProblem {
            name: "s1xs2".into(),
            fiber: groups("Z,Z"),
            base: known("Z,0,Z"),
            total: known("Z,Z,Z,Z"),
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        let report = solve(&problem, SearchBounds::default()).unwrap();
        assert_eq!(report.solutions.len(), 1);
        assert!(report.solutions[0].differentials.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn impossible_total_has_no_solution() {
        let problem = FibrationProblem {
            name: "bad".into(),
            fiber: groups("Z,Z"),
            base: known("Z,0,Z"),
            total: known("Z,Z2,Z,Z"),
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        assert!(solve(&problem, SearchBounds::default()).unwrap().solutions.is_empty());
    }

    #[test]
    fn projective_three_space_as_circle_bundle() {
        // d^2 = ±2 leaves Z2 in degree 1
        let problem = FibrationProblem {
            name: "rp3".into(),
            fiber: groups("Z,Z"),
            base: known("Z,0,Z"),
            total: known("Z,Z2,0,Z"),
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        let report = solve(&problem, SearchBounds::default()).unwrap();
        assert_eq!(report.solutions.len(), 1);
    }

    #[test]
    fn unknown_base_of_hopf() {
        let problem = FibrationProblem {
            name: "hopf-base".into(),
            fiber: groups("Z,Z"),
            base: vec![Slot::Unknown; 3],
            total: known("Z,0,0,Z"),
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        let report = solve(&problem, SearchBounds::default()).unwrap();
        let bases: Vec<_> = report.solutions.iter().map(|s| s.base.clone()).collect();
        assert_eq!(bases, [groups("Z,0,Z")]);
    }

    #[test]
    fn unknown_total_with_torsion_choice() {
        // fiber a point: total equals base
        let problem = FibrationProblem {
            name: "identity".into(),
            fiber: groups("Z"),
            base: known("Z,Z2,0,Z"),
            total: vec![Slot::Unknown; 4],
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        let report = solve(&problem, SearchBounds::default()).unwrap();
        assert_eq!(report.solutions.len(), 1);
        assert_eq!(report.solutions[0].total, groups("Z,Z2,0,Z"));
    }

    #[test]
    fn budget_is_enforced() {
        let problem = FibrationProblem {
            name: "hopf-base".into(),
            fiber: groups("Z,Z"),
            base: vec![Slot::Unknown; 3],
            total: known("Z,0,0,Z"),
            connectivity: BaseConnectivity::SimplyConnected,
            constraints: Vec::new(),
        };
        let used = solve(&problem, SearchBounds::default()).unwrap().nodes;
        assert!(used > 1);
        let tight = SearchBounds {
            node_budget: used - 1,
            ..SearchBounds::default()
        };
        assert!(matches!(solve(&problem, tight), Err(SpecSeqError::BudgetExceeded { .. })));
    }

    #[test]
    fn duality_constraint_partial() {
        let c = Constraint::PoincareDuality {
            space: Space::Total,
            dim: 3,
        };
        let full: Vec<Option<FGAbelianGroup>> = groups("Z,Z2,0,Z").into_iter().map(Some).collect();
        assert!(c.holds_partial(&full));
        let bad: Vec<Option<FGAbelianGroup>> = groups("Z,0,Z2,Z").into_iter().map(Some).collect();
        assert!(!c.holds_partial(&bad));
        assert!(c.holds_partial(&[Some(g("Z")), None, None, None]));
    }
}
