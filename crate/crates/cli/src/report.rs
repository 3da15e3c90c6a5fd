//! The verification report: every fixture checked against a computation.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Result};
use g2topo::abelian::poincare_duality_check;
use g2topo::g2::{
    calibration_identity_check, chi_by_cross, chi_by_star, classify_plane3, coassociative_check, flow_from_frame,
    hl_pair_criterion, metric_density, perp, phi0, phi_from_cross, star_phi_from_cross, Form, FlowDirection,
    FlowSettings, Plane, Vector7,
};
use g2topo::gradedring::check_ring_hom;
use g2topo::homology::{compare_tables, HomologyTable};
use g2topo::specseq::{solve, SearchBounds, SolveReport};
use g2topo::FGAbelianGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fixtures::{
    Expectation, FixtureFile, G2Check, G2Fixture, GysinFixture, HomExpectation, ReplayFixture, RingHomFixture,
    ScalarCheck, ScalarFixture, TableFixture,
};
use crate::json::table_from_json;
use crate::planes::{class_name, parse_plane};
use crate::problems::{replay_problems, run_gysin_chain};
use crate::rings::{compare_ring, homology_for, split_of, MapFile};

pub const DEFAULT_SEED: u64 = 0x6732_2024;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub fixture: String,
    pub citation: String,
    pub passed: bool,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub only: Option<String>,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            only: None,
            seed: DEFAULT_SEED,
        }
    }
}

struct Outcome {
    passed: bool,
    expected: String,
    computed: String,
    note: Option<String>,
}

impl Outcome {
    fn new(passed: bool, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        Outcome {
            passed,
            expected: expected.into(),
            computed: computed.into(),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

struct Collector {
    checks: Vec<CheckResult>,
}

impl Collector {
    /// Errors become failed checks rather than aborting the report.
    fn push(&mut self, name: String, fixture: &str, citation: &str, outcome: Result<Outcome>) {
        let result = match outcome {
            Ok(o) => CheckResult {
                name,
                fixture: fixture.into(),
                citation: citation.into(),
                passed: o.passed,
                expected: o.expected,
                computed: o.computed,
                note: o.note,
            },
            Err(e) => CheckResult {
                name,
                fixture: fixture.into(),
                citation: citation.into(),
                passed: false,
                expected: String::new(),
                computed: String::new(),
                note: Some(format!("error: {e:#}")),
            },
        };
        self.checks.push(result);
    }
}

fn render(groups: &[FGAbelianGroup]) -> String {
    HomologyTable::new("", groups.to_vec()).notation()
}

/// Stable per-fixture stream so that filtering with `--only` does not shift
/// the random samples.
fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn run_report(fixtures: &FixtureFile, options: &ReportOptions) -> Result<Report> {
    if let Some(only) = &options.only {
        if !fixtures.names().iter().any(|(n, _)| n == only) {
            bail!("no fixture named `{only}`");
        }
    }
    let wanted = |name: &str| options.only.as_deref().is_none_or(|o| o == name);
    let mut out = Collector { checks: Vec::new() };
    for t in fixtures.tables.iter().filter(|t| wanted(&t.name)) {
        table_checks(fixtures, t, &mut out);
    }
    for s in fixtures.scalars.iter().filter(|s| wanted(&s.name)) {
        out.push(s.name.clone(), &s.name, &s.citation, scalar_check(fixtures, s));
    }
    for r in fixtures.replays.iter().filter(|r| wanted(&r.name)) {
        replay_checks(fixtures, r, &mut out);
    }
    if fixtures.gysin.iter().any(|g| wanted(&g.name)) {
        gysin_checks(fixtures, &wanted, &mut out);
    }
    for r in fixtures.rings.iter().filter(|r| wanted(&r.name)) {
        let outcome = compare_ring(fixtures, r).map(|c| Outcome::new(c.passed, c.expected, c.computed).with_note(c.source));
        out.push(r.name.clone(), &r.name, &r.citation, outcome);
    }
    for h in fixtures.ring_homs.iter().filter(|h| wanted(&h.name)) {
        out.push(h.name.clone(), &h.name, &h.citation, ring_hom_check(fixtures, h));
    }
    for g in fixtures.g2.iter().filter(|g| wanted(&g.name)) {
        let mut rng = rng_for(options.seed, &g.name);
        out.push(g.name.clone(), &g.name, &g.citation, g2_check(g, &mut rng));
    }
    let mut checks = out.checks;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report {
        version: fixtures.version,
        seed: options.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn table_checks(fixtures: &FixtureFile, t: &TableFixture, out: &mut Collector) {
    let expected = table_from_json(&t.homology);
    if t.space.is_some() {
        let outcome = (|| {
            let expected = expected.as_ref().map_err(|e| anyhow!("{e:#}"))?;
            let (computed, _) = homology_for(fixtures, &t.name)?;
            let diffs = compare_tables(&HomologyTable::new("", computed.clone()), &HomologyTable::new("", expected.clone()));
            let o = Outcome::new(diffs.is_empty(), render(expected), render(&computed));
            Ok(if diffs.is_empty() {
                o
            } else {
                let degrees: Vec<String> = diffs
                    .iter()
                    .map(|d| format!("degree {}: computed {}, expected {}", d.degree, d.computed, d.expected))
                    .collect();
                o.with_note(degrees.join("; "))
            })
        })();
        out.push(t.name.clone(), &t.name, &t.citation, outcome);
    }
    if let (Some(dim), Some(true)) = (t.dim, t.orientable) {
        let outcome = (|| {
            let expected = expected.as_ref().map_err(|e| anyhow!("{e:#}"))?;
            let check = poincare_duality_check(expected, dim, true)?;
            Ok(Outcome::new(check.passed(), format!("duality in dimension {dim}"), format!("{check:?}")))
        })();
        out.push(format!("{}/duality", t.name), &t.name, &t.citation, outcome);
    }
}

fn scalar_check(fixtures: &FixtureFile, s: &ScalarFixture) -> Result<Outcome> {
    match &s.check {
        ScalarCheck::Poincare { table, value } => {
            let (h, source) = homology_for(fixtures, table)?;
            let betti: Vec<usize> = h.iter().map(FGAbelianGroup::rank).collect();
            Ok(Outcome::new(&betti == value, format!("{value:?}"), format!("{betti:?}")).with_note(format!("{source} {table}")))
        }
        ScalarCheck::Euler { table, value } => {
            let (h, source) = homology_for(fixtures, table)?;
            let chi = HomologyTable::new("", h).euler_characteristic();
            Ok(Outcome::new(chi == *value, value.to_string(), chi.to_string()).with_note(format!("{source} {table}")))
        }
    }
}

fn solutions_summary(report: &SolveReport) -> String {
    let parts: Vec<String> = report
        .solutions
        .iter()
        .map(|s| format!("base {} total {}", render(&s.base), render(&s.total)))
        .collect();
    format!("{} solution(s): {}", report.solutions.len(), parts.join(" | "))
}

fn replay_checks(fixtures: &FixtureFile, r: &ReplayFixture, out: &mut Collector) {
    let problems = match replay_problems(fixtures, r) {
        Ok(p) => p,
        Err(e) => {
            out.push(r.name.clone(), &r.name, &r.citation, Err(e));
            return;
        }
    };
    let bounds = SearchBounds::default();
    let chi = |g: &[FGAbelianGroup]| HomologyTable::new("", g.to_vec()).euler_characteristic();
    let known = &problems.known;
    let total: Vec<FGAbelianGroup> = known.total.iter().filter_map(|s| s.known().cloned()).collect();
    let base: Vec<FGAbelianGroup> = known.base.iter().filter_map(|s| s.known().cloned()).collect();
    let (e, f, b) = (chi(&total), chi(&known.fiber), chi(&base));
    out.push(
        format!("{}/euler", r.name),
        &r.name,
        &r.citation,
        Ok(Outcome::new(e == f * b, format!("χ(F)·χ(B) = {f}·{b} = {}", f * b), format!("χ(E) = {e}"))),
    );
    let existence = solve(known, bounds).map_err(anyhow::Error::from).map(|rep| {
        Outcome::new(!rep.solutions.is_empty(), "at least one consistent scenario", solutions_summary(&rep))
            .with_note(format!("{} search nodes", rep.nodes))
    });
    let existence_name = match r.expect {
        Expectation::Exists => r.name.clone(),
        _ => format!("{}/exists", r.name),
    };
    out.push(existence_name, &r.name, &r.citation, existence);
    if matches!(r.expect, Expectation::Exists) {
        return;
    }
    let outcome = (|| {
        let deduction = problems
            .deduction
            .as_ref()
            .ok_or_else(|| anyhow!("expectation needs hidden entries"))?;
        let rep = solve(deduction, bounds)?;
        let summary = solutions_summary(&rep);
        let o = match &r.expect {
            Expectation::Unique => {
                let ok = rep.is_unique() && rep.solutions[0].base == base && rep.solutions[0].total == total;
                Outcome::new(ok, format!("unique: base {} total {}", render(&base), render(&total)), summary)
            }
            Expectation::ForallTotal(items) => {
                let mut wanted = Vec::new();
                let mut ok = !rep.solutions.is_empty();
                for item in items {
                    let group = item.group.as_ref().map(|g| g.to_group()).transpose()?;
                    if let Some(g) = &group {
                        wanted.push(format!("H{} = {g}", item.degree));
                    }
                    if let Some(rank) = item.rank {
                        wanted.push(format!("rank H{} = {rank}", item.degree));
                    }
                    for s in &rep.solutions {
                        let h = s.total.get(item.degree).cloned().unwrap_or_default();
                        ok &= group.as_ref().is_none_or(|g| *g == h) && item.rank.is_none_or(|k| k == h.rank());
                    }
                }
                Outcome::new(ok, format!("every scenario: {}", wanted.join(", ")), summary)
            }
            Expectation::Exists => unreachable!("handled above"),
        };
        Ok(o.with_note(format!("{} search nodes", rep.nodes)))
    })();
    out.push(r.name.clone(), &r.name, &r.citation, outcome);
}

fn gysin_checks(fixtures: &FixtureFile, wanted: &dyn Fn(&str) -> bool, out: &mut Collector) {
    let chain = run_gysin_chain(fixtures, SearchBounds::default());
    for g in fixtures.gysin.iter().filter(|g| wanted(&g.name)) {
        let outcome = match &chain {
            Ok(done) => gysin_outcome(g, done.get(&g.name)),
            Err(e) => Err(anyhow!("{e:#}")),
        };
        out.push(g.name.clone(), &g.name, &g.citation, outcome);
    }
}

fn gysin_outcome(g: &GysinFixture, report: Option<&g2topo::specseq::GysinReport>) -> Result<Outcome> {
    let report = report.ok_or_else(|| anyhow!("deduction did not run"))?;
    let mut ok = report.is_consistent();
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for f in &g.forced {
        let want = f.group.to_group()?;
        expected.push(format!("{} = {want}", f.label));
        match report.forced(&f.label) {
            Some(got) => {
                ok &= *got == want;
                computed.push(format!("{} = {got}", f.label));
            }
            None => {
                ok = false;
                let i = report.labels.iter().position(|l| *l == f.label);
                let n = i.map_or(0, |i| report.values[i].len());
                computed.push(format!("{} not forced ({n} values)", f.label));
            }
        }
    }
    Ok(Outcome::new(ok, expected.join(", "), computed.join(", ")).with_note(report.labels.join(" -> ")))
}

fn ring_hom_check(fixtures: &FixtureFile, h: &RingHomFixture) -> Result<Outcome> {
    let source = fixtures.ring(&h.source).ok_or_else(|| anyhow!("no ring `{}`", h.source))?;
    let target = fixtures.ring(&h.target).ok_or_else(|| anyhow!("no ring `{}`", h.target))?;
    let map = MapFile {
        images: h.images.clone(),
        pins: h.pins.clone(),
    };
    let verdict = check_ring_hom(&split_of(&source.summands)?, &split_of(&target.summands)?, &map.into())?;
    let want = h.expect == HomExpectation::Pass;
    let expected = if want { "homomorphism" } else { "not a homomorphism" };
    Ok(Outcome::new(verdict.passed() == want, expected, format!("{verdict:?}")))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=5)))
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vector7 {
    Vector7(std::array::from_fn(|_| random_rational(rng)))
}

fn form_of(degree: usize, terms: &[(Vec<usize>, i64)]) -> Form {
    let borrowed: Vec<(&[usize], i64)> = terms.iter().map(|(i, c)| (i.as_slice(), *c)).collect();
    Form::from_terms(degree, &borrowed)
}

fn g2_check(g: &G2Fixture, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let outcome = match &g.check {
        G2Check::Phi0 { terms } => {
            let want = form_of(3, terms);
            let got = phi_from_cross();
            Outcome::new(got == want && phi0() == want, want.to_string(), got.to_string())
                .with_note("⟨u × v, w⟩ from octonion multiplication")
        }
        G2Check::StarPhi0 { terms } => {
            let want = form_of(4, terms);
            let got = star_phi_from_cross();
            let star = phi0().hodge_star();
            Outcome::new(got == want && star == want, want.to_string(), got.to_string())
                .with_note(format!("Hodge star of φ₀: {star}"))
        }
        G2Check::Calibration { samples } => {
            let mut holds = 0;
            let mut chi_agree = 0;
            for _ in 0..*samples {
                let (u, v, w) = (random_vector(rng), random_vector(rng), random_vector(rng));
                holds += usize::from(calibration_identity_check(&u, &v, &w).holds());
                chi_agree += usize::from(chi_by_cross(&u, &v, &w) == chi_by_star(&u, &v, &w));
            }
            Outcome::new(
                holds == *samples && chi_agree == *samples,
                format!("{samples} of {samples} exact"),
                format!("identity {holds}, χ routes agree {chi_agree}"),
            )
        }
        G2Check::Classify { plane, class } => {
            let got = class_name(&classify_plane3(&parse_plane(plane)?)?);
            Outcome::new(&got == class, class.clone(), got).with_note(format!("span({plane})"))
        }
        G2Check::Perp { samples } => {
            let mut planes = vec![Plane::coordinate(&[1, 2, 3])?];
            while planes.len() < samples + 1 {
                let (u, v) = (random_vector(rng), random_vector(rng));
                if let Ok(p) = Plane::new(vec![u.clone(), v.clone(), u.cross(&v)]) {
                    planes.push(p);
                }
            }
            let mut good = 0;
            for p in &planes {
                good += usize::from(coassociative_check(&perp(p)?)?);
            }
            Outcome::new(good == planes.len(), format!("{} coassociative", planes.len()), format!("{good} coassociative"))
        }
        G2Check::Metric => {
            let phi = phi0();
            let mut bad = Vec::new();
            for i in 1..=7 {
                for j in 1..=7 {
                    let d = metric_density(&phi, &Vector7::e(i), &Vector7::e(j));
                    let want = BigRational::from_integer(BigInt::from(if i == j { 6 } else { 0 }));
                    if d != want {
                        bad.push(format!("(e{i}, e{j}) -> {d}"));
                    }
                }
            }
            let computed = if bad.is_empty() { "6⟨u, v⟩ on all basis pairs".to_string() } else { bad.join(", ") };
            Outcome::new(bad.is_empty(), "6⟨u, v⟩", computed)
        }
        G2Check::Flow { samples, tolerance } => {
            let settings = FlowSettings::default();
            let (mut top, mut bottom) = (f64::INFINITY, f64::NEG_INFINITY);
            let mut monotone = true;
            let mut worst_iterations = 0;
            for _ in 0..*samples {
                let frame: [[f64; 7]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                let up = flow_from_frame(&frame, FlowDirection::Ascend, settings)?;
                let down = flow_from_frame(&frame, FlowDirection::Descend, settings)?;
                monotone &= up.is_monotone(FlowDirection::Ascend) && down.is_monotone(FlowDirection::Descend);
                top = top.min(up.phi);
                bottom = bottom.max(down.phi);
                worst_iterations = worst_iterations.max(up.iterations).max(down.iterations);
            }
            let ok = monotone && top >= 1.0 - tolerance && bottom <= -1.0 + tolerance;
            Outcome::new(
                ok,
                format!("ascent ≥ 1 - {tolerance:e}, descent ≤ -1 + {tolerance:e}, monotone"),
                format!("min ascent {top:.12}, max descent {bottom:.12}, monotone {monotone}"),
            )
            .with_note(format!("{samples} starts, at most {worst_iterations} iterations"))
        }
        G2Check::HlPair { p1, euler, expect } => {
            let got = hl_pair_criterion(*p1, *euler);
            Outcome::new(got == *expect, expect.to_string(), got.to_string())
                .with_note(format!("⟨p1, [X]⟩ = {p1}, e[X] = {euler}"))
        }
    };
    Ok(outcome)
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

pub fn render_markdown(report: &Report) -> String {
    let mut s = String::new();
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(s, "# g2topo verification report\n");
    let _ = writeln!(
        s,
        "Fixture version {}, seed {:#x}: {passed} of {} checks pass.\n",
        report.version,
        report.seed,
        report.checks.len()
    );
    let _ = writeln!(s, "| check | result | citation | expected | computed | note |");
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for c in &report.checks {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} |",
            cell(&c.name),
            if c.passed { "PASS" } else { "FAIL" },
            cell(&c.citation),
            cell(&c.expected),
            cell(&c.computed),
            cell(c.note.as_deref().unwrap_or(""))
        );
    }
    s
}
