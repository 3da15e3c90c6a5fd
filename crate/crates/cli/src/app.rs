//! Argument parsing and dispatch. Exit codes: 0 pass, 1 verification
//! failure, 2 usage or input error.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use g2topo::g2::{classify_plane3, flow_to_critical, hl_pair_criterion, phi_squared, FlowDirection, FlowSettings};
use g2topo::gradedring::check_ring_hom;
use g2topo::homology::{compute_homology, mod2_homology, HomologyTable};
use g2topo::specseq::solve;
use serde::Serialize;

use crate::fixtures::FixtureFile;
use crate::json::{table_to_json, GroupJson};
use crate::planes::{class_name, parse_plane};
use crate::problems::{replay_problems, solve_json, ProblemFile};
use crate::report::{render_markdown, run_report, ReportOptions, DEFAULT_SEED};
use crate::rings::{MapFile, RingFile};
use crate::spaces::{parse_space, ComplexJson, SPACE_SYNTAX};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "g2topo", version, about = "Exact homology, spectral sequences, cohomology rings and G2 geometry")]
pub struct Cli {
    /// Fixture file; defaults to $G2TOPO_FIXTURES, then the built-in copy.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral homology of a named space or a chain-complex file.
    Homology {
        #[arg(long, help = format!("one of {SPACE_SYNTAX}"), required_unless_present = "complex")]
        space: Option<String>,
        /// Chain complex JSON: {"ranks", "boundaries", "labels"}.
        #[arg(long, conflicts_with = "space")]
        complex: Option<PathBuf>,
        #[arg(long, conflicts_with = "markdown")]
        json: bool,
        #[arg(long)]
        markdown: bool,
    },
    /// Serre spectral sequence problems.
    Specseq {
        #[command(subcommand)]
        command: SpecseqCommand,
    },
    /// Graded ring presentations.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Octonions, calibrations and planes in R^7.
    G2 {
        #[command(subcommand)]
        command: G2Command,
    },
    /// Check every fixture and print the results.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Restrict to one fixture.
        #[arg(long)]
        only: Option<String>,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpecseqCommand {
    /// Run one of the named fibrations from the fixture file.
    Replay {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Solve a problem file.
    Solve {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingCommand {
    /// Additive structure degree by degree.
    Dims {
        file: PathBuf,
        #[arg(long)]
        cutoff: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check that a generator map is a ring homomorphism.
    Hom { source: PathBuf, target: PathBuf, map: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum G2Command {
    /// Classify a 3-plane as ass+, ass-, hl or generic.
    Classify {
        #[arg(long)]
        plane: String,
    },
    /// Follow the gradient of Φ from a 3-plane.
    Flow {
        #[arg(long)]
        start: String,
        #[arg(long, value_enum)]
        dir: Dir,
        #[arg(long, default_value_t = FlowSettings::default().step)]
        step: f64,
        #[arg(long, default_value_t = FlowSettings::default().tol)]
        tol: f64,
        #[arg(long, default_value_t = FlowSettings::default().max_iterations)]
        max_iterations: usize,
    },
    /// Arithmetic criterion for a Harvey–Lawson pair.
    HlPair {
        #[arg(long, allow_negative_numbers = true)]
        p1: i64,
        #[arg(long, allow_negative_numbers = true)]
        euler: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    Up,
    Down,
}

/// What a command printed and how it ended.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn pass(text: String) -> Self {
        Output { text, code: EXIT_PASS }
    }

    fn verdict(text: String, passed: bool) -> Self {
        Output {
            text,
            code: if passed { EXIT_PASS } else { EXIT_FAIL },
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct HomologyJson {
    space: String,
    homology: Vec<GroupJson>,
    betti: Vec<usize>,
    mod2: Vec<usize>,
    euler_characteristic: i64,
}

fn homology_markdown(t: &HomologyTable, mod2: &[usize]) -> String {
    let mut s = format!("| n | H_n({}) | mod 2 |\n|---|---|---|\n", t.space_name);
    for (n, g) in t.groups.iter().enumerate() {
        s.push_str(&format!("| {n} | {g} | {} |\n", mod2[n]));
    }
    s
}

/// Runs a parsed command; errors are input errors (exit 2).
pub fn execute(cli: Cli) -> Result<Output> {
    let fixtures = || FixtureFile::load(cli.fixtures.as_deref());
    match cli.command {
        Command::Homology {
            space,
            complex,
            json,
            markdown,
        } => {
            let (name, c) = match (space, complex) {
                (Some(s), _) => (s.clone(), parse_space(&s)?),
                (None, Some(path)) => (path.display().to_string(), read_json::<ComplexJson>(&path)?.to_complex()?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let t = compute_homology(&name, &c)?;
            let mod2 = mod2_homology(&c);
            let text = if json {
                to_json(&HomologyJson {
                    space: name,
                    homology: table_to_json(&t.groups)?,
                    betti: t.betti_numbers(),
                    mod2,
                    euler_characteristic: t.euler_characteristic(),
                })?
            } else if markdown {
                homology_markdown(&t, &mod2)
            } else {
                format!("H_*({name}) = {}\n", t.notation())
            };
            Ok(Output::pass(text))
        }
        Command::Specseq { command } => match command {
            SpecseqCommand::Replay { name, json } => {
                let f = fixtures()?;
                let replay = f.replay(&name).ok_or_else(|| {
                    let names: Vec<&str> = f.replays.iter().map(|r| r.name.as_str()).collect();
                    anyhow!("no replay `{name}`; known: {}", names.join(", "))
                })?;
                let problems = replay_problems(&f, replay)?;
                let problem = problems.deduction.as_ref().unwrap_or(&problems.known);
                let report = solve(problem, Default::default())?;
                let found = !report.solutions.is_empty();
                let text = if json {
                    to_json(&solve_json(&name, &report)?)?
                } else {
                    solve_text(&name, &replay.citation, &report)
                };
                Ok(Output::verdict(text, found))
            }
            SpecseqCommand::Solve { file, json } => {
                let f = fixtures()?;
                let spec: ProblemFile = read_json(&file)?;
                let (problem, bounds) = spec.to_problem(&f)?;
                let report = solve(&problem, bounds)?;
                let found = !report.solutions.is_empty();
                let text = if json {
                    to_json(&solve_json(&problem.name, &report)?)?
                } else {
                    solve_text(&problem.name, "", &report)
                };
                Ok(Output::verdict(text, found))
            }
        },
        Command::Ring { command } => match command {
            RingCommand::Dims { file, cutoff, json } => {
                let ring = read_json::<RingFile>(&file)?.to_split()?;
                let dims = ring.graded_dimensions(cutoff);
                let text = if json {
                    to_json(&table_to_json(dims.groups())?)?
                } else {
                    dims.groups()
                        .iter()
                        .enumerate()
                        .map(|(n, g)| format!("H^{n} = {g}\n"))
                        .collect()
                };
                Ok(Output::pass(text))
            }
            RingCommand::Hom { source, target, map } => {
                let source = read_json::<RingFile>(&source)?.to_split()?;
                let target = read_json::<RingFile>(&target)?.to_split()?;
                let map: MapFile = read_json(&map)?;
                let verdict = check_ring_hom(&source, &target, &map.into())?;
                Ok(Output::verdict(format!("{verdict:?}\n"), verdict.passed()))
            }
        },
        Command::G2 { command } => match command {
            G2Command::Classify { plane } => {
                let p = parse_plane(&plane)?;
                let class = classify_plane3(&p)?;
                Ok(Output::pass(format!("{} (Φ² = {})\n", class_name(&class), phi_squared(&p)?)))
            }
            G2Command::Flow {
                start,
                dir,
                step,
                tol,
                max_iterations,
            } => {
                let direction = match dir {
                    Dir::Up => FlowDirection::Ascend,
                    Dir::Down => FlowDirection::Descend,
                };
                let settings = FlowSettings {
                    step,
                    tol,
                    max_iterations,
                };
                let p = parse_plane(&start)?;
                match flow_to_critical(&p, direction, settings) {
                    Ok(out) => {
                        let mut text = format!("Φ = {:.12} after {} iterations\n", out.phi, out.iterations);
                        for row in &out.frame {
                            let cells: Vec<String> = row.iter().map(|x| format!("{x:.9}")).collect();
                            text.push_str(&format!("({})\n", cells.join(", ")));
                        }
                        Ok(Output::verdict(text, out.is_monotone(direction)))
                    }
                    Err(e) => Ok(Output::verdict(format!("{e}\n"), false)),
                }
            }
            G2Command::HlPair { p1, euler } => {
                let ok = hl_pair_criterion(p1, euler);
                let text = if ok {
                    format!("⟨p1, [X]⟩ = {p1} ≠ ±{euler}: criterion holds\n")
                } else {
                    format!("⟨p1, [X]⟩ = {p1} = ±{euler}: criterion fails\n")
                };
                Ok(Output::verdict(text, ok))
            }
        },
        Command::Report { format, only, seed } => {
            let f = fixtures()?;
            let report = run_report(&f, &ReportOptions { only, seed })?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Markdown => render_markdown(&report),
            };
            Ok(Output::verdict(text, report.passed))
        }
    }
}

fn solve_text(name: &str, citation: &str, report: &g2topo::specseq::SolveReport) -> String {
    let mut s = name.to_string();
    if !citation.is_empty() {
        s.push_str(&format!(" ({citation})"));
    }
    s.push_str(&format!(": {} solution(s), {} search nodes\n", report.solutions.len(), report.nodes));
    for (i, sol) in report.solutions.iter().enumerate() {
        s.push_str(&format!(
            "  [{i}] base {}\n      total {}{}\n",
            HomologyTable::new("", sol.base.clone()).notation(),
            HomologyTable::new("", sol.total.clone()).notation(),
            if sol.necessary_only { " (extensions checked by necessary conditions only)" } else { "" }
        ));
    }
    s
}

/// Parses and runs `args` (including the program name). Returns the exit
/// code with what goes to stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() { (code, String::new(), text) } else { (code, text, String::new()) };
        }
    };
    match execute(cli) {
        Ok(out) => (out.code, out.text, String::new()),
        Err(e) => (EXIT_USAGE, String::new(), format!("error: {e:#}\n")),
    }
}
