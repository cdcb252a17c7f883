//! Batch driver behind the `ksub` binary: reads an instance file, runs
//! `solve`, `relax` or `verify`, and renders a report.
//!
//! Structured output is one `key=value` per line with the keys `status`,
//! `cost_halves`, `certificate`, `nodes` and `relax_halves`. Certificates
//! list deleted items (vertices, clauses, variables or edges) 1-based.

pub mod format;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::gfvs::{
    reduce_fvs, relax_gfvs, solve_gfvs, AnyElem, AnyGroup, GfvsError, GroupOracle, LabelledGraph, Z2Pow,
};
use crate::reductions::{check_certificate, decode, encode, Certificate, ProblemInstance, ReductionError};
use crate::solver::{minimize, solve_fpt_with_stats, FptStats, Relaxation, SolveError};
use crate::vcsp::HalfCost;
use crate::verify::run_all;

pub use format::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Relax,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    VertexCover,
    /// Feedback Vertex Set, through GFVS.
    Fvs,
    A2satClause,
    /// Variable deletion at cost 1 per variable; every clause is hard.
    A2satVar,
    Ulc,
    MultiwayCut,
    Gfvs,
}

impl ProblemKind {
    pub const NAMES: [&'static str; 7] =
        ["vertex-cover", "fvs", "a2sat-clause", "a2sat-var", "ulc", "multiway-cut", "gfvs"];

    /// Default reading of a file: `p edge` with terminals is a multiway cut
    /// instance, without them a vertex cover instance.
    pub fn infer(text: &str) -> Option<ProblemKind> {
        let mut kind = None;
        for l in text.lines() {
            let mut toks = l.split_whitespace();
            match toks.next() {
                Some("p") => {
                    kind = match toks.next()? {
                        "edge" => Some(ProblemKind::VertexCover),
                        "wcnf" => Some(ProblemKind::A2satClause),
                        "ulc" => return Some(ProblemKind::Ulc),
                        "gfvs" => return Some(ProblemKind::Gfvs),
                        _ => return None,
                    }
                }
                Some("t") if kind == Some(ProblemKind::VertexCover) => return Some(ProblemKind::MultiwayCut),
                _ => {}
            }
        }
        kind
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        use ProblemKind::*;
        Ok(match s {
            "vertex-cover" | "vc" => VertexCover,
            "fvs" => Fvs,
            "a2sat-clause" => A2satClause,
            "a2sat-var" => A2satVar,
            "ulc" => Ulc,
            "multiway-cut" | "mwc" => MultiwayCut,
            "gfvs" => Gfvs,
            _ => return Err(format!("unknown problem '{s}', expected one of {}", Self::NAMES.join(", "))),
        })
    }
}

/// Budget in problem units: `3`, `2.5` or `2½`.
pub fn parse_budget(s: &str) -> Result<HalfCost, String> {
    let bad = || format!("invalid budget '{s}'");
    let (whole, half) = if let Some(w) = s.strip_suffix('½') {
        (w, 1)
    } else if let Some((w, f)) = s.split_once('.') {
        match f.trim_end_matches('0') {
            "" => (w, 0),
            "5" => (w, 1),
            _ => return Err(format!("budget '{s}' is not a multiple of ½")),
        }
    } else {
        (s, 0)
    };
    let w: u64 = if whole.is_empty() && half == 1 { 0 } else { whole.parse().map_err(|_| bad())? };
    Ok(HalfCost(2 * w + half))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Read from the header when absent.
    pub problem: Option<ProblemKind>,
    /// Defaults to the total soft weight (VCSP problems) or the vertex count
    /// (GFVS and FVS).
    pub budget: Option<HalfCost>,
    pub structured: bool,
    /// Re-check every certificate with the problem-level checker.
    pub verify: bool,
    pub seed: u64,
    /// Random cases per suite for `verify`.
    pub cases: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Solve,
            input: None,
            problem: None,
            budget: None,
            structured: false,
            verify: true,
            seed: 0,
            cases: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// Report fields; absent ones are not printed.
#[derive(Debug, Default)]
struct Report {
    status: &'static str,
    cost: Option<HalfCost>,
    certificate: Option<Vec<usize>>,
    labels: Option<String>,
    nodes: Option<usize>,
    relax: Option<HalfCost>,
    solution: Option<String>,
    message: Option<String>,
}

impl Report {
    fn status(status: &'static str) -> Self {
        Report { status, ..Report::default() }
    }

    fn failure(status: &'static str, message: impl ToString) -> Self {
        Report { status, message: Some(message.to_string()), ..Report::default() }
    }

    fn render(&self, structured: bool) -> String {
        let cert = |c: &Vec<usize>| c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        if structured {
            writeln!(s, "status={}", self.status).unwrap();
            if let Some(c) = self.cost {
                writeln!(s, "cost_halves={}", c.0).unwrap();
            }
            if let Some(c) = &self.certificate {
                writeln!(s, "certificate={}", cert(c)).unwrap();
            }
            if let Some(n) = self.nodes {
                writeln!(s, "nodes={n}").unwrap();
            }
            if let Some(r) = self.relax {
                writeln!(s, "relax_halves={}", r.0).unwrap();
            }
        } else {
            writeln!(s, "status: {}", self.status).unwrap();
            if let Some(m) = &self.message {
                writeln!(s, "message: {m}").unwrap();
            }
            if let Some(c) = self.cost {
                writeln!(s, "cost: {c}").unwrap();
            }
            if let Some(c) = &self.certificate {
                writeln!(s, "deleted: {}", cert(c)).unwrap();
            }
            if let Some(l) = &self.labels {
                writeln!(s, "labels: {l}").unwrap();
            }
            if let Some(n) = self.nodes {
                writeln!(s, "nodes: {n}").unwrap();
            }
            if let Some(r) = self.relax {
                writeln!(s, "relaxation: {r}").unwrap();
            }
            if let Some(x) = &self.solution {
                writeln!(s, "extreme solution: {x}").unwrap();
            }
        }
        s
    }
}

enum Failure {
    Parse(String),
    Invariant(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            // Produced by the encoders only on malformed input.
            ReductionError::SelfLoop(_)
            | ReductionError::ClauseWidth(_)
            | ReductionError::DuplicateTerminal(_)
            | ReductionError::OutOfRange { .. }
            | ReductionError::ZeroWeight
            | ReductionError::Vcsp(_) => Failure::Parse(e.to_string()),
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::Invariant(e.to_string())
    }
}

impl From<GfvsError> for Failure {
    fn from(e: GfvsError) -> Self {
        Failure::Invariant(e.to_string())
    }
}

pub fn parse(text: &str, kind: ProblemKind) -> Result<ProblemOrGraph, ParseError> {
    use ProblemKind::*;
    Ok(match kind {
        VertexCover => ProblemOrGraph::Problem(ProblemInstance::VertexCover(format::parse_graph(text)?)),
        Fvs => {
            let g = reduce_fvs(&format::parse_graph(text)?);
            let m = g.group.m;
            ProblemOrGraph::Graph(format::to_any(&g, AnyGroup::Z2Pow(Z2Pow { m }), |x| AnyElem::Mask(x.clone())))
        }
        A2satClause => ProblemOrGraph::Problem(ProblemInstance::Almost2SatClause(format::parse_wcnf(text)?.0)),
        A2satVar => {
            let (mut cnf, _) = format::parse_wcnf(text)?;
            cnf.clauses.iter_mut().for_each(|c| c.weight = None);
            let costs = vec![1; cnf.n];
            ProblemOrGraph::Problem(ProblemInstance::Almost2SatVar { cnf, costs })
        }
        Ulc => ProblemOrGraph::Problem(ProblemInstance::UlcEdge(format::parse_ulc(text)?)),
        MultiwayCut => ProblemOrGraph::Problem(ProblemInstance::MultiwayCutEdge(format::parse_multiway_cut(text)?)),
        Gfvs => ProblemOrGraph::Graph(format::parse_gfvs(text)?),
    })
}

/// A parsed instance: either solved through the VCSP encoding or a
/// group-labelled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemOrGraph {
    Problem(ProblemInstance),
    Graph(LabelledGraph<AnyGroup>),
}

pub fn run(config: &RunConfig) -> Outcome {
    let report = match config.command {
        Command::Verify => return run_verify(config),
        _ => run_on_input(config),
    };
    let (code, report) = match report {
        Ok(r) => (if r.status == "ok" { EXIT_OK } else { EXIT_NO_SOLUTION }, r),
        Err(Failure::Parse(m)) => (EXIT_PARSE, Report::failure("parse-error", m)),
        Err(Failure::Invariant(m)) => (EXIT_INVARIANT, Report::failure("error", m)),
    };
    Outcome { code, report: report.render(config.structured) }
}

fn run_on_input(config: &RunConfig) -> Result<Report, Failure> {
    let Some(path) = &config.input else { return Err(Failure::Parse("no input file".into())) };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let kind = match config.problem {
        Some(k) => k,
        None => ProblemKind::infer(&text).ok_or_else(|| Failure::Parse("unrecognised header".into()))?,
    };
    match (parse(&text, kind)?, config.command) {
        (ProblemOrGraph::Problem(p), Command::Solve) => solve_problem(&p, config),
        (ProblemOrGraph::Problem(p), _) => relax_problem(&p),
        (ProblemOrGraph::Graph(g), Command::Solve) => solve_graph(&g, config),
        (ProblemOrGraph::Graph(g), _) => relax_graph(&g),
    }
}

fn solve_problem(p: &ProblemInstance, config: &RunConfig) -> Result<Report, Failure> {
    let (inst, map) = encode(p)?;
    let budget = config.budget.unwrap_or(HalfCost(inst.total_soft_halves()));
    let mut stats = FptStats::default();
    let sol = solve_fpt_with_stats(&inst, budget, &mut stats)?;
    let Some(sol) = sol else {
        return Ok(Report { nodes: Some(stats.nodes), relax: stats.relaxed, ..Report::status("no-solution") });
    };
    let cert = decode(&inst, &map, &sol.assignment)?;
    if HalfCost(2 * cert.cost) != sol.cost {
        return Err(Failure::Invariant(format!("decoded cost {} differs from solver cost {}", cert.cost, sol.cost)));
    }
    if config.verify {
        check_certificate(p, &cert).map_err(Failure::Invariant)?;
    }
    Ok(Report {
        cost: Some(sol.cost),
        labels: Some(labels_of(&cert)),
        certificate: Some(cert.deleted),
        nodes: Some(sol.nodes),
        relax: Some(sol.relaxed),
        ..Report::status("ok")
    })
}

fn labels_of(cert: &Certificate) -> String {
    cert.labels.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn relax_problem(p: &ProblemInstance) -> Result<Report, Failure> {
    let (inst, _) = encode(p)?;
    Ok(match minimize(&inst, &vec![None; inst.n()])? {
        Relaxation::Optimal(r) => Report {
            relax: Some(r.cost),
            solution: Some(r.assignment.to_string()),
            ..Report::status("ok")
        },
        Relaxation::Infeasible => Report::status("no-solution"),
    })
}

fn solve_graph(g: &LabelledGraph<AnyGroup>, config: &RunConfig) -> Result<Report, Failure> {
    let k = match config.budget {
        Some(b) => (b.0 / 2) as usize,
        None => g.n(),
    };
    let relax = root_relaxation(g)?;
    let Some(sol) = solve_gfvs(g, k)? else { return Ok(Report { relax, ..Report::status("no-solution") }) };
    if config.verify {
        check_labelling(g, &sol.deleted, &sol.labels).map_err(Failure::Invariant)?;
    }
    let labels = sol
        .labels
        .iter()
        .map(|l| l.as_ref().map_or("-".to_string(), format::format_elem))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Report {
        cost: Some(HalfCost(2 * sol.deleted.len() as u64)),
        certificate: Some(sol.deleted),
        labels: Some(labels),
        nodes: Some(sol.nodes),
        relax,
        ..Report::status("ok")
    })
}

/// Relaxation with vertex 1 labelled by the identity: a lower bound on
/// every solution that keeps vertex 1.
fn root_relaxation(g: &LabelledGraph<AnyGroup>) -> Result<Option<HalfCost>, Failure> {
    if g.n() == 0 {
        return Ok(Some(HalfCost::ZERO));
    }
    Ok(relax_gfvs(g, &[(0, g.group.identity())], &[])?.map(|r| r.cost))
}

fn relax_graph(g: &LabelledGraph<AnyGroup>) -> Result<Report, Failure> {
    if g.n() == 0 {
        return Ok(Report { relax: Some(HalfCost::ZERO), ..Report::status("ok") });
    }
    Ok(match relax_gfvs(g, &[(0, g.group.identity())], &[])? {
        Some(r) => Report {
            relax: Some(r.cost),
            solution: Some(r.z.iter().map(|&h| HalfCost(h.into()).to_units_string()).collect::<Vec<_>>().join(" ")),
            ..Report::status("ok")
        },
        None => Report::status("no-solution"),
    })
}

/// Every surviving edge `(u, v, λ)` satisfies `φ(u)λ = φ(v)`.
pub fn check_labelling(
    g: &LabelledGraph<AnyGroup>,
    deleted: &[usize],
    labels: &[Option<AnyElem>],
) -> Result<(), String> {
    for (u, v, l) in g.edges() {
        if deleted.contains(u) || deleted.contains(v) {
            continue;
        }
        let (Some(a), Some(b)) = (&labels[*u], &labels[*v]) else {
            return Err(format!("surviving vertex {} or {} unlabelled", u + 1, v + 1));
        };
        if !g.group.equal(&g.group.multiply(a, l), b) {
            return Err(format!("edge {} {} violated", u + 1, v + 1));
        }
    }
    Ok(())
}

fn run_verify(config: &RunConfig) -> Outcome {
    let reports = run_all(config.seed, config.cases);
    let ok = reports.iter().all(|r| r.passed());
    let mut s = String::new();
    if config.structured {
        writeln!(s, "status={}", if ok { "ok" } else { "error" }).unwrap();
        for r in &reports {
            writeln!(s, "suite={} cases={} failures={}", r.name.replace(' ', "-"), r.cases, r.failures).unwrap();
        }
    } else {
        for r in &reports {
            let verdict = if r.passed() { "ok" } else { "FAILED" };
            writeln!(s, "{:<22} {verdict} ({} cases, {} failures)", r.name, r.cases, r.failures).unwrap();
            if let Some(f) = &r.first_failure {
                writeln!(s, "  first failure: {f}").unwrap();
            }
        }
    }
    Outcome { code: if ok { EXIT_OK } else { EXIT_INVARIANT }, report: s }
}
