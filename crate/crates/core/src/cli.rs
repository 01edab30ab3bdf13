//! Command-line front end.
//!
//! Exit codes: 0 success (and "yes" for `member`/`hullmember --quiet`),
//! 1 "no" under `--quiet` or a failed `selfcheck`, 2 usage error,
//! 3 invalid input, 4 size limit exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::engine::{Containment, Engine, PathWitness, Strategy};
use crate::error::Error;
use crate::graph::{Graph, DEFAULT_LONGEST_PATH_CAP};
use crate::hull::ConvexityCertificate;
use crate::io::{parse_graph, write_edge_list};
use crate::oracle::self_check;
use crate::solvers::{self, Invariant, SolverConfig, DEFAULT_SOLVER_CAP};
use crate::spec::{load_matrix_spec, parse_spec, resolve_bounds_capped, ConvexitySpec, MatrixFile, SpecMode};
use crate::vset::VertexSet;

pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_SIZE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "pathconv", version, about = "Intervals, hulls and invariants of path convexities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Graph file (edge list `n m` / `u v`, or DIMACS `p edge` / `e u v`).
    #[arg(short = 'g', long = "graph", global = true)]
    graph: Option<PathBuf>,

    /// Convexity spec: `preset:<name>` or `abcd:<a>,<b>,<c>,<d>`. Repeatable for `compare`.
    #[arg(long = "spec", global = true)]
    spec: Vec<String>,

    /// JSON file with length matrices A, B, C, D (-1 = unbounded).
    #[arg(long, global = true)]
    matrices: Option<PathBuf>,

    /// Comma-separated vertex list, 1-indexed.
    #[arg(short = 'S', long = "set", global = true, value_parser = parse_vertex_list, allow_hyphen_values = true)]
    set: Option<VertexList>,

    #[arg(short = 'z', long = "vertex", global = true)]
    z: Option<usize>,

    /// Decision threshold: c(G) >= R, i(G) <= R, h(G) <= R.
    #[arg(long, global = true)]
    bound: Option<usize>,

    #[arg(long, global = true)]
    json: bool,

    /// Force generic path enumeration.
    #[arg(long, global = true)]
    generic: bool,

    /// Size cap for solvers, oracles and longest-path search.
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print nothing; encode yes/no in the exit code.
    #[arg(short = 'q', long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Compute I(S) with witness paths.
    Interval,
    /// Does z belong to I(S)?
    Member,
    /// Is S convex? Prints an augmenting set otherwise.
    Convex,
    /// Does z belong to H(S)?
    Hullmember,
    /// Convex hull of S with its interval stages.
    Hull,
    /// Convexity number c(G).
    Cn,
    /// Interval number i(G).
    In,
    /// Hull number h(G).
    Hn,
    /// I(S), H(S) and convexity of S under several specs.
    Compare,
    /// Differential check of the engine against the brute-force oracle.
    Selfcheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Interval => "interval",
            Command::Member => "member",
            Command::Convex => "convex",
            Command::Hullmember => "hullmember",
            Command::Hull => "hull",
            Command::Cn => "cn",
            Command::In => "in",
            Command::Hn => "hn",
            Command::Compare => "compare",
            Command::Selfcheck => "selfcheck",
        }
    }
}

#[derive(Clone, Debug)]
struct VertexList(Vec<usize>);

fn parse_vertex_list(s: &str) -> Result<VertexList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("`{t}` is not a vertex number")))
        .collect::<Result<Vec<_>, _>>()
        .map(VertexList)
}

/// Failure modes of one invocation, mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Size(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimitExceeded { .. } => Failure::Size(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// What a successful command produced.
struct RunReport {
    payload: Value,
    human: String,
    /// Exit code for `--quiet` runs.
    verdict: Option<bool>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let started = Instant::now();
    match execute(&cli) {
        Ok(report) => {
            if cli.quiet {
                return match report.verdict {
                    Some(false) => EXIT_NO,
                    _ => 0,
                };
            }
            if cli.json {
                let text = serde_json::to_string_pretty(&report.payload).expect("payload serializes");
                let _ = writeln!(out, "{text}");
            } else {
                let _ = write!(out, "{}", report.human);
            }
            let _ = writeln!(err, "elapsed: {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
            if cli.command == Command::Selfcheck && report.verdict == Some(false) {
                return EXIT_NO;
            }
            0
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Size(m) => (EXIT_SIZE, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Inputs {
    graph: Graph,
    specs: Vec<ConvexitySpec>,
}

fn load_inputs(cli: &Cli) -> Result<Inputs, Failure> {
    let path = cli
        .graph
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("`{}` requires -g FILE", cli.command.name())))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let graph =
        parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut specs = Vec::new();
    for s in &cli.spec {
        specs.push(parse_spec(s).map_err(|e| Failure::Input(format!("--spec {s}: {e}")))?);
    }
    if let Some(m) = &cli.matrices {
        specs.push(load_matrix_spec(m).map_err(|e| Failure::Input(format!("--matrices {}: {e}", m.display())))?);
    }
    if specs.is_empty() {
        return Err(Failure::Usage(format!(
            "`{}` requires --spec STRING or --matrices FILE",
            cli.command.name()
        )));
    }
    if specs.len() > 1 && cli.command != Command::Compare {
        return Err(Failure::Usage(format!(
            "`{}` takes exactly one of --spec / --matrices",
            cli.command.name()
        )));
    }
    Ok(Inputs { graph, specs })
}

fn require_set(cli: &Cli, g: &Graph) -> Result<VertexSet, Failure> {
    let list = cli
        .set
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("`{}` requires -S LIST", cli.command.name())))?;
    g.vertex_set(&list.0)
        .map_err(|e| Failure::Input(format!("-S: {e}")))
}

fn require_z(cli: &Cli, g: &Graph) -> Result<usize, Failure> {
    let z = cli
        .z
        .ok_or_else(|| Failure::Usage(format!("`{}` requires -z VERTEX", cli.command.name())))?;
    g.check_vertex(z).map_err(|e| Failure::Input(format!("-z: {e}")))?;
    Ok(z)
}

fn graph_json(g: &Graph) -> Value {
    let digest = Sha256::digest(write_edge_list(g).as_bytes());
    json!({
        "n": g.n(),
        "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        "sha256": hex::encode(digest),
    })
}

fn spec_json(spec: &ConvexitySpec) -> Value {
    match &spec.mode {
        SpecMode::Symbolic(t) => json!({
            "mode": "symbolic",
            "text": spec.spec_string(),
            "preset": spec.preset,
            "tuple": t.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        SpecMode::Matrix(m) => json!({
            "mode": "matrix",
            "matrices": MatrixFile::from_bounds(m),
        }),
    }
}

fn spec_label(spec: &ConvexitySpec) -> String {
    spec.spec_string().unwrap_or_else(|| "matrices".to_string())
}

fn witness_json(z: usize, w: &PathWitness) -> Value {
    json!({
        "vertex": z,
        "endpoints": [w.endpoints.0, w.endpoints.1],
        "path": w.path.vertices(),
        "bounds": w.bounds,
    })
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

fn fmt_path(w: &PathWitness) -> String {
    let parts: Vec<String> = w.path.vertices().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn execute(cli: &Cli) -> Result<RunReport, Failure> {
    if cli.command == Command::Selfcheck {
        return run_selfcheck(cli);
    }
    let inputs = load_inputs(cli)?;
    let g = &inputs.graph;
    let longest_cap = cli.cap.unwrap_or(0).max(DEFAULT_LONGEST_PATH_CAP);
    let strategy = if cli.generic { Strategy::Generic } else { Strategy::Auto };

    let command = json!({
        "name": cli.command.name(),
        "S": cli.set.as_ref().map(|l| l.0.clone()),
        "z": cli.z,
        "bound": cli.bound,
        "generic": cli.generic,
        "cap": cli.cap,
    });
    let mut payload = json!({
        "command": command,
        "problem": cli.command.name(),
        "graph": graph_json(g),
    });

    if cli.command == Command::Compare {
        let s = require_set(cli, g)?;
        let mut rows = Vec::new();
        let mut human = format!("S = {s}\n");
        for spec in &inputs.specs {
            let rb = resolve_bounds_capped(spec, g, longest_cap)?;
            let engine = Engine::with_strategy(g, &rb, strategy)?;
            let interval = engine.interval_members(&s)?;
            let hull = engine.hull(&s)?;
            let convex = interval == s;
            human.push_str(&format!(
                "{:<28} I(S) = {:<20} H(S) = {:<20} {}\n",
                spec_label(spec),
                interval.to_string(),
                hull.hull().to_string(),
                if convex { "convex" } else { "not convex" }
            ));
            rows.push(json!({
                "spec": spec_json(spec),
                "interval": set_json(&interval),
                "hull": set_json(hull.hull()),
                "convex": convex,
            }));
        }
        payload["spec"] = json!(inputs.specs.iter().map(spec_json).collect::<Vec<_>>());
        payload["result"] = json!({ "rows": rows });
        payload["witnesses"] = json!([]);
        return Ok(RunReport { payload, human, verdict: None });
    }

    let spec = &inputs.specs[0];
    payload["spec"] = spec_json(spec);
    let rb = resolve_bounds_capped(spec, g, longest_cap)?;
    let engine = Engine::with_strategy(g, &rb, strategy)?;

    let (result, witnesses, human, verdict) = match cli.command {
        Command::Interval => {
            let s = require_set(cli, g)?;
            let r = engine.interval(&s)?;
            let mut human = format!("I(S) = {}\n", r.members);
            for (z, w) in &r.witnesses {
                human.push_str(&format!("  {z} via {}\n", fmt_path(w)));
            }
            let added: Vec<usize> = r.witnesses.keys().copied().collect();
            let ws: Vec<Value> = r.witnesses.iter().map(|(z, w)| witness_json(*z, w)).collect();
            (json!({ "members": set_json(&r.members), "added": added }), ws, human, None)
        }
        Command::Member => {
            let s = require_set(cli, g)?;
            let z = require_z(cli, g)?;
            let c = engine.interval_contains(&s, z)?;
            let human = match &c {
                Containment::InSet => format!("yes: {z} is in S\n"),
                Containment::OnPath(w) => format!("yes: {z} lies on {}\n", fmt_path(w)),
                Containment::Outside => format!("no: {z} is not in I(S)\n"),
            };
            let ws = c.witness().map(|w| vec![witness_json(z, w)]).unwrap_or_default();
            let result = json!({
                "z": z,
                "member": c.is_member(),
                "in_set": c == Containment::InSet,
            });
            (result, ws, human, Some(c.is_member()))
        }
        Command::Convex => {
            let s = require_set(cli, g)?;
            match engine.convex_test(&s)? {
                ConvexityCertificate::Convex => (
                    json!({ "convex": true, "augmented": Value::Null }),
                    vec![],
                    format!("{s} is convex\n"),
                    Some(true),
                ),
                ConvexityCertificate::NotConvex { augmented, witness } => {
                    let z = *witness
                        .path
                        .vertices()
                        .iter()
                        .find(|&&v| !s.contains(v))
                        .expect("witness adds a vertex");
                    let human = format!(
                        "{s} is not convex; augmenting set {augmented}; {z} lies on {}\n",
                        fmt_path(&witness)
                    );
                    (
                        json!({ "convex": false, "augmented": set_json(&augmented) }),
                        vec![witness_json(z, &witness)],
                        human,
                        Some(false),
                    )
                }
            }
        }
        Command::Hullmember => {
            let s = require_set(cli, g)?;
            let z = require_z(cli, g)?;
            let member = engine.hull_contains(&s, z)?;
            let human = format!("{}: {z} {} H(S)\n", if member { "yes" } else { "no" }, if member { "is in" } else { "is not in" });
            (json!({ "z": z, "member": member }), vec![], human, Some(member))
        }
        Command::Hull => {
            let s = require_set(cli, g)?;
            let trace = engine.hull(&s)?;
            let mut human = format!("H(S) = {}\n", trace.hull());
            for (k, st) in trace.stages.iter().enumerate() {
                human.push_str(&format!("  I^{k}(S) = {st}\n"));
            }
            let result = json!({
                "hull": set_json(trace.hull()),
                "stages": trace.stages.iter().map(set_json).collect::<Vec<_>>(),
                "steps": trace.steps(),
            });
            (result, vec![], human, None)
        }
        Command::Cn | Command::In | Command::Hn => {
            let cfg = SolverConfig {
                max_vertices: cli.cap.unwrap_or(DEFAULT_SOLVER_CAP),
                max_candidates: None,
                strategy,
            };
            let r = match cli.command {
                Command::Cn => solvers::convexity_number_with(g, &rb, &cfg)?,
                Command::In => solvers::interval_number_with(g, &rb, &cfg)?,
                _ => solvers::hull_number_with(g, &rb, &cfg)?,
            };
            let decision = cli.bound.map(|b| r.decide(b));
            let symbol = match r.invariant {
                Invariant::ConvexityNumber => "c(G)",
                Invariant::IntervalNumber => "i(G)",
                Invariant::HullNumber => "h(G)",
            };
            let mut human = format!("{symbol} = {} with {}\n", r.value, r.optimal_set);
            if r.trivial {
                human.push_str("  (single vertex: only the empty set is a proper subset)\n");
            }
            if let (Some(b), Some(d)) = (cli.bound, decision) {
                let rel = if r.invariant == Invariant::ConvexityNumber { ">=" } else { "<=" };
                human.push_str(&format!("{symbol} {rel} {b}: {}\n", if d { "yes" } else { "no" }));
            }
            let result = json!({
                "invariant": r.invariant.to_string(),
                "value": r.value,
                "optimal_set": set_json(&r.optimal_set),
                "explored": r.explored,
                "capped": r.capped,
                "trivial": r.trivial,
                "bound": cli.bound,
                "decision": decision,
            });
            (result, vec![], human, decision)
        }
        Command::Compare | Command::Selfcheck => unreachable!("handled above"),
    };
    payload["result"] = result;
    payload["witnesses"] = json!(witnesses);
    Ok(RunReport { payload, human, verdict })
}

fn run_selfcheck(cli: &Cli) -> Result<RunReport, Failure> {
    let max_n = cli.cap.unwrap_or(8);
    let report = self_check(cli.seed, max_n)?;
    let mut human = format!(
        "interval instances: {} ({} disagreements)\ngadget cases: {} ({} disagreements)\n{}\n",
        report.interval_instances,
        report.interval_disagreements,
        report.gadget_cases,
        report.gadget_disagreements,
        if report.ok() { "OK" } else { "FAILED" }
    );
    for f in &report.failures {
        human.push_str(&format!("  {f}\n"));
    }
    let payload = json!({
        "command": { "name": "selfcheck", "seed": cli.seed, "cap": max_n },
        "problem": "selfcheck",
        "result": report,
        "ok": report.ok(),
    });
    Ok(RunReport {
        payload,
        human,
        verdict: Some(report.ok()),
    })
}
