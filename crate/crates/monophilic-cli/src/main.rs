//! Command-line front end: exact list-coloring counts, decision searches,
//! gadget construction, and a self-verification suite.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failures,
//! 2 malformed input, 3 search budget exhausted.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monophilic::count::{col_pinned, col_uniform};
use monophilic::gadgets::{
    build_augmented_gadget, build_h_graph, build_h_witness_assignment, build_zero_gadget,
};
use monophilic::graph::{
    build_complete, build_complete_bipartite, build_cycle, build_path, build_theta, Graph,
};
use monophilic::search::{is_choosable, is_monophilic, min_colorings, SearchConfig};
use monophilic::{Error, ListAssignment, Pin};
use serde_json::{json, Map, Value};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Environment variable consulted for the default search node budget.
const BUDGET_ENV: &str = "MONOPHILIC_BUDGET";

#[derive(Parser)]
#[command(
    name = "monophilic",
    version,
    about = "Exact list-coloring counts, minimization searches, and gadget builders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count proper colorings of a graph from lists or a uniform palette.
    Count(CountArgs),
    /// Decide uniform minimality or choosability, or minimize exactly.
    Decide(DecideArgs),
    /// Write a named graph (and for list gadgets its assignment) as JSON.
    Gadget(GadgetArgs),
    /// Run the verification suite, one JSON line per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Graph JSON file: {"vertices": N, "edges": [[u, v], ...]}.
    #[arg(long)]
    graph: PathBuf,
    /// List-assignment JSON file: {"lists": {"0": [1, 2], ...}}.
    #[arg(long, conflicts_with = "uniform")]
    lists: Option<PathBuf>,
    /// Give every vertex the palette {1..n} instead of a lists file.
    #[arg(long)]
    uniform: Option<u32>,
    /// Force vertex V to color C (repeatable).
    #[arg(long = "pin", value_name = "V=C")]
    pin: Vec<String>,
}

#[derive(Args)]
struct DecideArgs {
    /// Graph JSON file.
    #[arg(long)]
    graph: PathBuf,
    /// List size for every vertex.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Search node budget (default: $MONOPHILIC_BUDGET or 100000000).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads; the value never changes results.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    /// Is the uniform assignment a minimizer of the coloring count?
    Monophilic,
    /// Does every assignment of this list size admit a coloring?
    Choosable,
    /// Exact minimum of the count over all assignments, with witness.
    Minimize,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Monophilic => "monophilic",
            Mode::Choosable => "choosable",
            Mode::Minimize => "minimize",
        }
    }
}

#[derive(Args)]
struct GadgetArgs {
    /// One of: path, cycle, complete, bipartite, theta, l0, lj, h.
    kind: String,
    /// Numeric parameters for the kind (e.g. `theta 2 2 4`, `h 2`).
    params: Vec<u64>,
    /// Directory the JSON files are written into.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// fast: every check except the two exhaustive sweeps; full: all.
    #[arg(long, value_enum, default_value_t = SuiteKind::Fast)]
    suite: SuiteKind,
    /// Run only the checks with these ids (comma-separated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
    /// Corrupt a named constant to demonstrate failures surface.
    /// Available: path-constant.
    #[arg(long)]
    inject_fault: Option<String>,
    /// Worker threads; the value never changes results.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(ValueEnum, Clone, Copy)]
enum SuiteKind {
    Fast,
    Full,
}

/// A failure to be reported on stderr, with its process exit code.
struct CliFailure {
    code: u8,
    message: String,
}

impl CliFailure {
    fn input(message: impl Into<String>) -> Self {
        CliFailure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliFailure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        CliFailure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliFailure> {
    match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Decide(args) => cmd_decide(args),
        Command::Gadget(args) => cmd_gadget(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliFailure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Graph::from_json_str(&text)?)
}

fn load_lists(path: &Path, vertex_count: usize) -> Result<ListAssignment, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliFailure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(ListAssignment::from_json_str(&text, vertex_count)?)
}

fn parse_pins(raw: &[String]) -> Result<Vec<Pin>, CliFailure> {
    raw.iter()
        .map(|entry| {
            let (v, c) = entry.split_once('=').ok_or_else(|| {
                CliFailure::input(format!("pin {entry:?} is not of the form V=C"))
            })?;
            let vertex = v
                .trim()
                .parse()
                .map_err(|_| CliFailure::input(format!("pin vertex {v:?} is not an integer")))?;
            let color = c
                .trim()
                .parse()
                .map_err(|_| CliFailure::input(format!("pin color {c:?} is not an integer")))?;
            Ok(Pin { vertex, color })
        })
        .collect()
}

fn cmd_count(args: CountArgs) -> Result<u8, CliFailure> {
    let g = load_graph(&args.graph)?;
    let lists = match (&args.lists, args.uniform) {
        (Some(path), None) => load_lists(path, g.vertex_count())?,
        (None, Some(n)) => ListAssignment::uniform(g.vertex_count(), n),
        _ => {
            return Err(CliFailure::input(
                "exactly one of --lists or --uniform is required",
            ))
        }
    };
    let pins = parse_pins(&args.pin)?;
    let count = col_pinned(&g, &lists, &pins)?;
    println!("{count}");
    Ok(0)
}

fn assignment_value(a: &ListAssignment) -> Value {
    serde_json::from_str(&a.to_json_string()).expect("assignment JSON round-trips")
}

/// Builds the single-line decide report, skipping absent optional fields so
/// the output stays diffable.
fn report(fields: Vec<(&str, Option<Value>)>) -> Value {
    let mut map = Map::new();
    for (key, value) in fields {
        if let Some(value) = value {
            map.insert(key.to_string(), value);
        }
    }
    Value::Object(map)
}

fn cmd_decide(args: DecideArgs) -> Result<u8, CliFailure> {
    let g = load_graph(&args.graph)?;
    let config = SearchConfig {
        budget: resolve_budget(args.budget)?,
        threads: args.threads,
        ..SearchConfig::default()
    };
    let outcome = decide_report(&g, &args, &config);
    match outcome {
        Ok(line) => {
            println!("{line}");
            Ok(0)
        }
        Err(Error::BudgetExceeded { visited }) => {
            println!(
                "{}",
                json!({
                    "mode": args.mode.name(),
                    "n": args.n,
                    "verdict": "unknown",
                    "nodes_visited": visited,
                })
            );
            Ok(EXIT_RESOURCE)
        }
        Err(err) => Err(err.into()),
    }
}

fn decide_report(g: &Graph, args: &DecideArgs, config: &SearchConfig) -> Result<Value, Error> {
    let n = args.n;
    Ok(match args.mode {
        Mode::Monophilic => {
            let v = is_monophilic(g, n, config)?;
            report(vec![
                ("mode", Some("monophilic".into())),
                ("n", Some(n.into())),
                ("verdict", Some(v.monophilic.into())),
                ("uniform_count", Some(v.uniform_count.to_string().into())),
                ("min_count", Some(v.min_count.to_string().into())),
                ("witness", v.witness.as_ref().map(assignment_value)),
                ("vacuous", Some(v.vacuous.into())),
                ("nodes_visited", Some(v.nodes_visited.into())),
            ])
        }
        Mode::Choosable => {
            let v = is_choosable(g, n, config)?;
            report(vec![
                ("mode", Some("choosable".into())),
                ("n", Some(n.into())),
                ("verdict", Some(v.choosable.into())),
                ("uniform_count", Some(col_uniform(g, n)?.to_string().into())),
                ("witness", v.zero_witness.as_ref().map(assignment_value)),
                ("nodes_visited", Some(v.nodes_visited.into())),
            ])
        }
        Mode::Minimize => {
            let v = min_colorings(g, n, config)?;
            report(vec![
                ("mode", Some("minimize".into())),
                ("n", Some(n.into())),
                ("verdict", Some(v.min_count.to_string().into())),
                ("uniform_count", Some(col_uniform(g, n)?.to_string().into())),
                ("min_count", Some(v.min_count.to_string().into())),
                ("witness", Some(assignment_value(&v.witness))),
                ("nodes_visited", Some(v.nodes_visited.into())),
            ])
        }
    })
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, CliFailure> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw.parse().map_err(|_| {
            CliFailure::input(format!(
                "{BUDGET_ENV}={raw:?} is not an integer node budget"
            ))
        }),
        Err(_) => Ok(SearchConfig::default().budget),
    }
}

fn cmd_gadget(args: GadgetArgs) -> Result<u8, CliFailure> {
    let p = &args.params;
    let arity = |want: usize| -> Result<(), CliFailure> {
        if p.len() == want {
            Ok(())
        } else {
            Err(CliFailure::input(format!(
                "gadget {} takes {want} parameter(s), got {}",
                args.kind,
                p.len()
            )))
        }
    };
    let small = |value: u64| -> Result<usize, CliFailure> {
        usize::try_from(value).map_err(|_| CliFailure::input("parameter out of range"))
    };
    let color = |value: u64| -> Result<u32, CliFailure> {
        u32::try_from(value).map_err(|_| CliFailure::input("parameter out of range"))
    };

    match args.kind.as_str() {
        "path" => {
            arity(1)?;
            write_graph(&args.out_dir, "path", &build_path(small(p[0])?)?)?;
        }
        "cycle" => {
            arity(1)?;
            write_graph(&args.out_dir, "cycle", &build_cycle(small(p[0])?)?)?;
        }
        "complete" => {
            arity(1)?;
            write_graph(&args.out_dir, "complete", &build_complete(small(p[0])?)?)?;
        }
        "bipartite" => {
            arity(2)?;
            let g = build_complete_bipartite(small(p[0])?, small(p[1])?)?;
            write_graph(&args.out_dir, "bipartite", &g)?;
        }
        "theta" => {
            arity(3)?;
            let g = build_theta(small(p[0])?, small(p[1])?, small(p[2])?)?;
            write_graph(&args.out_dir, "theta", &g)?;
        }
        "l0" => {
            arity(1)?;
            let (g, lists) = build_zero_gadget(color(p[0])?)?;
            write_graph(&args.out_dir, "l0", &g)?;
            write_lists(&args.out_dir, "l0", &lists)?;
        }
        "lj" => {
            arity(2)?;
            let (g, lists) = build_augmented_gadget(color(p[0])?, color(p[1])?)?;
            write_graph(&args.out_dir, "lj", &g)?;
            write_lists(&args.out_dir, "lj", &lists)?;
        }
        "h" => {
            arity(1)?;
            let (g, layout) = build_h_graph(color(p[0])?)?;
            let lists = build_h_witness_assignment(&layout)?;
            write_graph(&args.out_dir, "h", &g)?;
            write_lists(&args.out_dir, "h", &lists)?;
            let copies: Vec<Vec<Value>> = layout
                .copies
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| json!({"a_ids": c.a_ids, "b_ids": c.b_ids}))
                        .collect()
                })
                .collect();
            let doc = json!({
                "n": layout.n,
                "x": layout.x.to_string(),
                "p": layout.p,
                "vertex_count": layout.vertex_count,
                "v_ids": layout.v_ids,
                "w_ids": layout.w_ids,
                "copies": copies,
            });
            write_file(&args.out_dir, "h.layout.json", &doc.to_string())?;
        }
        other => {
            return Err(CliFailure::input(format!(
                "unknown gadget kind {other:?} (available: path, cycle, complete, bipartite, theta, l0, lj, h)"
            )));
        }
    }
    Ok(0)
}

fn write_graph(dir: &Path, stem: &str, g: &Graph) -> Result<(), CliFailure> {
    write_file(dir, &format!("{stem}.graph.json"), &g.to_json_string())
}

fn write_lists(dir: &Path, stem: &str, lists: &ListAssignment) -> Result<(), CliFailure> {
    write_file(dir, &format!("{stem}.lists.json"), &lists.to_json_string())
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), CliFailure> {
    fs::create_dir_all(dir)
        .map_err(|e| CliFailure::input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, format!("{content}\n"))
        .map_err(|e| CliFailure::input(format!("cannot write {}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliFailure> {
    let fault = match args.inject_fault.as_deref() {
        None => None,
        Some("path-constant") => Some(verify::Fault::PathConstant),
        Some(other) => {
            return Err(CliFailure::input(format!(
                "unknown fault {other:?} (available: path-constant)"
            )));
        }
    };
    let options = verify::VerifyOptions {
        full: matches!(args.suite, SuiteKind::Full),
        only: args.only,
        fault,
        threads: args.threads,
    };
    let outcomes = verify::run_suite(&options);
    let mut failures = 0usize;
    for outcome in &outcomes {
        if !outcome.pass {
            failures += 1;
        }
        println!(
            "{}",
            json!({
                "id": outcome.id,
                "name": outcome.name,
                "pass": outcome.pass,
                "details": outcome.details,
                "millis": outcome.millis,
            })
        );
    }
    println!(
        "{}",
        json!({
            "suite": if options.full { "full" } else { "fast" },
            "checks": outcomes.len(),
            "failures": failures,
        })
    );
    Ok(if failures == 0 { 0 } else { EXIT_VERIFY_FAILED })
}
