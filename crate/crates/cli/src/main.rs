use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use hopdom::closed_forms::{cycle_table, gamma_h_cycle};
use hopdom::dist2::two_step_graph;
use hopdom::families::{self, derive_exceptional, match_exceptional, ExceptionalId, FamilySpec, Parameter};
use hopdom::graph::parse_graph6;
use hopdom::reductions::certify_two_fifths;
use hopdom::solver::{solve, Kind, DEFAULT_BUDGET};
use hopdom::verify::{parse_suite, verify_stream, EnumSpec, Report, Source};
use hopdom::Graph;

const EXIT_OPERATIONAL: u8 = 1;
const EXIT_VIOLATIONS: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Records are processed in batches of this many lines so long streams
/// start producing output early.
const BATCH: usize = 2048;

#[derive(Parser)]
#[command(name = "hopdom", version, about = "Exact hop domination toolkit for small graphs")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Branch-and-bound node budget per solve.
    #[arg(long, global = true, env = "HOPDOM_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Output mode; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// Read graph6 records from this file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum dominating, total dominating or hop dominating sets.
    Solve {
        #[arg(long, value_enum, default_value = "hop")]
        kind: KindArg,
    },
    /// Two-step graph: same vertices, adjacent when at distance exactly two.
    Dist2,
    /// Build a named graph, e.g. `cycle 8`, `amalgam 5 6 7`, `tightness-chain 3`.
    Family {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Isomorph-free enumeration.
    Enumerate {
        /// Order, or a range such as 4..9.
        #[arg(long)]
        n: String,
        /// Comma-separated filters, e.g. connected,triangle-free,min-degree=2,girth=5.
        #[arg(long)]
        filters: Option<String>,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        triangle_free: bool,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        girth: Option<usize>,
    },
    /// Connected graphs with minimum degree two whose parameter exceeds 2n/5.
    DeriveExceptional {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "hop")]
        param: ParamArg,
        #[arg(long)]
        triangle_free: bool,
        #[arg(long)]
        girth: Option<usize>,
    },
    /// Hop dominating set of size at most 2n/5 with the stage that found it.
    Certify,
    /// Run a check suite over a graph stream and summarize.
    Verify {
        /// enum:<spec>, file:<path> or stdin.
        #[arg(long, default_value = "stdin")]
        source: String,
        /// Comma-separated check ids, SANDWICH or ALL.
        #[arg(long, default_value = "ALL")]
        suite: String,
    },
    /// γ_h(C_n) against ⌊2n/5⌋ for 4 <= n <= 14.
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Dom,
    Total,
    Hop,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Dom => Kind::Dom,
            KindArg::Total => Kind::Total,
            KindArg::Hop => Kind::Hop,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Dom,
    Hop,
}

impl From<ParamArg> for Parameter {
    fn from(p: ParamArg) -> Parameter {
        match p {
            ParamArg::Dom => Parameter::Dom,
            ParamArg::Hop => Parameter::Hop,
        }
    }
}

enum Failure {
    Usage(String),
    Operational(String),
}

impl From<hopdom::Error> for Failure {
    fn from(e: hopdom::Error) -> Self {
        Failure::Operational(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Operational(e.to_string())
    }
}

#[derive(Serialize)]
struct Record<'a> {
    cmd: &'a str,
    graph6: Option<&'a str>,
    payload: Value,
}

struct Out {
    w: BufWriter<io::Stdout>,
    mode: Output,
}

impl Out {
    fn record(&mut self, cmd: &str, graph6: Option<&str>, payload: Value) -> io::Result<()> {
        let line = serde_json::to_string(&Record { cmd, graph6, payload }).map_err(io::Error::other)?;
        writeln!(self.w, "{line}")
    }

    fn line(&mut self, s: &str) -> io::Result<()> {
        writeln!(self.w, "{s}")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Some(w) = cli.config.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("hopdom: {e}");
            return ExitCode::from(EXIT_OPERATIONAL);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("hopdom: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Operational(msg)) if msg.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(Failure::Operational(msg)) => {
            eprintln!("hopdom: {msg}");
            ExitCode::from(EXIT_OPERATIONAL)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = cli.config;
    let graph_default = matches!(cli.command, Command::Dist2 | Command::Family { .. } | Command::Enumerate { .. } | Command::Table);
    let mode = cfg.output.unwrap_or(if graph_default { Output::Text } else { Output::Json });
    let mut out = Out { w: BufWriter::new(io::stdout()), mode };
    let code = match cli.command {
        Command::Solve { kind } => solve_cmd(&cfg, &mut out, kind.into())?,
        Command::Dist2 => dist2_cmd(&cfg, &mut out)?,
        Command::Family { words } => family_cmd(&mut out, &words)?,
        Command::Enumerate { n, filters, connected, triangle_free, min_degree, girth } => {
            let mut spec = format!("n={n}");
            if connected {
                spec += ",connected";
            }
            if triangle_free {
                spec += ",triangle-free";
            }
            if let Some(k) = min_degree {
                spec += &format!(",min-degree={k}");
            }
            if let Some(k) = girth {
                spec += &format!(",girth={k}");
            }
            if let Some(f) = filters {
                spec += &format!(",{f}");
            }
            let spec: EnumSpec = spec.parse().map_err(|e: hopdom::Error| Failure::Usage(e.to_string()))?;
            for g in spec.graphs()? {
                let g6 = g.to_graph6();
                match out.mode {
                    Output::Text => out.line(&g6)?,
                    Output::Json => out.record("enumerate", Some(&g6), json!({ "n": g.n(), "edges": g.edge_count() }))?,
                }
            }
            0
        }
        Command::DeriveExceptional { n_max, param, triangle_free, girth } => {
            derive_cmd(&cfg, &mut out, n_max, param.into(), triangle_free, girth)?
        }
        Command::Certify => certify_cmd(&cfg, &mut out)?,
        Command::Verify { source, suite } => verify_cmd(&cfg, &mut out, &source, &suite)?,
        Command::Table => table_cmd(&cfg, &mut out)?,
    };
    out.w.flush()?;
    Ok(code)
}

fn open_input(cfg: &Config) -> Result<Box<dyn BufRead>, Failure> {
    Ok(match &cfg.input {
        Some(p) => Box::new(BufReader::new(File::open(p).map_err(|e| Failure::Operational(format!("{}: {e}", p.display())))?)),
        None => Box::new(io::stdin().lock()),
    })
}

/// Parse graph6 lines in batches, map each graph in parallel and emit the
/// results in input order. Unparseable lines and per-graph errors are
/// reported on stderr with their line numbers; returns the number of such
/// diagnostics.
fn for_each_graph<T, F, E>(cfg: &Config, f: F, mut emit: E) -> Result<usize, Failure>
where
    T: Send,
    F: Fn(&Graph) -> hopdom::Result<T> + Sync,
    E: FnMut(&str, T) -> io::Result<()>,
{
    let mut input = open_input(cfg)?;
    let mut diagnostics = 0;
    let mut line_no = 0;
    let mut batch: Vec<(usize, String)> = Vec::with_capacity(BATCH);
    let mut done = false;
    while !done {
        batch.clear();
        while batch.len() < BATCH {
            let mut buf = String::new();
            if input.read_line(&mut buf)? == 0 {
                done = true;
                break;
            }
            line_no += 1;
            let rec = buf.trim();
            if !rec.is_empty() {
                batch.push((line_no, rec.to_string()));
            }
        }
        let results: Vec<_> = batch
            .par_iter()
            .map(|(_, rec)| parse_graph6(rec).map_err(hopdom::Error::from).and_then(|g| f(&g)))
            .collect();
        for ((line, rec), r) in batch.iter().zip(results) {
            match r {
                Ok(v) => emit(rec, v)?,
                Err(e) => {
                    eprintln!("line {line}: {rec}: {e}");
                    diagnostics += 1;
                }
            }
        }
    }
    Ok(diagnostics)
}

fn exit_for(diagnostics: usize) -> u8 {
    if diagnostics > 0 {
        EXIT_OPERATIONAL
    } else {
        0
    }
}

fn solve_cmd(cfg: &Config, out: &mut Out, kind: Kind) -> Result<u8, Failure> {
    let budget = cfg.budget;
    let diagnostics = for_each_graph(cfg, |g| solve(g, kind, budget), |g6, r| match out.mode {
        Output::Json => out.record(
            "solve",
            Some(g6),
            json!({
                "kind": r.kind,
                "value": r.value,
                "witness": r.witness,
                "optimal": r.optimal,
                "nodes": r.nodes_explored,
            }),
        ),
        Output::Text => {
            let status = if r.optimal { "optimal" } else { "budget" };
            out.line(&format!("{g6:<24} {:<5} {:>4} {:<7} {:?}", r.kind, r.value, status, r.witness.to_vec()))
        }
    })?;
    Ok(exit_for(diagnostics))
}

fn dist2_cmd(cfg: &Config, out: &mut Out) -> Result<u8, Failure> {
    let diagnostics = for_each_graph(cfg, |g| Ok(two_step_graph(g).to_graph6()), |g6, star| match out.mode {
        Output::Text => out.line(&star),
        Output::Json => out.record("dist2", Some(g6), json!({ "two_step": star })),
    })?;
    Ok(exit_for(diagnostics))
}

fn family_cmd(out: &mut Out, words: &[String]) -> Result<u8, Failure> {
    let spec = FamilySpec::from_words(words).map_err(|e| Failure::Usage(e.to_string()))?;
    for w in spec.warnings() {
        eprintln!("warning: {w}");
    }
    let g = families::generate(&spec)?;
    let g6 = g.to_graph6();
    match out.mode {
        Output::Text => out.line(&g6)?,
        Output::Json => out.record(
            "family",
            Some(&g6),
            json!({ "spec": spec.to_string(), "n": g.n(), "edges": g.edge_count() }),
        )?,
    }
    Ok(0)
}

fn derive_cmd(
    cfg: &Config,
    out: &mut Out,
    n_max: usize,
    param: Parameter,
    triangle_free: bool,
    girth: Option<usize>,
) -> Result<u8, Failure> {
    let constraints = families::EnumFilters { connected: true, triangle_free, min_degree: 2, girth_at_least: girth };
    let graphs = derive_exceptional(n_max, param, constraints)?;
    let known = match param {
        Parameter::Hop => &ExceptionalId::HOP[..],
        Parameter::Dom => &ExceptionalId::DOM[..],
    };
    let values: Vec<usize> = graphs
        .par_iter()
        .map(|g| solve(g, param.into(), cfg.budget).map(|r| r.value))
        .collect::<hopdom::Result<_>>()?;
    for (g, value) in graphs.iter().zip(&values) {
        let g6 = g.to_graph6();
        match out.mode {
            Output::Text => out.line(&g6)?,
            Output::Json => out.record(
                "derive-exceptional",
                Some(&g6),
                json!({
                    "n": g.n(),
                    "parameter": param,
                    "value": value,
                    "bound": 2 * g.n() / 5,
                    "name": match_exceptional(g, known).map(ExceptionalId::name),
                }),
            )?,
        }
    }
    let summary = json!({
        "n_max": n_max,
        "parameter": param,
        "constraints": constraints,
        "count": graphs.len(),
    });
    match out.mode {
        Output::Json => out.record("derive-exceptional", None, summary)?,
        Output::Text => eprintln!("{summary}"),
    }
    Ok(0)
}

fn certify_cmd(cfg: &Config, out: &mut Out) -> Result<u8, Failure> {
    let budget = cfg.budget;
    let diagnostics = for_each_graph(cfg, |g| certify_two_fifths(g, budget), |g6, c| match out.mode {
        Output::Json => out.record(
            "certify",
            Some(g6),
            json!({
                "n": c.n,
                "bound": c.bound,
                "size": c.size,
                "witness": c.witness,
                "stage": c.stage,
                "twins_removed": c.twins_removed,
            }),
        ),
        Output::Text => out.line(&format!(
            "{g6:<24} n={:<3} bound={:<3} size={:<3} {:<10} {:?}",
            c.n,
            c.bound,
            c.size,
            c.stage,
            c.witness.to_vec()
        )),
    })?;
    Ok(exit_for(diagnostics))
}

fn read_lines(r: impl BufRead) -> io::Result<Vec<String>> {
    r.lines().collect()
}

fn verify_cmd(cfg: &Config, out: &mut Out, source: &str, suite: &str) -> Result<u8, Failure> {
    let suite = parse_suite(suite).map_err(|e| Failure::Usage(e.to_string()))?;
    let source = if let Some(spec) = source.strip_prefix("enum:") {
        Source::Enumerate(spec.parse().map_err(|e: hopdom::Error| Failure::Usage(e.to_string()))?)
    } else if let Some(path) = source.strip_prefix("file:") {
        let f = File::open(path).map_err(|e| Failure::Operational(format!("{path}: {e}")))?;
        Source::Records(read_lines(BufReader::new(f))?)
    } else if source == "stdin" {
        Source::Records(read_lines(open_input(cfg)?)?)
    } else {
        return Err(Failure::Usage(format!("unknown source {source:?}; expected enum:<spec>, file:<path> or stdin")));
    };
    let report = verify_stream(source, &suite, cfg.budget)?;
    for e in &report.parse_errors {
        eprintln!("line {}: {}", e.line, e.message);
    }
    let summary = summarize(&report);
    match out.mode {
        Output::Json => {
            eprint!("{summary}");
            let payload = serde_json::to_value(&report).map_err(|e| Failure::Operational(e.to_string()))?;
            out.record("verify", None, payload)?;
        }
        Output::Text => write!(out.w, "{summary}")?,
    }
    Ok(if report.failures() > 0 {
        EXIT_VIOLATIONS
    } else if !report.parse_errors.is_empty() {
        EXIT_OPERATIONAL
    } else {
        0
    })
}

fn summarize(r: &Report) -> String {
    let mut s = format!("graphs checked: {}\n", r.count);
    s += &format!("{:<16} {:>8} {:>8} {:>8}\n", "check", "pass", "fail", "skipped");
    for (id, t) in &r.totals {
        s += &format!("{:<16} {:>8} {:>8} {:>8}\n", id.name(), t.pass, t.fail, t.skipped);
    }
    if let Some(x) = &r.extremal {
        s += &format!("largest 5*gamma_h - 2n: {} ({} graphs)\n", x.gap, x.graphs.len());
    }
    for v in &r.violators {
        let ids: Vec<&str> = v.checks.iter().map(|c| c.name()).collect();
        s += &format!("violation: {} [{}]\n", v.graph6, ids.join(","));
    }
    if !r.budget_skipped.is_empty() {
        s += &format!("skipped for budget: {}\n", r.budget_skipped.len());
    }
    if !r.parse_errors.is_empty() {
        s += &format!("unparseable records: {}\n", r.parse_errors.len());
    }
    s += if r.failures() > 0 { "result: VIOLATIONS\n" } else { "result: ok\n" };
    s
}

fn table_cmd(cfg: &Config, out: &mut Out) -> Result<u8, Failure> {
    let rows = cycle_table();
    let solved: Vec<usize> = rows
        .par_iter()
        .map(|row| {
            let r = solve(&Graph::cycle(row.n)?, Kind::Hop, cfg.budget)?;
            if !r.optimal {
                return Err(hopdom::Error::Unknown(format!("budget exhausted on C{}", row.n)));
            }
            Ok(r.value)
        })
        .collect::<hopdom::Result<_>>()?;
    for (row, &value) in rows.iter().zip(&solved) {
        if value != row.gamma_h_cycle || value != gamma_h_cycle(row.n)? {
            return Err(Failure::Operational(format!(
                "C{}: solver gives {value}, closed form gives {}",
                row.n, row.gamma_h_cycle
            )));
        }
    }
    match out.mode {
        Output::Text => {
            out.line(&format!("{:>3} {:>9} {:>9}", "n", "⌊2n/5⌋", "γ_h(C_n)"))?;
            for row in &rows {
                out.line(&format!("{:>3} {:>9} {:>9}", row.n, row.floor_two_fifths, row.gamma_h_cycle))?;
            }
        }
        Output::Json => {
            for row in &rows {
                let g6 = Graph::cycle(row.n)?.to_graph6();
                out.record(
                    "table",
                    Some(&g6),
                    json!({ "n": row.n, "floor_two_fifths": row.floor_two_fifths, "gamma_h_cycle": row.gamma_h_cycle }),
                )?;
            }
        }
    }
    Ok(0)
}
