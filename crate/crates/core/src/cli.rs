//! The `stargraph` command line.
//!
//! Exit codes: 0 success, 1 a verification or check failed, 2 bad usage or
//! input, 3 an oracle ran out of budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cuts::{
    cut_size_formula, first_symbol_reach_violations, is_k_edge_cut, is_k_vertex_cut,
    isolated_copy_cut, spread_position, symbol_profile, unique_neighbor_check, CutVerdict,
};
use crate::decomposition::{
    cross_edges, partition_by_dimension, partition_by_symbol, validate_first_structure,
    validate_second_structure,
};
use crate::error::Error;
use crate::graph::{AdjacencyMode, Edge, EdgeSet, StarGraph, VertexId, VertexSet};
use crate::oracle::{
    classical_connectivity, compare_formula, exact_super, CutMode, OracleKind, OracleResult,
    SearchBudget, Strategy, Witness, DEFAULT_MAX_NODES,
};
use crate::perm::{factorial, Permutation};
use crate::subgraphs::sample_min_degree_subgraph;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "stargraph", version, about = "Star graphs and their k-super connectivity")]
pub struct Cli {
    /// Worker threads for parallel searches and validators (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write permutations as digit strings ("3412") when n <= 9.
    #[arg(long, global = true)]
    compact: bool,
    /// Output format; which ones apply depends on the command.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampling and randomized filters.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Include wall-clock times in oracle output (makes it non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex, edge and degree counts and the k-super connectivity values.
    Info { n: usize },
    /// The whole graph as DOT (default) or JSON lines (`--format json`).
    Export { n: usize },
    /// Split into copies of S_{n-1} and validate the split.
    Decompose {
        n: usize,
        /// `dimension:J` (by the symbol at position J) or `symbol:I` (by the position of symbol I).
        #[arg(long, value_parser = parse_split)]
        by: Split,
    },
    /// The explicit minimum k-super vertex and edge cuts.
    Cut { n: usize, k: usize },
    /// Check a vertex or edge set from a JSON file as a k-cut.
    #[command(group = clap::ArgGroup::new("cut").required(true))]
    VerifyCut {
        n: usize,
        k: usize,
        #[arg(long, group = "cut")]
        vertices: Option<PathBuf>,
        #[arg(long, group = "cut")]
        edges: Option<PathBuf>,
    },
    /// Exact k-super connectivity by search, within a budget.
    Oracle {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Vertex)]
        mode: ModeArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Formula, construction and oracle side by side as CSV.
    Table {
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Vertex)]
        mode: ModeArg,
        /// Run the oracle only up to this n; larger rows report the construction as an upper bound.
        #[arg(long, default_value_t = 5)]
        oracle_max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run every structural check on S_n.
    CheckLemmas {
        n: usize,
        /// Random subgraphs per k, and random vertex sets for the profile identity.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Vertex,
    Edge,
}

impl From<ModeArg> for CutMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Vertex => CutMode::Vertex,
            ModeArg::Edge => CutMode::Edge,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Subset,
    Growth,
    Auto,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Search nodes before giving up (deterministic).
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Wall-clock seconds before giving up.
    #[arg(long, default_value_t = 1800.0)]
    max_seconds: f64,
    /// Largest connected set tried by the growth strategy (default: half the graph).
    #[arg(long)]
    cap: Option<usize>,
    /// Only try cuts through vertex 0 (edge 0); sound because S_n is vertex- and edge-transitive.
    #[arg(long)]
    symmetry: bool,
}

impl BudgetArgs {
    fn budget(&self, seed: u64) -> Result<SearchBudget, Failure> {
        if !(self.max_seconds.is_finite() && self.max_seconds > 0.0) {
            return Err(Failure::usage("--max-seconds must be a positive number"));
        }
        Ok(SearchBudget {
            max_wall_time: Duration::from_secs_f64(self.max_seconds),
            max_nodes: self.max_nodes,
            strategy: match self.strategy {
                StrategyArg::Subset => Strategy::SubsetEnumeration,
                StrategyArg::Growth => Strategy::ComponentGrowth,
                StrategyArg::Auto => Strategy::Auto,
            },
            seed,
            growth_cap: self.cap,
            use_symmetry: self.symmetry,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Split {
    Dimension(usize),
    Symbol(usize),
}

fn parse_split(s: &str) -> Result<Split, String> {
    let (kind, value) = s
        .split_once(':')
        .ok_or_else(|| format!("expected dimension:J or symbol:I, got {s:?}"))?;
    let value: usize = value.parse().map_err(|_| format!("bad number {value:?}"))?;
    match kind {
        "dimension" => Ok(Split::Dimension(value)),
        "symbol" => Ok(Split::Symbol(value)),
        _ => Err(format!("unknown split {kind:?}; use dimension or symbol")),
    }
}

/// How a command ended, when it did not simply succeed.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvariantViolation(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered output plus the exit code it should produce.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Output goes to stdout or `--output`; errors to stderr.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| execute(&cli));
    match result.and_then(|out| emit(cli.output.as_deref(), out)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(path: Option<&Path>, out: Output) -> Result<u8, Failure> {
    match path {
        Some(p) => std::fs::write(p, &out.text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{}", out.text),
    }
    Ok(out.code)
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let names = Names { compact: cli.compact };
    let format = |allowed: &[Format]| -> Result<Format, Failure> {
        match cli.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => Err(Failure::usage(format!(
                "--format {} is not available for this command",
                f.to_possible_value().expect("no skipped values").get_name()
            ))),
        }
    };
    match &cli.command {
        Command::Info { n } => cmd_info(*n, format(&[Format::Text, Format::Json])?),
        Command::Export { n } => cmd_export(*n, format(&[Format::Dot, Format::Json])?, names),
        Command::Decompose { n, by } => {
            format(&[Format::Json])?;
            cmd_decompose(*n, *by, names)
        }
        Command::Cut { n, k } => {
            format(&[Format::Json])?;
            cmd_cut(*n, *k, names)
        }
        Command::VerifyCut { n, k, vertices, edges } => {
            format(&[Format::Json])?;
            cmd_verify_cut(*n, *k, vertices.as_deref(), edges.as_deref())
        }
        Command::Oracle { n, k, mode, budget } => {
            format(&[Format::Json])?;
            cmd_oracle(*n, *k, (*mode).into(), &budget.budget(cli.seed)?, cli.timings, names)
        }
        Command::Table {
            min_n,
            max_n,
            mode,
            oracle_max_n,
            budget,
        } => cmd_table(
            *min_n..=*max_n,
            (*mode).into(),
            *oracle_max_n,
            &budget.budget(cli.seed)?,
            format(&[Format::Csv, Format::Json])?,
        ),
        Command::CheckLemmas { n, samples } => {
            cmd_check_lemmas(*n, cli.seed, *samples, format(&[Format::Text, Format::Json])?)
        }
    }
}

/// Renders vertices as permutation strings.
#[derive(Clone, Copy)]
struct Names {
    compact: bool,
}

impl Names {
    fn perm(&self, p: &Permutation) -> String {
        if self.compact {
            p.compact()
        } else {
            p.to_string()
        }
    }

    fn vertex(&self, g: &StarGraph, v: VertexId) -> String {
        self.perm(&g.label(v))
    }

    fn vertices(&self, g: &StarGraph, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.vertex(g, v)).collect()
    }

    fn edges(&self, g: &StarGraph, f: &EdgeSet) -> Vec<[String; 2]> {
        f.iter()
            .map(|e| [self.vertex(g, e.u()), self.vertex(g, e.v())])
            .collect()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn graph(n: usize) -> Result<StarGraph, Failure> {
    Ok(StarGraph::new(n, AdjacencyMode::Auto)?)
}

fn cmd_info(n: usize, format: Format) -> Result<Output, Failure> {
    let order = factorial(n)
        .filter(|_| n >= 1)
        .ok_or_else(|| Failure::from(Error::Capacity(format!("{n}! vertices is out of range"))))?;
    let degree = n - 1;
    let edges = order as u128 * degree as u128 / 2;
    let note = match n {
        1 => Some("isomorphic to K_1"),
        2 => Some("isomorphic to K_2"),
        3 => Some("isomorphic to C_6"),
        _ => None,
    };
    let rows: Vec<(usize, Option<usize>)> = (0..n.saturating_sub(1))
        .map(|k| (k, cut_size_formula(n, k)))
        .collect();
    let text = match format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "vertices": order,
            "edges": edges.to_string().parse::<u64>().map(Value::from).unwrap_or(Value::String(edges.to_string())),
            "degree": degree,
            "note": note,
            "super_connectivity": rows.iter().map(|(k, v)| json!({"k": k, "value": v})).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!("S_{n}: {order} vertices, {edges} edges, {degree}-regular\n");
            if let Some(note) = note {
                writeln!(s, "{note}").unwrap();
            }
            if !rows.is_empty() {
                writeln!(s, "k\tkappa_s^(k) = lambda_s^(k) = (k+1)!(n-k-1)").unwrap();
            }
            for (k, v) in rows {
                let v = v.map_or_else(|| "overflow".to_string(), |v| v.to_string());
                writeln!(s, "{k}\t{v}").unwrap();
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_export(n: usize, format: Format, names: Names) -> Result<Output, Failure> {
    let g = graph(n)?;
    if !g.is_materialized() {
        return Err(Error::Capacity(format!("S_{n} is too large to export")).into());
    }
    let mut s = String::new();
    if format == Format::Dot {
        writeln!(s, "graph S_{n} {{").unwrap();
        for v in g.vertices() {
            writeln!(s, "  \"{}\";", names.vertex(&g, v)).unwrap();
        }
        for e in g.edges() {
            writeln!(s, "  \"{}\" -- \"{}\";", names.vertex(&g, e.u()), names.vertex(&g, e.v())).unwrap();
        }
        s.push_str("}\n");
    } else {
        for e in g.edges() {
            let line = json!({"u": names.vertex(&g, e.u()), "v": names.vertex(&g, e.v())});
            writeln!(s, "{line}").unwrap();
        }
    }
    Ok(Output::ok(s))
}

fn cmd_decompose(n: usize, by: Split, names: Names) -> Result<Output, Failure> {
    let g = graph(n)?;
    let (body, pass) = match by {
        Split::Dimension(j) => {
            let dp = partition_by_dimension(&g, j)?;
            let report = validate_first_structure(&g, j)?;
            let parts: Vec<Value> = dp
                .parts()
                .map(|(symbol, part)| json!({"symbol": symbol, "vertices": names.vertices(&g, part)}))
                .collect();
            let mut cross = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    let edges = cross_edges(&g, &dp, a, b)?;
                    cross.push(json!({"symbols": [a, b], "edges": names.edges(&g, &edges)}));
                }
            }
            let pass = report.pass;
            let body = json!({
                "by": "dimension",
                "position": j,
                "parts": parts,
                "cross_edges": cross,
                "report": report,
            });
            (body, pass)
        }
        Split::Symbol(i) => {
            let sp = partition_by_symbol(&g, i)?;
            let report = validate_second_structure(&g, i)?;
            let parts: Vec<Value> = sp
                .parts()
                .map(|(position, part)| json!({"position": position, "vertices": names.vertices(&g, part)}))
                .collect();
            let pass = report.pass;
            let body = json!({
                "by": "symbol",
                "symbol": i,
                "center": names.vertices(&g, sp.center()),
                "parts": parts,
                "report": report,
            });
            (body, pass)
        }
    };
    let mut out = json!({"schema_version": SCHEMA_VERSION, "n": n, "valid": pass});
    out.as_object_mut()
        .expect("object")
        .extend(body.as_object().expect("object").clone());
    Ok(Output {
        text: to_json(&out),
        code: if pass { 0 } else { 1 },
    })
}

fn cmd_cut(n: usize, k: usize, names: Names) -> Result<Output, Failure> {
    let g = graph(n)?;
    let c = isolated_copy_cut(&g, k)?;
    let vertex_verdict = is_k_vertex_cut(&g, &c.t, k)?;
    let edge_verdict = is_k_edge_cut(&g, &c.f, k)?;
    let valid = vertex_verdict.valid && edge_verdict.valid;
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "k": k,
        "formula": c.formula(),
        "sizes": {"x": c.x.len(), "vertices": c.t.len(), "edges": c.f.len()},
        "x": names.vertices(&g, &c.x),
        "vertices": names.vertices(&g, &c.t),
        "edges": names.edges(&g, &c.f),
        "vertex_verdict": vertex_verdict,
        "edge_verdict": edge_verdict,
    });
    Ok(Output {
        text: to_json(&out),
        code: if valid { 0 } else { 1 },
    })
}

fn read_cut_file(path: &Path, n: usize, key: &str) -> Result<Vec<Value>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{} is not valid JSON: {e}", path.display())))?;
    let file_n = doc
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Failure::usage(format!("{} has no numeric \"n\"", path.display())))?;
    if file_n != n as u64 {
        return Err(Failure::usage(format!(
            "{} describes S_{file_n}, not S_{n}",
            path.display()
        )));
    }
    doc.get(key)
        .and_then(Value::as_array)
        .cloned()
        .ok_or_else(|| Failure::usage(format!("{} has no \"{key}\" array", path.display())))
}

fn parse_vertex(g: &StarGraph, v: &Value) -> Result<VertexId, Failure> {
    let s = v
        .as_str()
        .ok_or_else(|| Failure::usage(format!("expected a permutation string, got {v}")))?;
    let p: Permutation = s.parse()?;
    Ok(g.vertex(&p)?)
}

fn cmd_verify_cut(
    n: usize,
    k: usize,
    vertices: Option<&Path>,
    edges: Option<&Path>,
) -> Result<Output, Failure> {
    let g = graph(n)?;
    let (kind, size, verdict): (&str, usize, CutVerdict) = if let Some(path) = vertices {
        let items = read_cut_file(path, n, "vertices")?;
        let ids = items.iter().map(|v| parse_vertex(&g, v)).collect::<Result<Vec<_>, _>>()?;
        let set = VertexSet::try_from_vec(ids)?;
        ("vertex", set.len(), is_k_vertex_cut(&g, &set, k)?)
    } else {
        let path = edges.expect("clap requires one of the two");
        let items = read_cut_file(path, n, "edges")?;
        let mut list = Vec::with_capacity(items.len());
        for item in &items {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Failure::usage(format!("expected [\"u\", \"v\"], got {item}")))?;
            let (u, v) = (parse_vertex(&g, &pair[0])?, parse_vertex(&g, &pair[1])?);
            list.push(Edge::new(u, v)?);
        }
        let set = EdgeSet::try_from_vec(list)?;
        ("edge", set.len(), is_k_edge_cut(&g, &set, k)?)
    };
    let valid = verdict.valid;
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "k": k,
        "kind": kind,
        "size": size,
        "verdict": verdict,
    });
    Ok(Output {
        text: to_json(&out),
        code: if valid { 0 } else { 1 },
    })
}

fn oracle_json(r: &OracleResult, budget: &SearchBudget, timings: bool, names: Names) -> Result<Value, Failure> {
    let witness = match &r.witness {
        None => Value::Null,
        Some(w) => {
            let g = graph(r.n)?;
            match w {
                Witness::Vertices(s) => json!({"vertices": names.vertices(&g, s)}),
                Witness::Edges(f) => json!({"edges": names.edges(&g, f)}),
            }
        }
    };
    let mut stats = serde_json::to_value(&r.stats).expect("plain data serializes");
    if timings {
        stats["wall_time_seconds"] = json!(r.stats.wall_time.as_secs_f64());
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "n": r.n,
        "k": r.k,
        "mode": r.mode,
        "kind": r.kind,
        "value": r.value,
        "formula": cut_size_formula(r.n, r.k),
        "witness": witness,
        "searched": r.searched,
        "complete": r.complete,
        "stats": stats,
        "budget": budget,
    }))
}

fn cmd_oracle(
    n: usize,
    k: usize,
    mode: CutMode,
    budget: &SearchBudget,
    timings: bool,
    names: Names,
) -> Result<Output, Failure> {
    let r = exact_super(n, k, mode, budget)?;
    let code = if r.kind == OracleKind::UpperBoundOnly { 3 } else { 0 };
    Ok(Output {
        text: to_json(&oracle_json(&r, budget, timings, names)?),
        code,
    })
}

fn kind_name(kind: OracleKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .expect("unit variants serialize as strings")
}

fn cmd_table(
    ns: std::ops::RangeInclusive<usize>,
    mode: CutMode,
    oracle_max_n: usize,
    budget: &SearchBudget,
    format: Format,
) -> Result<Output, Failure> {
    if ns.is_empty() {
        return Err(Failure::usage("--max-n is below --min-n"));
    }
    let rows = compare_formula(ns, mode, oracle_max_n, budget)?;
    let text = if format == Format::Json {
        to_json(&json!({"schema_version": SCHEMA_VERSION, "mode": mode, "rows": rows}))
    } else {
        let mut s = String::from("n,k,formula,construction_ok,oracle_kind,oracle_value,agree\n");
        for r in &rows {
            let value = r.oracle_value.map_or_else(String::new, |v| v.to_string());
            let agree = r.agree.map_or_else(String::new, |a| a.to_string());
            writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.n,
                r.k,
                r.formula,
                r.construction_ok,
                kind_name(r.oracle_kind),
                value,
                agree
            )
            .unwrap();
        }
        s
    };
    Ok(Output::ok(text))
}

/// One named check in `check-lemmas`.
#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    checked: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            pass: true,
            checked: 0,
            failures: 0,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
            if self.notes.len() < 5 {
                self.notes.push(what());
            }
        }
    }

    fn note(&mut self, note: String) {
        self.notes.push(note);
    }
}

/// Largest `n` for which max-flow connectivity is part of `check-lemmas`.
const CONNECTIVITY_MAX_N: usize = 6;

fn cmd_check_lemmas(n: usize, seed: u64, samples: usize, format: Format) -> Result<Output, Failure> {
    if n < 2 {
        return Err(Failure::usage("check-lemmas needs n >= 2"));
    }
    let g = graph(n)?;
    if !g.is_materialized() {
        return Err(Error::Capacity(format!("S_{n} is too large to check")).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut c = Check::new("dimension_partition");
    for j in 2..=n {
        let r = validate_first_structure(&g, j)?;
        c.record(r.pass, || format!("position {j}: failing pairs {:?}", r.failing_pairs));
    }
    checks.push(c);

    let mut c = Check::new("symbol_partition");
    for i in 1..=n {
        let r = validate_second_structure(&g, i)?;
        c.record(r.pass, || format!("symbol {i}: {} part-to-part edges", r.part_to_part_edges));
    }
    checks.push(c);

    let mut c = Check::new("classical_connectivity");
    if n <= CONNECTIVITY_MAX_N {
        let (kappa, lambda) = classical_connectivity(&g)?;
        c.record(kappa == n - 1 && lambda == n - 1, || {
            format!("kappa = {kappa}, lambda = {lambda}, expected {}", n - 1)
        });
    } else {
        c.note(format!("skipped above n = {CONNECTIVITY_MAX_N}"));
    }
    checks.push(c);

    let mut c = Check::new("isolated_copy_cut");
    for k in 0..=n - 2 {
        match isolated_copy_cut(&g, k) {
            Ok(cut) => {
                let v = is_k_vertex_cut(&g, &cut.t, k)?;
                let e = is_k_edge_cut(&g, &cut.f, k)?;
                c.record(v.valid && e.valid, || {
                    format!("k = {k}: vertex cut {:?}, edge cut {:?}", v.reason, e.reason)
                });
            }
            Err(Error::InvariantViolation(msg)) => c.record(false, || format!("k = {k}: {msg}")),
            Err(e) => return Err(e.into()),
        }
    }
    checks.push(c);

    let mut c = Check::new("unique_neighbor");
    for k in 0..=n - 2 {
        let cut = isolated_copy_cut(&g, k);
        match cut {
            Ok(cut) => {
                let r = unique_neighbor_check(&g, &cut.x)?;
                c.record(r.pass, || format!("k = {k}: histogram {:?}", r.histogram));
            }
            Err(e) => c.record(false, || format!("k = {k}: {e}")),
        }
    }
    checks.push(c);

    let mut c = Check::new("spread_position");
    for k in 0..=n - 2 {
        let mut found = 0;
        let mut attempts = 0;
        while found < samples && attempts < samples.saturating_mul(20) {
            attempts += 1;
            let Some(x) = sample_min_degree_subgraph(&g, &mut rng, k) else {
                continue;
            };
            found += 1;
            let ok = spread_position(&g, &x, k).is_ok()
                && first_symbol_reach_violations(&g, &x, k)?.is_empty();
            c.record(ok, || format!("k = {k}: a {}-vertex subgraph has no spread position", x.len()));
        }
        if found < samples {
            c.note(format!("k = {k}: only {found} of {samples} samples reached minimum degree {k}"));
        }
    }
    checks.push(c);

    let mut c = Check::new("profile_identity");
    for _ in 0..samples {
        let size = rng.gen_range(1..=g.order());
        let x: VertexSet = sample(&mut rng, g.order(), size).into_iter().map(VertexId).collect();
        let p = symbol_profile(&g, &x)?;
        c.record(p.duality_holds() && p.position_total() == p.symbol_total(), || {
            format!("a {size}-vertex set breaks the profile identity")
        });
    }
    checks.push(c);

    let pass = checks.iter().all(|c| c.pass);
    let text = if format == Format::Json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "seed": seed,
            "samples": samples,
            "pass": pass,
            "checks": checks,
        }))
    } else {
        let mut s = format!("S_{n} (seed {seed}, {samples} samples)\n");
        for c in &checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            writeln!(s, "{:<24}{verdict:<6}{} checked, {} failed", c.name, c.checked, c.failures).unwrap();
            for note in &c.notes {
                writeln!(s, "    {note}").unwrap();
            }
        }
        s.push_str(if pass { "all checks passed\n" } else { "some checks failed\n" });
        s
    };
    Ok(Output {
        text,
        code: if pass { 0 } else { 1 },
    })
}
