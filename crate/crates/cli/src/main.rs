//! `qroute`: generate architecture graphs, bound and compute routing
//! numbers, build and certify swap schedules, and run the simulations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qroute::bounds::{bounds_report, DEFAULT_ALPHA};
use qroute::exact::{exact_rt, exact_rt_pi, Branching, ExactOptions};
use qroute::families::Family;
use qroute::quantum;
use qroute::routing::{
    route_complete, route_fast_partition, route_general_detailed, route_odd_even,
    route_spanning_tree, verify_fast_schedule, verify_schedule, Permutation, Schedule,
};
use qroute::spectral::DEFAULT_ENUMERATION_LIMIT;
use qroute::{
    io, BoundsError, Graph, GraphError, RoutingError, SearchError, SimError, SpectralError,
};

const EXIT_USAGE: u8 = 2;
const EXIT_DISCONNECTED: u8 = 3;
const EXIT_LIMIT: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;
const EXIT_RETRIES: u8 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "qroute",
    version,
    about = "Routing-time bounds and swap schedules for qubit architecture graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph from a named family.
    Gen(GenArgs),
    /// Spectral gap, expansion quantities and every routing bound.
    Analyze(AnalyzeArgs),
    /// Build a swap schedule and verify it before printing.
    Route(RouteArgs),
    /// Exact routing depth by breadth-first search.
    Exact(ExactArgs),
    /// Check a schedule against the exact optimum and the lower bounds.
    Certify(CertifyArgs),
    /// Run one of the quantum simulations.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Default)]
struct GraphSource {
    /// Graph file, edge list or JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Family name: path, complete, star, barbell, vertex_barbell, lollipop_pair, grid, gnp.
    #[arg(long)]
    family: Option<String>,
    /// Size parameter (rows for grid).
    #[arg(long)]
    n: Option<usize>,
    /// Columns for grid.
    #[arg(long)]
    cols: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct PermSource {
    /// Permutation file: a JSON array or `v:pi(v)` lines.
    #[arg(long)]
    perm: Option<PathBuf>,
    /// Built-in permutation used when no file is given.
    #[arg(long, value_enum, default_value_t = PermKind::Random)]
    perm_kind: PermKind,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum PermKind {
    Identity,
    Reversal,
    Random,
    Involution,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
    format: GraphFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Largest vertex count for exhaustive cut enumeration.
    #[arg(long, env = "QROUTE_ENUM_LIMIT", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,
    /// Extra cut to evaluate, as comma-separated vertices. Repeatable.
    #[arg(long = "cut", value_parser = parse_vertex_list)]
    cuts: Vec<VertexList>,
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum Algorithm {
    OddEven,
    Complete,
    SpanningTree,
    RandomWalk,
    FastPartition,
}

#[derive(Args, Debug)]
struct RouteArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    perm: PermSource,
    #[arg(long = "alg", value_enum)]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Small side of the cut, for fast_partition.
    #[arg(long, value_parser = parse_vertex_list)]
    x: Option<VertexList>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    perm: PermSource,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worst case over all permutations instead of one.
    #[arg(long)]
    worst: bool,
    /// Branch on maximal matchings only; depths become upper bounds.
    #[arg(long)]
    maximal: bool,
    /// Vertex limit for the search.
    #[arg(long, env = "QROUTE_EXACT_LIMIT")]
    max_vertices: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    perm: PermSource,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Schedule JSON, bare or as emitted by `route`.
    #[arg(long)]
    schedule: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, env = "QROUTE_ENUM_LIMIT", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum Protocol {
    WTransfer,
    Barbell,
    FastCz,
    Algorithm1,
    FastRoute,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    protocol: Protocol,
    /// Intermediate qubits for w_transfer.
    #[arg(long, default_value_t = 4)]
    s: usize,
    /// Clique size for barbell.
    #[arg(long = "cliques", default_value_t = 3)]
    clique: usize,
    /// Crossing edges for fast_cz.
    #[arg(long, default_value_t = 1)]
    boundary: usize,
    /// `|X|` for algorithm1; must equal `2k|δX|`.
    #[arg(long, default_value_t = 4)]
    x_size: usize,
    /// `|δX|` for algorithm1.
    #[arg(long, default_value_t = 1)]
    delta: usize,
    /// Algorithm1 runs `2k - 1` layers.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Simulate barbell routing on the full register instead of the subspace.
    #[arg(long)]
    dense: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    perm: PermSource,
    /// Small side of the cut for fast_route, e.g. `0,1,2`.
    #[arg(long, value_parser = parse_vertex_list)]
    x: Option<VertexList>,
    /// Write the entropy trace of algorithm1 as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

/// An error with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        Failure {
            code: exit_code(&error),
            error,
        }
    }
}

fn fail(code: u8, error: anyhow::Error) -> Failure {
    Failure { code, error }
}

fn graph_code(e: &GraphError) -> u8 {
    match e {
        GraphError::Disconnected => EXIT_DISCONNECTED,
        _ => EXIT_USAGE,
    }
}

fn spectral_code(e: &SpectralError) -> u8 {
    match e {
        SpectralError::Graph(g) => graph_code(g),
        SpectralError::TooLarge { .. } => EXIT_LIMIT,
        _ => 1,
    }
}

fn routing_code(e: &RoutingError) -> u8 {
    match e {
        RoutingError::Graph(g) => graph_code(g),
        RoutingError::Spectral(s) => spectral_code(s),
        RoutingError::RetriesExhausted(_) => EXIT_RETRIES,
        _ => EXIT_USAGE,
    }
}

fn exit_code(error: &anyhow::Error) -> u8 {
    for cause in error.chain() {
        if let Some(e) = cause.downcast_ref::<GraphError>() {
            return graph_code(e);
        }
        if let Some(e) = cause.downcast_ref::<SpectralError>() {
            return spectral_code(e);
        }
        if let Some(e) = cause.downcast_ref::<BoundsError>() {
            return match e {
                BoundsError::Graph(g) => graph_code(g),
                BoundsError::Spectral(s) => spectral_code(s),
                _ => EXIT_USAGE,
            };
        }
        if let Some(e) = cause.downcast_ref::<RoutingError>() {
            return routing_code(e);
        }
        if let Some(e) = cause.downcast_ref::<SearchError>() {
            return match e {
                SearchError::Routing(r) => routing_code(r),
                SearchError::TooLarge { .. } => EXIT_LIMIT,
                SearchError::Unreachable => EXIT_DISCONNECTED,
            };
        }
        if let Some(e) = cause.downcast_ref::<SimError>() {
            return match e {
                SimError::Graph(g) => graph_code(g),
                SimError::Spectral(s) => spectral_code(s),
                SimError::TooManyQubits(..) => EXIT_LIMIT,
                _ => EXIT_USAGE,
            };
        }
    }
    EXIT_USAGE
}

/// Comma-separated vertices such as `0,1,2`.
#[derive(Clone, Debug)]
struct VertexList(Vec<usize>);

fn parse_vertex_list(s: &str) -> Result<VertexList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| format!("bad vertex {t:?}: {e}"))
        })
        .collect::<Result<_, _>>()
        .map(VertexList)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn resolve_family(source: &GraphSource, seed: u64) -> anyhow::Result<Option<Family>> {
    Ok(match &source.family {
        Some(name) => Some(Family::from_name(
            name,
            source.n,
            source.cols,
            source.p,
            Some(seed),
        )?),
        None => None,
    })
}

fn load_graph(source: &GraphSource, seed: u64) -> anyhow::Result<Graph> {
    match (&source.graph, resolve_family(source, seed)?) {
        (Some(_), Some(_)) => bail!("give either --graph or --family, not both"),
        (None, None) => bail!("a graph is required: --graph FILE or --family NAME"),
        (Some(path), None) => Ok(io::parse_graph(&read(path)?)?),
        (None, Some(f)) => Ok(f.generate()?),
    }
}

fn load_perm(source: &PermSource, n: usize, seed: u64) -> anyhow::Result<Permutation> {
    if let Some(path) = &source.perm {
        let pi = Permutation::parse(&read(path)?)?;
        if pi.len() != n {
            return Err(RoutingError::SizeMismatch {
                perm: pi.len(),
                graph: n,
            }
            .into());
        }
        return Ok(pi);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match source.perm_kind {
        PermKind::Identity => Permutation::identity(n),
        PermKind::Reversal => Permutation::reversal(n),
        PermKind::Random => Permutation::random(n, &mut rng),
        PermKind::Involution => Permutation::random_involution(n, &mut rng),
    })
}

fn envelope(command: &str, seed: u64, alpha: Option<f64>, result: Value) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "alpha": alpha,
        "result": result,
    })
}

/// Flattens JSON into `path: value` lines.
fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn emit(output: &Output, value: &Value) -> anyhow::Result<()> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(value, "", &mut s);
            s
        }
    };
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    if args.source.graph.is_some() {
        return Err(fail(EXIT_USAGE, anyhow!("gen takes --family, not --graph")));
    }
    let family = resolve_family(&args.source, args.seed)?
        .ok_or_else(|| fail(EXIT_USAGE, anyhow!("gen needs --family")))?;
    let g = family.generate()?;
    let text = match args.format {
        GraphFormat::Edges => io::to_edge_list(&g),
        GraphFormat::Json => io::to_json(&g) + "\n",
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let g = load_graph(&args.source, args.seed)?;
    let report = bounds_report(
        &g,
        args.alpha,
        args.limit,
        &args.cuts.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
    )?;
    let limited = report.enumeration_limited;
    emit(
        &args.output,
        &envelope(
            "analyze",
            args.seed,
            Some(args.alpha),
            serde_json::to_value(&report)?,
        ),
    )?;
    if limited {
        return Err(fail(
            EXIT_LIMIT,
            anyhow!(
                "{} vertices exceeds the enumeration limit {}; report is partial",
                g.n(),
                args.limit
            ),
        ));
    }
    Ok(())
}

fn is_labelled_path(g: &Graph) -> bool {
    g.edge_count() + 1 == g.n() && (1..g.n()).all(|v| g.has_edge(v - 1, v))
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() == g.n() * (g.n() - 1) / 2
}

fn cmd_route(args: &RouteArgs) -> Result<(), Failure> {
    let g = load_graph(&args.source, args.seed)?;
    let pi = load_perm(&args.perm, g.n(), args.seed)?;
    let usage = |msg: &str| fail(EXIT_USAGE, anyhow!(msg.to_string()));
    let (schedule, extra) = match args.algorithm {
        Algorithm::OddEven => {
            if !is_labelled_path(&g) {
                return Err(usage("odd_even needs the path 0-1-…-(n-1)"));
            }
            (route_odd_even(g.n(), &pi)?, json!({}))
        }
        Algorithm::Complete => {
            if !is_complete(&g) {
                return Err(usage("complete needs a complete graph"));
            }
            (route_complete(g.n(), &pi)?, json!({}))
        }
        Algorithm::SpanningTree => (route_spanning_tree(&g, &pi)?, json!({})),
        Algorithm::RandomWalk => {
            let (first, second) = route_general_detailed(&g, &pi, args.seed)?;
            let mut s = first.schedule.clone();
            s.extend(second.schedule.clone());
            let info = json!({
                "walk_half_length": first.walks.l,
                "interference_threshold": first.interference_threshold,
                "max_interference": [first.walks.max_interference(), second.walks.max_interference()],
                "attempts": [first.attempts, second.attempts],
                "classes": [first.classes, second.classes],
            });
            (s, info)
        }
        Algorithm::FastPartition => {
            let x = args
                .x
                .as_ref()
                .ok_or_else(|| usage("fast_partition needs --x"))?;
            let fs = route_fast_partition(&g, &x.0, &pi)?;
            let verification = verify_fast_schedule(&g, &pi, &fs);
            let result = json!({
                "algorithm": "fast_partition",
                "n": g.n(),
                "permutation": pi,
                "fast_schedule": fs,
                "cut_rounds": fs.cut_rounds,
                "verification": verification,
            });
            emit(&args.output, &envelope("route", args.seed, None, result))?;
            return check_verified(verification.valid, verification.diagnostic);
        }
    };
    let verification = verify_schedule(&g, &pi, &schedule);
    let result = json!({
        "algorithm": value_name(args.algorithm),
        "n": g.n(),
        "permutation": pi,
        "depth": schedule.depth(),
        "swaps": schedule.swap_count(),
        "schedule": schedule,
        "verification": verification,
        "details": extra,
    });
    emit(&args.output, &envelope("route", args.seed, None, result))?;
    check_verified(verification.valid, verification.diagnostic)
}

fn check_verified(valid: bool, diagnostic: Option<String>) -> Result<(), Failure> {
    if valid {
        Ok(())
    } else {
        Err(fail(
            EXIT_VERIFICATION,
            anyhow!(
                "schedule failed verification: {}",
                diagnostic.unwrap_or_default()
            ),
        ))
    }
}

fn exact_options(maximal: bool, max_vertices: Option<usize>) -> ExactOptions {
    let mut opts = ExactOptions {
        branching: if maximal {
            Branching::Maximal
        } else {
            Branching::All
        },
        ..Default::default()
    };
    if let Some(m) = max_vertices {
        opts.limits.max_vertices_pi = m;
        opts.limits.max_vertices_worst = m;
    }
    opts
}

fn cmd_exact(args: &ExactArgs) -> Result<(), Failure> {
    let g = load_graph(&args.source, args.seed)?;
    let opts = exact_options(args.maximal, args.max_vertices);
    let result = if args.worst {
        let w = exact_rt(&g, &opts)?;
        json!({ "mode": "worst", "branching": opts.branching, "depth": w.depth, "worst_pi": w.worst_pi,
                "witness_schedule": w.witness_schedule, "explored": w.explored })
    } else {
        let pi = load_perm(&args.perm, g.n(), args.seed)?;
        let r = exact_rt_pi(&g, &pi, &opts)?;
        json!({ "mode": "single", "branching": opts.branching, "permutation": pi, "depth": r.depth,
                "witness_schedule": r.witness_schedule, "explored": r.explored })
    };
    emit(&args.output, &envelope("exact", args.seed, None, result))?;
    Ok(())
}

fn load_schedule(path: &Path) -> anyhow::Result<Schedule> {
    let text = read(path)?;
    if let Ok(s) = Schedule::from_json(&text) {
        return Ok(s);
    }
    let v: Value = serde_json::from_str(&text).context("schedule file is not JSON")?;
    let inner = v
        .pointer("/result/schedule")
        .or_else(|| v.get("schedule"))
        .ok_or_else(|| anyhow!("no schedule found in {}", path.display()))?;
    Ok(serde_json::from_value(inner.clone())?)
}

fn cmd_certify(args: &CertifyArgs) -> Result<(), Failure> {
    let g = load_graph(&args.source, args.seed)?;
    let pi = load_perm(&args.perm, g.n(), args.seed)?;
    let schedule = load_schedule(&args.schedule)?;
    let verification = verify_schedule(&g, &pi, &schedule);
    let depth = schedule.depth();
    let optimum = match exact_rt_pi(&g, &pi, &ExactOptions::default()) {
        Ok(r) => Some(r.depth),
        Err(SearchError::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let report = bounds_report(&g, args.alpha, args.limit, &[])?;
    let mut rows = vec![json!({
        "check": "valid",
        "value": verification.valid,
        "status": if verification.valid { "pass" } else { "fail" },
    })];
    if let Some(opt) = optimum {
        rows.push(json!({ "check": "depth >= exact optimum", "value": opt, "status": status(depth >= opt) }));
        rows.push(json!({ "check": "optimal", "value": depth == opt, "status": if depth == opt { "pass" } else { "info" } }));
    }
    // a swap round takes one time unit, so time bounds constrain depth too
    let mut all_lower = true;
    for b in report.lower_bounds() {
        let ok = depth as f64 + 1e-9 >= b.value;
        all_lower &= ok;
        rows.push(json!({ "check": format!("depth >= {}", b.source), "value": b.value, "status": status(ok) }));
    }
    let verdict = if !verification.valid {
        format!(
            "invalid: {}",
            verification.diagnostic.clone().unwrap_or_default()
        )
    } else if all_lower && optimum.is_none_or(|o| depth >= o) {
        format!("valid, depth {depth}, ≥ lower bounds")
    } else {
        format!("valid, depth {depth}, below a lower bound")
    };
    let result = json!({
        "depth": depth,
        "exact_optimum": optimum,
        "verification": verification,
        "table": rows,
        "verdict": verdict,
    });
    emit(
        &args.output,
        &envelope("certify", args.seed, Some(args.alpha), result),
    )?;
    check_verified(verification.valid, verification.diagnostic)
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Left clique vertex `u` trades places with right clique vertex `n+1+u`.
fn barbell_exchange(n: usize) -> Permutation {
    let mut m: Vec<usize> = (0..2 * n + 1).collect();
    for u in 0..n {
        m[u] = n + 1 + u;
        m[n + 1 + u] = u;
    }
    Permutation::new(m).expect("an exchange is a permutation")
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let result = match args.protocol {
        Protocol::WTransfer => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            serde_json::to_value(quantum::w_transfer(
                args.s,
                Complex64::new(h, 0.0),
                Complex64::new(0.0, h),
            )?)?
        }
        Protocol::Barbell => {
            let sigma = match &args.perm.perm {
                Some(_) => load_perm(&args.perm, 2 * args.clique + 1, args.seed)?,
                None => barbell_exchange(args.clique),
            };
            let run = if args.dense {
                quantum::barbell_route_dense(args.clique, &sigma, args.seed)?
            } else {
                quantum::barbell_route_sim(args.clique, &sigma, args.seed)?
            };
            serde_json::to_value(run)?
        }
        Protocol::FastCz => serde_json::to_value(quantum::fast_cz(args.boundary)?)?,
        Protocol::Algorithm1 => {
            let run = quantum::run_algorithm1(args.x_size, args.delta, args.k)?;
            if let Some(path) = &args.csv {
                fs::write(path, run.trace.to_csv())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            serde_json::to_value(run)?
        }
        Protocol::FastRoute => {
            let g = load_graph(&args.source, args.seed)?;
            let pi = load_perm(&args.perm, g.n(), args.seed)?;
            let x = args
                .x
                .as_ref()
                .ok_or_else(|| fail(EXIT_USAGE, anyhow!("fast_route needs --x")))?;
            serde_json::to_value(quantum::fast_hamiltonian_route(&g, &x.0, &pi, args.seed)?)?
        }
    };
    let name = value_name(args.protocol);
    let alpha = matches!(args.protocol, Protocol::Algorithm1).then_some(DEFAULT_ALPHA);
    emit(
        &args.output,
        &envelope(&format!("simulate {name}"), args.seed, alpha, result),
    )?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Route(a) => cmd_route(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Simulate(a) => cmd_simulate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
