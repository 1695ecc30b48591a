//! Command-line front end: generate graphs, solve, query results, verify
//! against oracles, and benchmark the all-pairs phases.
//!
//! Exit codes: 0 success; 1 for domain results that are answers, not
//! failures (no routable flow, NONE on a query, a verify divergence);
//! 2 for usage, parse, and I/O errors. Results go to stdout or `-o`;
//! diagnostics and timings go to stderr.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use spaf::apsp::{solve_timed, ApspAfResult, ApspOptions};
use spaf::bottleneck::{network_bottleneck, NetworkBottleneck};
use spaf::jsonio;
use spaf::oracle::{
    compare_staircases, corpus_graph, oracle_apsp_af_bfs, oracle_apsp_af_enum, ComparisonReport,
    Divergence,
};
use spaf::sssp::sssp_af;
use spaf::{Capacity, Graph};

#[derive(Parser)]
#[command(
    name = "spaf",
    version,
    about = "Shortest paths for all flows on capacitated unit-cost digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random simple digraph
    Gen(GenArgs),
    /// Largest flow routable between every ordered vertex pair
    Bottleneck(BottleneckArgs),
    /// Single-source shortest paths for all flows (JSON result)
    #[command(name = "sssp-af")]
    SsspAf(SsspArgs),
    /// All-pairs shortest paths for all flows (JSON result)
    #[command(name = "apsp-af")]
    ApspAf(ApspArgs),
    /// Look up shortest length and flow for a demand in a result file
    Query(QueryArgs),
    /// Compare solver output against brute-force oracles
    Verify(VerifyArgs),
    /// Time the all-pairs phases
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of vertices
    #[arg(short)]
    n: usize,
    /// Number of edges
    #[arg(short)]
    m: usize,
    /// Comma-separated capacity pool
    #[arg(long, default_value = "1,2,4,8,9")]
    caps: String,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent)
    #[arg(short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BottleneckArgs {
    /// Graph file
    #[arg(short)]
    input: PathBuf,
    /// Tab-separated `value probes` instead of the bare value
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct SsspArgs {
    /// Graph file
    #[arg(short)]
    input: PathBuf,
    /// Source vertex, 1-based
    #[arg(short)]
    source: usize,
    /// Output file (stdout when absent)
    #[arg(short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ApspArgs {
    /// Graph file
    #[arg(short)]
    input: PathBuf,
    /// Acceleration horizon (default: ceil(sqrt(d)) clamped to [1, n-1])
    #[arg(short)]
    r: Option<usize>,
    /// Cruising worker threads (identical results for any count)
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output file (stdout when absent)
    #[arg(short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    /// Result JSON file
    #[arg(short)]
    input: PathBuf,
    /// Start vertex, 1-based
    #[arg(long)]
    from: usize,
    /// End vertex, 1-based
    #[arg(long)]
    to: usize,
    /// Demanded flow amount
    #[arg(long)]
    flow: String,
    /// Also reconstruct a path (requires --graph)
    #[arg(long)]
    path: bool,
    /// Graph file the result was computed from; needed only for --path
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Tab-separated `length flow` instead of space-separated
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifySource {
    /// Graph file
    #[arg(short)]
    input: Option<PathBuf>,
    /// Inclusive corpus seed range `A..B`
    #[arg(long)]
    seeds: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: VerifySource,
}

#[derive(Args)]
struct BenchArgs {
    /// Graph file
    #[arg(short)]
    input: PathBuf,
    /// Acceleration horizon override
    #[arg(short)]
    r: Option<usize>,
    /// Cruising worker threads
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Number of timed runs (timings keep the fastest)
    #[arg(long, default_value_t = 1)]
    repeat: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Bottleneck(args) => cmd_bottleneck(args),
        Command::SsspAf(args) => cmd_sssp(args),
        Command::ApspAf(args) => cmd_apsp(args),
        Command::Query(args) => cmd_query(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading graph file {}", path.display()))?;
    Graph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    let mut pool = Vec::new();
    for part in args.caps.split(',') {
        let part = part.trim();
        if part.is_empty() {
            bail!("--caps has an empty entry");
        }
        pool.push(Capacity::parse(part).with_context(|| format!("capacity {part:?}"))?);
    }
    let g = spaf::generate_random(args.n, args.m, &pool, args.seed)?;
    emit(&args.output, &g.serialize())?;
    Ok(0)
}

fn cmd_bottleneck(args: BottleneckArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let res = network_bottleneck(&g);
    match res.value {
        NetworkBottleneck::Flow(c) => {
            if args.tsv {
                println!("{c}\t{}", res.probe_count);
            } else {
                println!("{c}");
            }
            Ok(0)
        }
        NetworkBottleneck::NotStronglyConnected => {
            println!("NONE");
            Ok(1)
        }
        NetworkBottleneck::Degenerate => {
            println!("DEGENERATE");
            Ok(1)
        }
    }
}

fn cmd_sssp(args: SsspArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    if args.source < 1 || args.source > g.n() {
        bail!("source {} outside 1..={}", args.source, g.n());
    }
    let res = sssp_af(&g, args.source - 1)?;
    emit(&args.output, &jsonio::encode(&jsonio::to_json_sssp(&res))?)?;
    Ok(0)
}

fn cmd_apsp(args: ApspArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let opts = ApspOptions { r: args.r, threads: args.threads };
    let (res, _) = solve_timed(&g, opts)?;
    emit(&args.output, &jsonio::encode(&jsonio::to_json_apsp(&res))?)?;
    Ok(0)
}

fn cmd_query(args: QueryArgs) -> Result<u8> {
    if args.path && args.graph.is_none() {
        bail!("--path needs --graph (the result file stores no edges)");
    }
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading result file {}", args.input.display()))?;
    let lookup = jsonio::decode(&text)?.into_lookup()?;
    let n = lookup.n();
    for (name, v) in [("--from", args.from), ("--to", args.to)] {
        if v < 1 || v > n {
            bail!("{name} {v} outside 1..={n}");
        }
    }
    let demand = Capacity::parse(&args.flow).with_context(|| format!("--flow {:?}", args.flow))?;
    let Some((len, flow)) = lookup.query(args.from - 1, args.to - 1, &demand)? else {
        println!("NONE");
        return Ok(1);
    };
    if args.tsv {
        println!("{len}\t{flow}");
    } else {
        println!("{len} {flow}");
    }
    if args.path {
        let g = read_graph(args.graph.as_ref().expect("checked above"))?;
        if g.n() != n {
            bail!("--graph has {} vertices but the result file has {n}", g.n());
        }
        let path = lookup
            .path(&g, args.from - 1, args.to - 1, &demand)?
            .expect("query above was answered");
        let line = path.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
        println!("{line}");
    }
    Ok(0)
}

/// Solver vs oracle for one graph: BFS oracle always, exhaustive path
/// enumeration when small enough, and each row against the single-source
/// solver.
fn verify_graph(g: &Graph) -> Result<ComparisonReport> {
    let n = g.n();
    let (res, _) = solve_timed(g, ApspOptions::default())?;
    let bfs = oracle_apsp_af_bfs(g);
    let report = compare_staircases(n, res.staircases(), &bfs)?;
    if !report.equal {
        return Ok(report);
    }
    if n <= 8 {
        let by_enum = oracle_apsp_af_enum(g)?;
        let report = compare_staircases(n, res.staircases(), &by_enum)?;
        if !report.equal {
            return Ok(report);
        }
    }
    for s in 0..n {
        let row = sssp_af(g, s)?;
        for v in 0..n {
            if row.staircase(v) != &bfs[s * n + v] {
                return Ok(ComparisonReport {
                    equal: false,
                    divergence: Some(Divergence {
                        i: s + 1,
                        j: v + 1,
                        detail: "single-source row disagrees with the all-pairs oracle".into(),
                    }),
                });
            }
        }
    }
    Ok(ComparisonReport { equal: true, divergence: None })
}

fn describe(report: &ComparisonReport) -> String {
    match &report.divergence {
        None => "EQUAL".into(),
        Some(div) => format!("DIVERGES at ({}, {}): {}", div.i, div.j, div.detail),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    if let Some(path) = &args.source.input {
        let g = read_graph(path)?;
        let report = verify_graph(&g)?;
        println!("{}", describe(&report));
        return Ok(if report.equal { 0 } else { 1 });
    }
    let range = args.source.seeds.as_ref().expect("clap group guarantees one source");
    let (a, b) = range
        .split_once("..")
        .and_then(|(a, b)| Some((a.parse::<u64>().ok()?, b.parse::<u64>().ok()?)))
        .filter(|(a, b)| a <= b)
        .with_context(|| format!("--seeds wants A..B with A <= B, got {range:?}"))?;
    let mut equal = 0u64;
    let total = b - a + 1;
    for seed in a..=b {
        let g = corpus_graph(seed);
        let report = verify_graph(&g)?;
        if report.equal {
            equal += 1;
        } else {
            println!("seed {seed} {}", describe(&report));
        }
    }
    println!("{equal}/{total} EQUAL");
    Ok(if equal == total { 0 } else { 1 })
}

fn fmt_ms(d: Duration) -> String {
    format!("{:.3}ms", d.as_secs_f64() * 1e3)
}

fn cmd_bench(args: BenchArgs) -> Result<u8> {
    if args.repeat < 1 {
        bail!("--repeat must be at least 1");
    }
    let g = read_graph(&args.input)?;
    let opts = ApspOptions { r: args.r, threads: args.threads };
    let mut result: Option<ApspAfResult> = None;
    let mut best: Option<(Duration, Duration, Duration)> = None;
    for run in 1..=args.repeat {
        let (res, t) = solve_timed(&g, opts)?;
        eprintln!(
            "run {run}: acceleration {} cruising {} finalize {}",
            fmt_ms(t.acceleration),
            fmt_ms(t.cruising),
            fmt_ms(t.finalize)
        );
        best = Some(match best {
            None => (t.acceleration, t.cruising, t.finalize),
            Some((a, c, f)) => (a.min(t.acceleration), c.min(t.cruising), f.min(t.finalize)),
        });
        result = Some(res);
    }
    let (a, c, f) = best.expect("at least one run");
    eprintln!(
        "best: acceleration {} cruising {} finalize {}",
        fmt_ms(a),
        fmt_ms(c),
        fmt_ms(f)
    );
    let res = result.expect("at least one run");
    let pairs = res.staircases().iter().filter(|t| !t.is_empty()).count();
    let steps: usize = res.staircases().iter().map(|t| t.len()).sum();
    let mut line = String::new();
    write!(
        line,
        "n={} m={} d={} r={} rounds={} pairs={pairs} steps={steps}",
        g.n(),
        g.m(),
        g.distinct_capacities().len(),
        res.r_used,
        res.cruise_rounds
    )?;
    println!("{line}");
    Ok(0)
}
