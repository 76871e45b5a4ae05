mod report;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hitminor_core::graph::generators::{gnp, grid};
use hitminor_core::graph::{explain_violation, parse_gr, write_gr};
use hitminor_core::oracle::{min_deletion_bruteforce, MAX_BRUTEFORCE};
use hitminor_core::solvers::{prepare, solve, Answer, Mode, SolveRequest};
use hitminor_core::treedecomp::{exact_td_small, heuristic_td, parse_td, write_td, NodeKind, TreeDecomposition};
use hitminor_core::{Error as CoreError, Exec, Graph, PatternId};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use report::{Aggregate, AnswerValue, RunReport, Verdict, AGGREGATE_SCHEMA, RUN_SCHEMA};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Core { context: String, source: CoreError },
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::File { .. } => 3,
            CliError::Core { source, .. } => match source {
                CoreError::Guard { .. } => 4,
                CoreError::NoDynamicProgram(_) => 2,
                _ => 3,
            },
            CliError::Mismatch(_) => 5,
        }
    }
}

fn core(context: impl Into<String>) -> impl FnOnce(CoreError) -> CliError {
    let context = context.into();
    move |source| CliError::Core { context, source }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "hitminor",
    version,
    about = "Minimum vertex deletion to topological-minor-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Solve one instance and cross-check it against the brute-force oracle.
    Verify(InstanceArgs),
    /// Report whether a graph is pattern-free.
    Check(CheckArgs),
    /// Build a tree decomposition in PACE .td format.
    Td(TdArgs),
    /// Solve every .gr file of a directory, one JSON report per line.
    Bench(BenchArgs),
    /// Write a generated graph in PACE .gr format.
    Gen(GenArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// p3, p4, k1s:<s>, c4, paw, chair or banner.
    #[arg(long, value_parser = parse_pattern)]
    pattern: PatternId,
    /// Graph in .gr format, `-` for stdin.
    #[arg(long)]
    graph: PathBuf,
    /// Tree decomposition in .td format; min-fill is used when absent.
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Minimize)]
    mode: ModeArg,
    /// Budget for `--mode decide`.
    #[arg(short)]
    k: Option<usize>,
    /// Cross-check against the brute-force oracle when the graph is small enough.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Minimize,
    Decide,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_parser = parse_pattern)]
    pattern: PatternId,
    #[arg(long)]
    graph: PathBuf,
    /// Name the clause of the characterization that fails.
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct TdArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Optimal width by exhaustive search (small graphs only).
    #[arg(long)]
    exact: bool,
    /// Print width and node counts to stderr.
    #[arg(long)]
    stats: bool,
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_parser = parse_pattern)]
    pattern: PatternId,
    /// Relabel every instance by a random permutation drawn from this seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    verify: bool,
    /// Include wall-clock times, which makes the output non-reproducible.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// `width x height` grid.
    Grid { width: usize, height: usize },
    /// Erdős–Rényi graph.
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_pattern(s: &str) -> Result<PatternId, String> {
    s.parse()
}

fn read_input(path: &Path) -> CliResult<String> {
    let file_err = |source| CliError::File {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(file_err)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(file_err)
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    parse_gr(&read_input(path)?).map_err(core(path.display().to_string()))
}

fn load_td(path: Option<&Path>) -> CliResult<Option<TreeDecomposition>> {
    path.map(|p| parse_td(&read_input(p)?).map_err(core(p.display().to_string())))
        .transpose()
}

fn mode_name(mode: Mode) -> String {
    match mode {
        Mode::Minimize => "minimize".into(),
        Mode::Decide(k) => format!("decide:{k}"),
    }
}

fn oracle_minimum(g: &Graph, pattern: PatternId) -> CliResult<usize> {
    Ok(min_deletion_bruteforce(g, pattern, Exec::Parallel)
        .map_err(core("oracle"))?
        .len())
}

/// Solves with the program for `pattern`, or with the oracle for patterns
/// that have none.
fn run_instance(
    input: &str,
    g: &Graph,
    pattern: PatternId,
    mode: Mode,
    td: Option<&TreeDecomposition>,
    verify: bool,
    exec: Exec,
) -> CliResult<RunReport> {
    let start = Instant::now();
    let mut report = RunReport {
        schema: RUN_SCHEMA,
        input: input.to_string(),
        pattern: pattern.to_string(),
        mode: mode_name(mode),
        answer: AnswerValue::Minimum(0),
        minimum: 0,
        method: "dp",
        vertices: g.n(),
        edges: g.m(),
        wall_ms: None,
        width: None,
        peak_table: None,
        peak_by_bag: None,
        bound_violations: None,
        verification: None,
    };
    if pattern.has_dp() {
        let req = SolveRequest {
            graph: g,
            pattern,
            mode,
            decomposition: td,
            exec,
        };
        let res = solve(&req).map_err(core(input))?;
        report.answer = match res.answer {
            Answer::Minimum(k) => AnswerValue::Minimum(k),
            Answer::Decision(b) => AnswerValue::Decision(b),
        };
        report.minimum = res.minimum;
        report.width = Some(res.stats.width);
        report.peak_table = Some(res.stats.peak_total);
        report.peak_by_bag = Some(res.stats.peak_by_bag());
        report.bound_violations = Some(res.stats.bound_violations);
    } else {
        let k = oracle_minimum(g, pattern)?;
        report.method = "oracle";
        report.minimum = k;
        report.answer = match mode {
            Mode::Minimize => AnswerValue::Minimum(k),
            Mode::Decide(b) => AnswerValue::Decision(k <= b),
        };
    }
    report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    if verify {
        report.verification = Some(if g.n() > MAX_BRUTEFORCE {
            Verdict::Skipped
        } else if oracle_minimum(g, pattern)? == report.minimum {
            Verdict::Agree
        } else {
            Verdict::Mismatch
        });
    }
    Ok(report)
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string(report).expect("serializable"));
    } else {
        println!("{}", report.human());
    }
}

fn check_verdict(report: &RunReport) -> CliResult<()> {
    if report.verification == Some(Verdict::Mismatch) {
        return Err(CliError::Mismatch(format!(
            "{}: solver minimum {} differs from the oracle",
            report.input, report.minimum
        )));
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> CliResult<()> {
    let mode = match (args.mode, args.k) {
        (ModeArg::Minimize, None) => Mode::Minimize,
        (ModeArg::Decide, Some(k)) => Mode::Decide(k),
        (ModeArg::Minimize, Some(_)) => return Err(CliError::Usage("-k needs --mode decide".into())),
        (ModeArg::Decide, None) => return Err(CliError::Usage("--mode decide needs -k".into())),
    };
    let inst = &args.instance;
    let g = load_graph(&inst.graph)?;
    let td = load_td(inst.td.as_deref())?;
    let input = inst.graph.display().to_string();
    let report = run_instance(&input, &g, inst.pattern, mode, td.as_ref(), args.verify, Exec::Parallel)?;
    emit(&report, inst.json);
    check_verdict(&report)
}

fn cmd_verify(inst: &InstanceArgs) -> CliResult<()> {
    let g = load_graph(&inst.graph)?;
    if g.n() > MAX_BRUTEFORCE {
        return Err(CliError::Core {
            context: "oracle".into(),
            source: CoreError::Guard {
                what: "vertex count for brute-force deletion",
                actual: g.n(),
                limit: MAX_BRUTEFORCE,
            },
        });
    }
    let td = load_td(inst.td.as_deref())?;
    let input = inst.graph.display().to_string();
    let report = run_instance(
        &input,
        &g,
        inst.pattern,
        Mode::Minimize,
        td.as_ref(),
        true,
        Exec::Parallel,
    )?;
    emit(&report, inst.json);
    check_verdict(&report)
}

fn cmd_check(args: &CheckArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    match explain_violation(&g, args.pattern) {
        None => println!("free"),
        Some(why) if args.explain => println!("not-free: {why}"),
        Some(_) => println!("not-free"),
    }
    Ok(())
}

fn cmd_td(args: &TdArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let td = if args.exact {
        exact_td_small(&g, hitminor_core::treedecomp::EXACT_LIMIT).map_err(core("exact treewidth"))?
    } else {
        heuristic_td(&g)
    };
    let text = write_td(&td, g.n());
    match &args.output {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::File {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    if args.stats {
        let nice = prepare(&g, PatternId::P3, Some(&td)).map_err(core("nice decomposition"))?;
        let count = |f: fn(&NodeKind) -> bool| nice.nodes().iter().filter(|x| f(&x.kind)).count();
        eprintln!(
            "width {}  bags {}  nice nodes {} (leaf {}, introduce {}, forget {}, join {})",
            td.width(),
            td.bags.len(),
            nice.len(),
            count(|k| *k == NodeKind::Leaf),
            count(|k| matches!(k, NodeKind::Introduce(_))),
            count(|k| matches!(k, NodeKind::Forget(_))),
            count(|k| *k == NodeKind::Join),
        );
    }
    Ok(())
}

fn relabelled(g: &Graph, seed: u64, index: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    g.relabel(&perm)
}

fn cmd_bench(args: &BenchArgs) -> CliResult<()> {
    let dir_err = |source| CliError::File {
        path: args.corpus.display().to_string(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(&args.corpus)
        .map_err(dir_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "gr"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Usage(format!("no .gr files in {}", args.corpus.display())));
    }
    let start = Instant::now();
    // instances run in parallel; the ordered collect keeps reports in file order
    let reports: Vec<CliResult<RunReport>> = files
        .par_iter()
        .enumerate()
        .map(|(i, path)| {
            let mut g = load_graph(path)?;
            if let Some(seed) = args.seed {
                g = relabelled(&g, seed, i);
            }
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let mut r = run_instance(
                &name,
                &g,
                args.pattern,
                Mode::Minimize,
                None,
                args.verify,
                Exec::Sequential,
            )?;
            if !args.timings {
                r.wall_ms = None;
            }
            Ok(r)
        })
        .collect();
    let reports: Vec<RunReport> = reports.into_iter().collect::<CliResult<_>>()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for r in &reports {
        writeln!(out, "{}", serde_json::to_string(r).expect("serializable")).ok();
    }
    let aggregate = Aggregate {
        schema: AGGREGATE_SCHEMA,
        instances: reports.len(),
        pattern: args.pattern.to_string(),
        total_minimum: reports.iter().map(|r| r.minimum).sum(),
        max_width: reports.iter().filter_map(|r| r.width).max(),
        max_peak_table: reports.iter().filter_map(|r| r.peak_table).max(),
        bound_violations: reports.iter().filter_map(|r| r.bound_violations).sum(),
        mismatches: reports
            .iter()
            .filter(|r| r.verification == Some(Verdict::Mismatch))
            .count(),
        wall_ms: args.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    writeln!(out, "{}", serde_json::to_string(&aggregate).expect("serializable")).ok();
    if aggregate.mismatches > 0 {
        return Err(CliError::Mismatch(format!(
            "{} instances disagree with the oracle",
            aggregate.mismatches
        )));
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> CliResult<()> {
    let g = match args.family {
        Family::Grid { width, height } => grid(width, height),
        Family::Gnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage(format!("edge probability {p} is outside [0, 1]")));
            }
            gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
        }
    };
    let text = write_gr(&g);
    match &args.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::File {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("HITMINOR_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("HITMINOR_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Check(a) => cmd_check(a),
        Command::Td(a) => cmd_td(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Gen(a) => cmd_gen(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
