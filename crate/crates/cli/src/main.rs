use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use iterforce::harness::{self, summary_table, TheoremReport};
use iterforce::{
    burning_number, closure, emit_graph6, failed_zero_forcing_number, min_fort, parse_graph6,
    superfluous_burning_number, zero_forcing_number, Budget, CloningPlan, Graph, IteratedGraph,
    Mode, PlanSpec, SolverReport, VertexSet,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const BUDGET_ENV: &str = "ITERFORCE_BUDGET_SECS";

#[derive(Parser)]
#[command(name = "iterforce", version, about = "Iterated clone/anticlone graphs: generation, exact solvers and claim checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a base graph and write it as graph6, with a lineage sidecar.
    Gen(GenArgs),
    /// Exact zero forcing number.
    Zf(SolveArgs),
    /// Exact failed zero forcing number via minimum forts.
    Fzf(FzfArgs),
    /// Exact burning number (or superfluous burning number).
    Burn(BurnArgs),
    /// Run every claim family of a config file.
    Verify(VerifyArgs),
    /// Time the search kernels on one graph.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Base graph: k1, p4, c5, e3, s3 ... or a graph6 string.
    #[arg(long)]
    base: String,
    /// Growth rule; ilm and iim need --plan.
    #[arg(long, default_value = "ilt")]
    mode: Mode,
    /// Number of growth steps (ignored with --plan).
    #[arg(long, default_value_t = 1)]
    levels: usize,
    /// Plan file: explicit c/a lines, or one of `ILT l`, `ILAT l`, `ILM ca..`.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Output graph6 path; the lineage goes to `<out>.lineage`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InputArgs {
    /// Input file: graph6 (first graph is used) or edge list ("n m" header).
    #[arg(long = "in", conflicts_with = "graph")]
    input: Option<PathBuf>,
    /// Named graph or graph6 string.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop starting new size levels after this many candidates.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_candidates: Option<u64>,
    /// Wall-clock limit in seconds (overridden by ITERFORCE_BUDGET_SECS).
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct FzfArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Only look for forts of at most this many vertices.
    #[arg(long)]
    fort_cap: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BurnArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Compute b* (final source idle) instead of b.
    #[arg(long)]
    superfluous: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Write the JSON reports here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Repetitions of the closure kernel.
    #[arg(long, default_value_t = 1000)]
    reps: u32,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
}

fn budget_from_env() -> Result<Option<Duration>> {
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => {
            let secs: f64 = raw
                .trim()
                .parse()
                .with_context(|| format!("{BUDGET_ENV}={raw:?} is not a number of seconds"))?;
            if secs.is_nan() || secs <= 0.0 {
                bail!("{BUDGET_ENV} must be positive");
            }
            Ok(Some(Duration::from_secs_f64(secs)))
        }
        Err(_) => Ok(None),
    }
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget> {
        let mut b = Budget {
            max_candidates: self.max_candidates,
            wall: None,
        };
        if let Some(s) = self.budget_secs {
            if s.is_nan() || s <= 0.0 {
                bail!("--budget-secs must be positive");
            }
            b.wall = Some(Duration::from_secs_f64(s));
        }
        if let Some(w) = budget_from_env()? {
            b.wall = Some(w);
        }
        Ok(b)
    }
}

fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .with_context(|| format!("{} contains no graph", path.display()))?;
    let is_edge_list = first
        .split_whitespace()
        .next()
        .is_some_and(|t| t.chars().all(|c| c.is_ascii_digit()));
    if is_edge_list {
        Graph::parse_edge_list(&text).with_context(|| format!("malformed edge list in {}", path.display()))
    } else {
        parse_graph6(first).with_context(|| format!("malformed graph6 in {}", path.display()))
    }
}

fn graph_token(tok: &str) -> Result<Graph> {
    harness::parse_base(tok).map_err(anyhow::Error::msg)
}

impl InputArgs {
    fn load(&self) -> Result<Graph> {
        match (&self.input, &self.graph) {
            (Some(p), _) => read_graph_file(p),
            (None, Some(g)) => graph_token(g),
            (None, None) => bail!("give an input with --in <file> or --graph <name>"),
        }
    }
}

fn pool(workers: u16) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers as usize)
        .build()
        .context("cannot start worker pool")
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("cannot write {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn report_exit(report: &SolverReport) -> u8 {
    if report.value.is_some() {
        0
    } else {
        EXIT_UNDECIDED
    }
}

fn run_gen(args: &GenArgs) -> Result<u8> {
    let base = graph_token(&args.base)?;
    let plan = match &args.plan {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            PlanSpec::parse(&text)
                .and_then(|s| s.into_plan(base.order()))
                .with_context(|| format!("bad plan in {}", p.display()))?
        }
        None => match args.mode {
            Mode::Ilt => CloningPlan::ilt(base.order(), args.levels),
            Mode::Ilat => CloningPlan::ilat(base.order(), args.levels),
            m => bail!("--mode {m} needs a --plan file"),
        },
    };
    let ig = IteratedGraph::build(&base, &plan)?;
    fs::write(&args.out, format!("{}\n", emit_graph6(ig.graph())))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    let mut sidecar = args.out.clone().into_os_string();
    sidecar.push(".lineage");
    fs::write(&sidecar, ig.lineage().to_text())
        .with_context(|| format!("cannot write {}", PathBuf::from(&sidecar).display()))?;
    eprintln!(
        "wrote {} vertices, {} edges ({})",
        ig.order(),
        ig.graph().edge_count(),
        plan.mode()
    );
    Ok(0)
}

fn run_zf(args: &SolveArgs) -> Result<u8> {
    let g = args.input.load()?;
    let budget = args.budget.budget()?;
    let report = pool(args.budget.workers)?.install(|| zero_forcing_number(&g, &budget))?;
    emit(args.budget.out.as_deref(), &report.to_json())?;
    Ok(report_exit(&report))
}

fn run_fzf(args: &FzfArgs) -> Result<u8> {
    let g = args.input.load()?;
    let budget = args.budget.budget()?;
    let n = g.order();
    let report = pool(args.budget.workers)?.install(|| -> Result<SolverReport> {
        let Some(cap) = args.fort_cap else {
            return Ok(failed_zero_forcing_number(&g, &budget)?);
        };
        let fort = min_fort(&g, cap, &budget)?;
        let mut r = fort.clone();
        r.parameter = iterforce::Parameter::FailedZeroForcing;
        r.bounds = (n - fort.bounds.1.min(n), n - fort.bounds.0.min(n));
        if let Some(k) = fort.value {
            let f = VertexSet::from_indices(n, fort.witness.iter().copied());
            r.value = Some(n - k);
            r.witness = f.complement().to_vec();
            r.fort = Some(fort.witness);
        } else if !fort.budget_exhausted {
            r.notes.push(format!("no fort of size <= {cap}"));
        }
        Ok(r)
    })?;
    emit(args.budget.out.as_deref(), &report.to_json())?;
    Ok(report_exit(&report))
}

fn run_burn(args: &BurnArgs) -> Result<u8> {
    let g = args.input.load()?;
    let budget = args.budget.budget()?;
    let report = pool(args.budget.workers)?.install(|| {
        if args.superfluous {
            superfluous_burning_number(&g, &budget)
        } else {
            burning_number(&g, &budget)
        }
    })?;
    emit(args.budget.out.as_deref(), &report.to_json())?;
    Ok(report_exit(&report))
}

fn run_verify(args: &VerifyArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read {}", args.config.display()))?;
    let mut families = harness::parse_config(&text)?;
    if let Some(w) = budget_from_env()? {
        for f in &mut families {
            f.budget.wall = Some(w);
        }
    }
    let reports: Vec<TheoremReport> = pool(args.workers)?.install(|| harness::run_config(&families))?;
    let json = serde_json::to_string_pretty(&reports)?;
    emit(args.out.as_deref(), &json)?;
    eprint!("{}", summary_table(&reports));
    Ok(if reports.iter().any(TheoremReport::has_violation) {
        EXIT_VIOLATION
    } else if reports.iter().any(TheoremReport::has_undecided) {
        EXIT_UNDECIDED
    } else {
        0
    })
}

fn run_bench(args: &BenchArgs) -> Result<u8> {
    let g = args.input.load()?;
    let n = g.order();
    let unlimited = Budget::unlimited();
    pool(args.workers)?.install(|| -> Result<()> {
        let start = VertexSet::from_indices(n, 0..n.min(1));
        let t = Instant::now();
        for _ in 0..args.reps {
            std::hint::black_box(closure(&g, &start));
        }
        let closure_ns = t.elapsed().as_nanos() / u128::from(args.reps.max(1));
        let t = Instant::now();
        let z = zero_forcing_number(&g, &unlimited)?;
        let zf_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let f = failed_zero_forcing_number(&g, &unlimited)?;
        let fzf_ms = t.elapsed().as_secs_f64() * 1e3;
        let out = serde_json::json!({
            "order": n,
            "workers": args.workers,
            "closure_ns": closure_ns,
            "zf": { "value": z.value, "explored": z.explored, "ms": zf_ms },
            "fzf": { "value": f.value, "explored": f.explored, "ms": fzf_ms },
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
        Ok(())
    })?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Zf(a) => run_zf(a),
        Command::Fzf(a) => run_fzf(a),
        Command::Burn(a) => run_burn(a),
        Command::Verify(a) => run_verify(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
