//! The `mpp` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::ilp::ObjectiveKind;
use crate::instance::{generate_grid_instance, parse_instance, serialize_instance, Instance};
use crate::oracle::{bfs_min_makespan, exhaustive_optimal, solve_puzzle_constructive, OracleOutcome, DEFAULT_NODE_CAP};
use crate::plan::{parse_plan, serialize_plan, Plan};
use crate::planner::{solve_with_split, PlannerOptions, SolveReport};
use crate::render::{render, Format};
use crate::solver::Backend;
use crate::timex::Encoding;
use crate::validate::{metrics, validate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;
pub const EXIT_EXTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "mpp", version, about = "Optimal multi-robot path planning on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a random grid instance.
    Generate(GenerateArgs),
    /// Solve an instance and write the plan.
    Solve(SolveArgs),
    /// Check a plan against an instance.
    Validate(ValidateArgs),
    /// Ground truth without the integer program.
    Oracle(OracleArgs),
    /// Seeded batch over robot counts and obstacle percentages.
    Bench(BenchArgs),
    /// Draw a plan, one file per time step.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Percentage of grid cells removed.
    #[arg(long, default_value_t = 0.0)]
    obstacles: f64,
    #[arg(long)]
    robots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long)]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveArg {
    Makespan,
    Maxdist,
    Totaltime,
    Totaldist,
}

impl From<ObjectiveArg> for ObjectiveKind {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Makespan => ObjectiveKind::Makespan,
            ObjectiveArg::Maxdist => ObjectiveKind::MaxDistance,
            ObjectiveArg::Totaltime => ObjectiveKind::TotalTime,
            ObjectiveArg::Totaldist => ObjectiveKind::TotalDistance,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodingArg {
    Compact,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Embedded,
    External,
}

#[derive(Args, Debug, Clone)]
struct PlannerArgs {
    #[arg(long, value_enum, default_value = "makespan")]
    objective: ObjectiveArg,
    #[arg(long, default_value_t = 1)]
    split: usize,
    #[arg(long, value_enum, default_value = "compact")]
    encoding: EncodingArg,
    /// `external` runs the executable named by MPP_ILP_SOLVER.
    #[arg(long, value_enum, default_value = "embedded")]
    backend: BackendArg,
    /// Seconds, per instance (per stage when splitting).
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    gap: f64,
    /// Largest makespan tried before declaring the instance infeasible.
    #[arg(long)]
    tmax: Option<usize>,
    /// Horizon for the distance objectives.
    #[arg(long)]
    horizon: Option<usize>,
}

impl PlannerArgs {
    fn options(&self) -> Result<PlannerOptions> {
        let objective: ObjectiveKind = self.objective.into();
        if self.split == 0 {
            return Err(Error::Config("--split must be at least 1".into()));
        }
        if self.split > 1 && objective == ObjectiveKind::TotalTime {
            return Err(Error::Config("--split is not supported with --objective totaltime".into()));
        }
        if !(0.0..1.0).contains(&self.gap) {
            return Err(Error::Config("--gap must lie in [0, 1)".into()));
        }
        let time_limit = match self.time_limit {
            Some(s) if !(s > 0.0 && s.is_finite()) => {
                return Err(Error::Config("--time-limit must be a positive number of seconds".into()));
            }
            s => s.map(Duration::from_secs_f64),
        };
        let backend = match self.backend {
            BackendArg::Embedded => Backend::Embedded,
            BackendArg::External => Backend::external_from_env()?,
        };
        Ok(PlannerOptions {
            encoding: match self.encoding {
                EncodingArg::Compact => Encoding::Compact,
                EncodingArg::Full => Encoding::Full,
            },
            backend,
            time_limit,
            gap: self.gap,
            t_cap: self.tmax,
            horizon: self.horizon,
            ..PlannerOptions::default()
        })
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(short = 'i', long)]
    instance: PathBuf,
    #[command(flatten)]
    planner: PlannerArgs,
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// Report file; wall times are left out so reruns compare equal.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(short = 'i', long)]
    instance: PathBuf,
    #[arg(short = 's', long)]
    solution: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Bfs,
    Exhaustive,
    Puzzle,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(short = 'i', long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, value_enum, default_value = "makespan")]
    objective: ObjectiveArg,
    /// Search depth for `exhaustive`.
    #[arg(long, default_value_t = 12)]
    tmax: usize,
    /// Stored configurations allowed for `bfs`.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
    /// Writes the witness plan.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Comma-separated obstacle percentages.
    #[arg(long, default_value = "0")]
    obstacles: String,
    /// `A..B` (step 10), `A..B:STEP`, or a comma-separated list.
    #[arg(long)]
    robots: String,
    #[arg(long, default_value_t = 10)]
    per_point: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    planner: PlannerArgs,
    /// CSV output; the summary goes to standard output.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(short = 'i', long)]
    instance: PathBuf,
    #[arg(short = 's', long)]
    solution: PathBuf,
    #[arg(long)]
    format: Format,
    #[arg(short = 'o', long)]
    output: PathBuf,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::Timeout(_) => EXIT_TIMEOUT,
        Error::ExternalSolver(_) | Error::Integrity(_) => EXIT_EXTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Solve(a) => solve(&a),
        Command::Validate(a) => validate_cmd(&a),
        Command::Oracle(a) => oracle(&a),
        Command::Bench(a) => bench(&a),
        Command::Render(a) => render_cmd(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?)
}

fn load_plan(path: &Path) -> Result<Plan> {
    parse_plan(&read(path)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn generate(a: &GenerateArgs) -> Result<i32> {
    if !(0.0..100.0).contains(&a.obstacles) {
        return Err(Error::Config("--obstacles is a percentage in [0, 100)".into()));
    }
    let inst = generate_grid_instance(a.rows, a.cols, a.obstacles / 100.0, a.robots, a.seed)?;
    write(&a.output, &serialize_instance(&inst))?;
    Ok(EXIT_OK)
}

fn solve(a: &SolveArgs) -> Result<i32> {
    let opts = a.planner.options()?;
    let inst = load_instance(&a.instance)?;
    let (plan, report) = solve_with_split(&inst, a.planner.split, a.planner.objective.into(), &opts)?;
    write(&a.output, &serialize_plan(&plan))?;
    if let Some(path) = &a.report {
        write(path, &report.to_text(false))?;
    }
    print!("{}", report.to_text(true));
    Ok(EXIT_OK)
}

fn validate_cmd(a: &ValidateArgs) -> Result<i32> {
    let inst = load_instance(&a.instance)?;
    let plan = load_plan(&a.solution)?;
    let violations = validate(&plan, &inst);
    if violations.is_empty() {
        let m = metrics(&plan, &inst)?;
        println!("valid");
        println!("makespan {}", m.makespan);
        println!("max_distance {}", m.max_distance);
        println!("total_time {}", m.total_time);
        println!("total_distance {}", m.total_distance);
        return Ok(EXIT_OK);
    }
    for v in &violations {
        println!("violation {v}");
    }
    Ok(EXIT_INVALID)
}

fn oracle(a: &OracleArgs) -> Result<i32> {
    let inst = load_instance(&a.instance)?;
    let outcome = match a.method {
        Method::Bfs => bfs_min_makespan(&inst, a.node_cap)?,
        Method::Exhaustive => exhaustive_optimal(&inst, a.objective.into(), a.tmax)?,
        Method::Puzzle => {
            let plan = solve_puzzle_constructive(&inst)?;
            OracleOutcome::Solved { value: plan.horizon(), plan }
        }
    };
    match outcome {
        OracleOutcome::Solved { value, plan } => {
            println!("value {value}");
            if let Some(path) = &a.output {
                write(path, &serialize_plan(&plan))?;
            }
            Ok(EXIT_OK)
        }
        OracleOutcome::Unsolvable => {
            println!("unsolvable");
            Ok(EXIT_INFEASIBLE)
        }
        OracleOutcome::Unknown => {
            println!("unknown");
            Ok(EXIT_TIMEOUT)
        }
    }
}

/// Parses `A..B`, `A..B:STEP` or `A,B,C`.
fn robot_counts(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("cannot read robot counts {s:?}"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = rest.split_once(':').unwrap_or((rest, "10"));
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        let step: usize = step.trim().parse().map_err(|_| bad())?;
        if step == 0 || lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).step_by(step).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn percentages(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            let p: f64 = x.trim().parse().map_err(|_| Error::Config(format!("bad obstacle percentage {x:?}")))?;
            if (0.0..100.0).contains(&p) {
                Ok(p)
            } else {
                Err(Error::Config(format!("obstacle percentage {p} outside [0, 100)")))
            }
        })
        .collect()
}

struct BenchRow {
    obstacles: f64,
    robots: usize,
    index: usize,
    seed: u64,
    outcome: std::result::Result<SolveReport, Error>,
    seconds: f64,
}

fn bench(a: &BenchArgs) -> Result<i32> {
    let opts = a.planner.options()?;
    let objective: ObjectiveKind = a.planner.objective.into();
    let counts = robot_counts(&a.robots)?;
    let obstacle_list = percentages(&a.obstacles)?;
    let jobs = a.jobs.max(1);
    let mut csv = String::from("obstacles,robots,instance,seed,status,achieved,lower_bound,ratio,horizon,seconds\n");
    let mut summary = String::new();
    let _ = writeln!(summary, "{:>9} {:>6} {:>7} {:>10} {:>10} {:>8}", "obstacles", "robots", "solved", "mean_ratio", "max_ratio", "mean_s");
    for &pct in &obstacle_list {
        for &robots in &counts {
            let seeds: Vec<u64> = (0..a.per_point)
                .map(|k| a.seed ^ (((pct * 100.0) as u64) << 40) ^ ((robots as u64) << 20) ^ k as u64)
                .collect();
            let rows = run_point(a, &opts, objective, pct, robots, &seeds, jobs);
            let mut solved = 0;
            let mut ratios = Vec::new();
            let mut seconds = 0.0;
            let mut failed = false;
            for r in &rows {
                seconds += r.seconds;
                let (status, achieved, lb, ratio, horizon) = match &r.outcome {
                    Ok(rep) => {
                        solved += 1;
                        ratios.push(rep.ratio);
                        (
                            rep.status.to_string(),
                            rep.achieved.to_string(),
                            rep.lower_bound.to_string(),
                            format!("{:.4}", rep.ratio),
                            rep.horizon.to_string(),
                        )
                    }
                    Err(e) => {
                        failed = true;
                        let status = match exit_code(e) {
                            EXIT_INFEASIBLE => "infeasible",
                            EXIT_TIMEOUT => "timeout",
                            _ => "error",
                        };
                        (status.to_string(), String::new(), String::new(), String::new(), String::new())
                    }
                };
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{status},{achieved},{lb},{ratio},{horizon},{:.3}",
                    r.obstacles, r.robots, r.index, r.seed, r.seconds
                );
            }
            let mean = if ratios.is_empty() { f64::NAN } else { ratios.iter().sum::<f64>() / ratios.len() as f64 };
            let max = ratios.iter().copied().fold(f64::NAN, f64::max);
            let _ = writeln!(
                summary,
                "{pct:>9} {robots:>6} {:>7} {mean:>10.4} {max:>10.4} {:>8.3}",
                format!("{solved}/{}", rows.len()),
                seconds / rows.len().max(1) as f64
            );
            if failed {
                // Larger robot counts at this obstacle level are skipped.
                break;
            }
        }
    }
    match &a.output {
        Some(path) => write(path, &csv)?,
        None => print!("{csv}"),
    }
    print!("{summary}");
    Ok(EXIT_OK)
}

fn run_point(
    a: &BenchArgs,
    opts: &PlannerOptions,
    objective: ObjectiveKind,
    pct: f64,
    robots: usize,
    seeds: &[u64],
    jobs: usize,
) -> Vec<BenchRow> {
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(seeds.len()));
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(seeds.len()) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                let Some(&seed) = seeds.get(index) else { break };
                let started = Instant::now();
                let outcome = generate_grid_instance(a.rows, a.cols, pct / 100.0, robots, seed)
                    .and_then(|inst| solve_with_split(&inst, a.planner.split, objective, opts))
                    .map(|(_, report)| report);
                let row = BenchRow { obstacles: pct, robots, index, seed, outcome, seconds: started.elapsed().as_secs_f64() };
                rows.lock().unwrap().push(row);
            });
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by_key(|r| r.index);
    rows
}

fn render_cmd(a: &RenderArgs) -> Result<i32> {
    let inst = load_instance(&a.instance)?;
    let plan = load_plan(&a.solution)?;
    let violations = validate(&plan, &inst);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidPlan(format!("{} violation(s), first: {v}", violations.len())));
    }
    std::fs::create_dir_all(&a.output)?;
    for (t, doc) in render(&plan, &inst, a.format).iter().enumerate() {
        write(&a.output.join(format!("step_{t:04}.{}", a.format.extension())), doc)?;
    }
    Ok(EXIT_OK)
}
