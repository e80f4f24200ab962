//! `invgrass`: run invariant-subspace computations described by a JSON problem
//! file.
//!
//! Exit codes: 0 success, 2 validation failure, 3 negative verdict that rests
//! on a sampled lower bound, 4 malformed input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use invgrass_cli::commands::run_task;
use invgrass_cli::error::CliError;
use invgrass_cli::problem::{parse_problem, Loaded, TaskArgs};
use invgrass_cli::report::{Report, TaskResult};
use invgrass_cli::{suite, timed};

const DEFAULT_SEED: u64 = 0xB16A55;

#[derive(Parser, Debug)]
#[command(name = "invgrass", version, about = "Invariant subspaces, invariant wedge spans and two-sided vector spaces, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Problem file (JSON, schema 1).
    #[arg(long, global = true)]
    problem: Option<PathBuf>,
    /// Seed for sampled routes; decimal or 0x-prefixed hex.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include per-task wall-clock times (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the subspace closed under the algebra?
    CheckInvariant(PointArgs),
    /// Is the Plücker vector of the subspace in the invariant wedge span?
    CheckGenerated(PointArgs),
    /// Full verdict: invariant, generated, and both.
    CheckH(PointArgs),
    /// The invariant wedge span for m-dimensional subspaces.
    LambdaA(LambdaArgs),
    /// Tangent dimensions at a point over the base field.
    Tangent(PointArgs),
    /// Locate a subspace in the chart atlas, or describe the atlas.
    Charts(ChartArgs),
    /// Classify the two-sided structure; with --subspace, classify a point.
    Classify(ClassifyArgs),
    /// Find an element separating two products of embeddings.
    Separate(SeparateArgs),
    /// Enumerate all subspaces over a prime field.
    OracleFf(OracleArgs),
    /// Run the built-in reference suite, or the tasks of --problem.
    #[command(alias = "verify-suite")]
    VerifyPaper,
}

#[derive(Args, Debug)]
struct RouteArgs {
    /// grid, sampled or enumerate; chosen automatically when omitted.
    #[arg(long)]
    route: Option<String>,
    /// Idle rounds before sampling stops.
    #[arg(long)]
    rounds: Option<usize>,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long)]
    subspace: String,
    #[command(flatten)]
    route: RouteArgs,
}

#[derive(Args, Debug)]
struct LambdaArgs {
    #[arg(long)]
    m: usize,
    #[command(flatten)]
    route: RouteArgs,
}

#[derive(Args, Debug)]
struct ChartArgs {
    #[arg(long)]
    subspace: Option<String>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Certificate set name.
    #[arg(long, default_value = "default")]
    certificates: String,
    #[arg(long)]
    subspace: Option<String>,
    /// Multiplicity per component, comma separated.
    #[arg(long, value_delimiter = ',')]
    rank: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct SeparateArgs {
    /// Embedding names, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    embeddings: Vec<String>,
    /// 1-based indices into the embeddings, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    multiset: Vec<usize>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    m: usize,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckInvariant(_) => "check-invariant",
            Command::CheckGenerated(_) => "check-generated",
            Command::CheckH(_) => "check-h",
            Command::LambdaA(_) => "lambda-a",
            Command::Tangent(_) => "tangent",
            Command::Charts(_) => "charts",
            Command::Classify(_) => "classify",
            Command::Separate(_) => "separate",
            Command::OracleFf(_) => "oracle-ff",
            Command::VerifyPaper => "verify-paper",
        }
    }

    fn task_args(&self) -> TaskArgs {
        let point = |p: &PointArgs| TaskArgs {
            subspace: Some(p.subspace.clone()),
            route: p.route.route.clone(),
            rounds: p.route.rounds,
            ..TaskArgs::default()
        };
        match self {
            Command::CheckInvariant(p) | Command::CheckGenerated(p) | Command::CheckH(p) | Command::Tangent(p) => point(p),
            Command::LambdaA(l) => TaskArgs { m: Some(l.m), route: l.route.route.clone(), rounds: l.route.rounds, ..TaskArgs::default() },
            Command::Charts(c) => TaskArgs { subspace: c.subspace.clone(), ..TaskArgs::default() },
            Command::Classify(c) => TaskArgs {
                certificates: Some(c.certificates.clone()),
                subspace: c.subspace.clone(),
                rank: c.rank.clone(),
                ..TaskArgs::default()
            },
            Command::Separate(s) => TaskArgs {
                embeddings: Some(s.embeddings.clone()),
                multiset: Some(s.multiset.clone()),
                ..TaskArgs::default()
            },
            Command::OracleFf(o) => TaskArgs { m: Some(o.m), ..TaskArgs::default() },
            Command::VerifyPaper => TaskArgs::default(),
        }
    }
}

fn load(path: &PathBuf) -> Result<Loaded, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&src)?.load()
}

fn run(cli: &Cli) -> Report {
    let name = cli.command.name();
    let problem_label = cli.problem.as_ref().map(|p| p.display().to_string());
    if let Command::VerifyPaper = cli.command {
        let results = match &cli.problem {
            Some(path) => match std::fs::read_to_string(path) {
                Ok(src) => suite::run_file(&problem_label.clone().unwrap_or_default(), &src, cli.seed, cli.timings),
                Err(e) => vec![TaskResult::failure(name.into(), Value::Null, &CliError::Malformed(format!("cannot read {}: {e}", path.display())))],
            },
            None => suite::run_builtin(cli.seed, cli.timings),
        };
        return Report::new(name, problem_label, cli.seed, results);
    }
    let args = cli.command.task_args();
    let args_json = serde_json::to_value(&args).expect("arguments serialize");
    let result = match &cli.problem {
        None => TaskResult::failure(name.into(), args_json, &CliError::Malformed("--problem is required".into())),
        Some(path) => match load(path) {
            Err(e) => TaskResult::failure(name.into(), args_json, &e),
            Ok(loaded) => timed(cli.timings, || {
                TaskResult::from_outcome(name.into(), args_json.clone(), run_task(&loaded, name, &args, cli.seed), None)
            }),
        },
    };
    Report::new(name, problem_label, cli.seed, vec![result])
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let report = run(&cli);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code)
}
