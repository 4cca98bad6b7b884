//! `rdsforge` — construct, analyze, and sweep vectorial functions over
//! GF(2^n).
//!
//! Exit codes: 0 = ran to completion (verdicts live in the report),
//! 1 = verification failure or I/O error, 2 = invalid flags or parameters.

mod analyze;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rdsforge::sweep::{resume_sweep, run_sweep, SweepJob};
use rdsforge::verify::verify_paper;
use rdsforge::{CheckKind, Error as CoreError};

/// Thread-count default comes from --jobs, then RDSFORGE_THREADS, then the
/// per-command default.
const THREADS_ENV: &str = "RDSFORGE_THREADS";

#[derive(Parser)]
#[command(
    name = "rdsforge",
    version,
    about = "Exact analysis of vectorial functions over binary fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a function (family or custom table) and run verdict pipelines
    Analyze(Box<analyze::AnalyzeArgs>),
    /// Re-derive the defining statements of every implemented family
    VerifyPaper(VerifyArgs),
    /// Run or resume a parameter-grid sweep described by a job file
    Sweep(SweepArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest field degree to verify, 3..=13
    #[arg(long = "n-max", default_value_t = 7)]
    n_max: u32,
    /// Emit the per-theorem results as JSON
    #[arg(long)]
    json: bool,
    /// Worker threads (default: RDSFORGE_THREADS or 1)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep job file (JSON)
    #[arg(long)]
    job: PathBuf,
    /// Keep existing records in the job's output file and fill the gaps
    #[arg(long)]
    resume: bool,
    /// Worker threads (default: RDSFORGE_THREADS or all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Confirm full APN passes on fields larger than 2^16
    #[arg(long)]
    allow_large: bool,
}

/// Error with the exit code it maps to.
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }

    pub fn runtime(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::Io(_) => CliError::runtime(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze::run(*args),
        Command::VerifyPaper(args) => run_verify(args),
        Command::Sweep(args) => run_sweep_cmd(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("rdsforge: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

/// Builds a rayon pool of the resolved size and runs `f` inside it.
pub fn with_thread_pool<T: Send>(
    jobs: Option<usize>,
    default: usize,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    let threads = jobs
        .or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        })
        .unwrap_or(default)
        .max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::runtime(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let reports = with_thread_pool(args.jobs, 1, || verify_paper(args.n_max))??;
    let all_passed = reports.iter().all(|r| r.passed);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports)
                .map_err(|e| CliError::runtime(e.to_string()))?
        );
    } else {
        for r in &reports {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let detail = r
                .detail
                .as_ref()
                .map(|d| format!(" — {d}"))
                .unwrap_or_default();
            println!(
                "{status}  {:<66} [{}] ({} instances){detail}",
                r.name, r.scope, r.instances
            );
        }
        let (passed, total) = (
            reports.iter().filter(|r| r.passed).count(),
            reports.len(),
        );
        println!("{passed}/{total} theorem instances passed");
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_sweep_cmd(args: SweepArgs) -> Result<ExitCode, CliError> {
    let job = SweepJob::from_file(&args.job).map_err(|e| match e {
        CoreError::Io(_) => CliError::runtime(format!("{}: {e}", args.job.display())),
        _ => CliError::usage(format!("{}: {e}", args.job.display())),
    })?;
    let wants_apn = job.checks.contains(&CheckKind::Apn);
    if wants_apn && job.n_values.iter().any(|&n| n > 16) && !args.allow_large {
        return Err(CliError::usage(
            "full APN checks above n = 16 cost 2^(2n) work; pass --allow-large to confirm",
        ));
    }
    let default_threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let progress = |done: usize, total: usize| {
        let step = (total / 20).max(1);
        if done == total || done.is_multiple_of(step) {
            eprintln!("sweep: {done}/{total} grid points");
        }
    };
    let records = with_thread_pool(args.jobs, default_threads, || {
        if args.resume {
            resume_sweep(&job, &job.output.clone(), progress)
        } else {
            run_sweep(&job, progress)
        }
    })??;
    eprintln!(
        "sweep: {} records written to {}",
        records.len(),
        job.output.display()
    );
    Ok(ExitCode::SUCCESS)
}
