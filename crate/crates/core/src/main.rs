//! `qcpu` command-line front end.
//!
//! Exit status: 0 on success, 1 when a check or residual fails, 2 for bad
//! arguments or configurations (including dense caps).

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcpu::algorithms::deutsch::{deutsch_network, run_deutsch, DeutschFunction};
use qcpu::algorithms::grover::{grover_network, run_grover, GroverConfig};
use qcpu::algorithms::qft::{qft_network, QftConfig};
use qcpu::algorithms::shor::{
    run_shor, shor_hadamard_chain, shor_network, ShorConfig, ShorOutcome,
};
use qcpu::harness::report::{deutsch_report, grover_report, qft_report, shor_report, suite_report};
use qcpu::harness::{run_verification_suite, write_report, RunReport, SuiteName, SuiteOptions};
use qcpu::linalg::DEFAULT_TOLERANCE;
use qcpu::qcpu::{export_network, ExportFormat};
use qcpu::Error;

#[derive(Parser, Debug)]
#[command(
    name = "qcpu",
    version,
    about = "Auxiliary-qubit quantum networks on a dense simulator"
)]
struct Cli {
    /// Write a canonical JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Base numerical tolerance; declared check tolerances scale with it.
    #[arg(long, global = true, env = "QCPU_TOLERANCE", value_name = "EPS", default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Add wall-clock time to the JSON report (makes it nondeterministic).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify f: {0,1} -> {0,1} with one query.
    Deutsch {
        #[arg(long, value_parser = parse_function)]
        f: DeutschFunction,
    },
    /// Build the Fourier network on k qubits and check it.
    Qft {
        #[arg(long)]
        k: u32,
        /// Print the Fourier matrix.
        #[arg(long)]
        show_matrix: bool,
    },
    /// Factor N with base a by order finding.
    Shor(ShorArgs),
    /// Search for one marked item among 2^k.
    Grover(GroverArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Register sizes, `a..b` (inclusive).
        #[arg(long, value_parser = parse_range)]
        k_range: Option<RangeInclusive<u32>>,
        /// Corrupt one factor to confirm the harness notices.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Write a network as a text listing or a DOT graph.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct ShorArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: u64,
    /// First-register qubits; defaults to ceil(log2 N^2).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GroverArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    target: usize,
    /// Defaults to floor(pi/4 sqrt(2^k)).
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportAlgorithm {
    Deutsch,
    Qft,
    Grover,
    Shor,
    ShorHadamard,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long, value_enum)]
    algorithm: ExportAlgorithm,
    #[arg(long, value_parser = parse_format)]
    format: ExportFormat,
    #[arg(long)]
    out: PathBuf,
    /// Deutsch function.
    #[arg(long, value_parser = parse_function, default_value = "f1")]
    f: DeutschFunction,
    /// Register qubits (qft, grover) or first-register qubits (shor).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    target: usize,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, default_value_t = 15)]
    n: u64,
    #[arg(long, default_value_t = 7)]
    a: u64,
    /// Measured second-register residue for the shor network.
    #[arg(long, default_value_t = 1)]
    residue: u64,
}

fn parse_function(s: &str) -> Result<DeutschFunction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ExportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accepts `a..b` and `a..=b`, both inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in `{s}`"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in `{s}`"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range `{s}` must satisfy 1 <= a <= b"));
    }
    Ok(lo..=hi)
}

/// Failure modes of a subcommand, mapped to exit codes.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::DenseCapExceeded { .. }
            | Error::UnknownSuite(_)
            | Error::UnknownFormat(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotPowerOfTwo(_)
            | Error::Io { .. } => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        eprintln!("error: --tolerance must be a positive number");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let scale = cli.tolerance / DEFAULT_TOLERANCE;
    let report = match &cli.command {
        Command::Deutsch { f } => {
            let run = run_deutsch(*f)?;
            println!("{}", run.classification);
            deutsch_report(&run, scale)
        }
        Command::Qft { k, show_matrix } => {
            let cfg = QftConfig::new(*k)?;
            let report = qft_report(cfg, scale)?;
            println!("qft k={k} N={}", cfg.dim());
            print_residuals(&report);
            if *show_matrix {
                println!("{}", qcpu::linalg::fourier_matrix(cfg.shape)?);
            }
            report
        }
        Command::Shor(args) => {
            let cfg = ShorConfig::new(args.n, args.a, args.k)?;
            let run = run_shor(&cfg, args.seed)?;
            println!(
                "measured residue {} (p = {:.6}), sampled y = {} of {}",
                run.measured_residue,
                run.residue_probability,
                run.sampled_y,
                cfg.first_dim()
            );
            match &run.outcome {
                ShorOutcome::Factors(p, q) => println!("factors {p} {q}"),
                ShorOutcome::Failure(f) => println!("no factors this run: {f}"),
            }
            shor_report(&run, scale)
        }
        Command::Grover(args) => {
            let mut cfg = GroverConfig::new(args.k, args.target)?;
            if let Some(t) = args.iterations {
                cfg = cfg.with_iterations(t);
            }
            let run = run_grover(&cfg, args.seed)?;
            println!(
                "sampled {} after {} iterations, P(target) = {:.12}",
                run.sampled,
                cfg.iterations,
                run.success_probability()
            );
            grover_report(&run, scale)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            k_range,
            inject_fault,
        } => {
            let name: SuiteName = suite.parse()?;
            let opts = SuiteOptions {
                trials: *trials,
                seed: *seed,
                tolerance: cli.tolerance,
                k_range: k_range.clone(),
                inject_fault: *inject_fault,
            };
            let result = run_verification_suite(name, &opts)?;
            println!(
                "suite {}: {} cases, {} failures",
                result.suite,
                result.cases_run,
                result.failures.len()
            );
            for f in &result.failures {
                println!(
                    "FAIL {} residual {:e} tolerance {:e}",
                    f.case_id, f.residual, f.tolerance
                );
            }
            let report = suite_report(&result, *trials, *seed);
            finish(cli, report, start)?;
            return if result.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "{} verification failures",
                    result.failures.len()
                )))
            };
        }
        Command::Export(args) => export(args)?,
    };
    let violations = report.violations();
    finish(cli, report, start)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "residuals above tolerance: {}",
            violations.join(", ")
        )))
    }
}

fn print_residuals(report: &RunReport) {
    for (name, value) in &report.residuals {
        println!("  {name}: {value:.3e}");
    }
}

fn finish(cli: &Cli, mut report: RunReport, start: Instant) -> Result<(), Failure> {
    if let Some(path) = &cli.json {
        if cli.timing {
            report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        write_report(&report, path)?;
    }
    Ok(())
}

fn export(args: &ExportArgs) -> Result<RunReport, Failure> {
    let text = match args.algorithm {
        ExportAlgorithm::Deutsch => export_network(&deutsch_network(args.f)?, args.format),
        ExportAlgorithm::Qft => export_network(
            &qft_network(QftConfig::new(args.k.unwrap_or(2))?)?,
            args.format,
        ),
        ExportAlgorithm::Grover => {
            let mut cfg = GroverConfig::new(args.k.unwrap_or(2), args.target)?;
            if let Some(t) = args.iterations {
                cfg = cfg.with_iterations(t);
            }
            export_network(&grover_network(&cfg)?, args.format)
        }
        ExportAlgorithm::Shor => {
            let cfg = ShorConfig::new(args.n, args.a, Some(args.k.unwrap_or(3)))?;
            export_network(&shor_network(&cfg, args.residue)?, args.format)
        }
        ExportAlgorithm::ShorHadamard => {
            let cfg = ShorConfig::new(args.n, args.a, Some(args.k.unwrap_or(3)))?;
            export_network(&shor_hadamard_chain(&cfg)?, args.format)
        }
    };
    write_text(&args.out, &text)?;
    println!("wrote {}", args.out.display());
    let algorithm = format!("{:?}", args.algorithm).to_lowercase();
    Ok(RunReport::new("export")
        .param("algorithm", algorithm)
        .param("format", format!("{:?}", args.format).to_lowercase())
        .param("bytes", text.len()))
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
