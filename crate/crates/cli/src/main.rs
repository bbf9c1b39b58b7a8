//! `ecctree`: eccentricity spectra of trees from the command line.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ecctree::enumeration::{Execution, Statistic, TreeFilter, DEFAULT_CAP, HARD_CAP};

use commands::{CliError, EnumerateArgs, Options};
use report::{Format, Report};
use verify::Check;

#[derive(Debug, Parser)]
#[command(name = "ecctree", version, about = "Eccentricity matrices of trees: spectra, quotients, searches and checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for exhaustive searches (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Zero threshold for inertia, replacing the default 1e-8 * n * max entry.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest order accepted by exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// E-spectrum, inertia, energy, xi1 and xi2 of a graph.
    Spectrum {
        /// Edge-list file, or a family such as `star:n=5` or `odd:n=8,d=5,a=1,b=1`.
        input: String,
        /// Also print the eccentricity matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Re-check a result over a range of orders; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Orders to check, e.g. `5..11` (inclusive) or `9`.
        #[arg(value_parser = verify::parse_range)]
        range: Option<std::ops::RangeInclusive<usize>>,
    },
    /// Quotient matrix of an equitable partition and its characteristic polynomial.
    Quotient {
        /// Edge-list file.
        graph: PathBuf,
        /// Partition file: one cell per line.
        partition: PathBuf,
    },
    /// Rank all trees of order `n` by a spectral statistic.
    Enumerate {
        n: usize,
        /// xi1, xi2 or energy.
        #[arg(long, default_value = "energy", value_parser = parse_statistic)]
        statistic: Statistic,
        /// Number of trees to list.
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long)]
        exclude_star: bool,
        #[arg(long)]
        min_diameter: Option<usize>,
        #[arg(long)]
        max_diameter: Option<usize>,
    },
    /// Write the edge list of a family member.
    Export {
        family: String,
        /// Destination file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_statistic(s: &str) -> Result<Statistic, String> {
    s.parse().map_err(|e: ecctree::enumeration::EnumerationError| e.to_string())
}

enum Output {
    Report { report: Report, pass: bool },
    Raw(Option<String>),
}

fn options(cli: &Cli) -> Result<Options, CliError> {
    if cli.cap > HARD_CAP {
        return Err(CliError::Usage(format!("--cap {} exceeds the hard limit {HARD_CAP}", cli.cap)));
    }
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Usage(format!("--tol must be a finite non-negative number, got {t}")));
        }
    }
    if cli.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let exec = if cli.jobs == Some(1) { Execution::Sequential } else { Execution::Parallel };
    Ok(Options { tol: cli.tol, cap: cli.cap, exec })
}

fn dispatch(cli: &Cli, opts: &Options, mut report: Report) -> Result<Output, CliError> {
    let mut pass = true;
    match &cli.command {
        Command::Spectrum { input, matrix } => commands::spectrum(input, *matrix, opts, &mut report)?,
        Command::Verify { check, range } => pass = verify::verify(*check, range.clone(), opts, &mut report)?,
        Command::Quotient { graph, partition } => commands::quotient_cmd(graph, partition, &mut report)?,
        Command::Enumerate { n, statistic, top, exclude_star, min_diameter, max_diameter } => {
            let filter =
                TreeFilter { exclude_star: *exclude_star, min_diameter: *min_diameter, max_diameter: *max_diameter };
            let args = EnumerateArgs { n: *n, statistic: *statistic, top: *top, filter };
            commands::enumerate(&args, opts, &mut report)?;
        }
        Command::Export { family, output } => return Ok(Output::Raw(commands::export(family, output.as_deref())?)),
    }
    Ok(Output::Report { report, pass })
}

#[cfg(feature = "parallel")]
fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<T>(_jobs: Option<usize>, f: impl FnOnce() -> T) -> Result<T, CliError> {
    Ok(f())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let started = Instant::now();
    let opts = options(cli)?;
    let command = std::iter::once("ecctree".to_owned()).chain(std::env::args().skip(1)).collect::<Vec<_>>().join(" ");
    let report = Report::new(command);
    match in_pool(cli.jobs, || dispatch(cli, &opts, report))?? {
        Output::Report { mut report, pass } => {
            report.wall_time = started.elapsed().as_secs_f64();
            print!("{}", report.render(cli.format));
            Ok(pass)
        }
        Output::Raw(text) => {
            if let Some(text) = text {
                print!("{text}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
