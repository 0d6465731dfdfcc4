//! Command-line front end: compute pseudoinverses of matrix files, generate
//! benchmark matrices, run the timing/accuracy benchmark, and verify a
//! candidate pseudoinverse against the four Penrose conditions.
//!
//! Exit codes: 0 success (and all benchmark rows passing), 1 verification
//! failure, 2 usage or IO error, 3 algorithm convergence failure.

mod bench;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bench::{emit_report, run_bench, BenchSpec, ReportFormat};
use pinv_core::{
    is_valid_pinv, penrose_residuals, random_rank_deficient, AlgorithmConfig, Error,
    MatrixFamilySpec, PinvAlgorithm,
};

#[derive(Parser)]
#[command(name = "pinv", version, about = "Dense Moore-Penrose pseudoinverse toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the pseudoinverse of a matrix file.
    Pinv {
        /// Input file in matrix text format ("rows cols" header line).
        infile: PathBuf,
        #[arg(long, default_value = "geninv")]
        algorithm: PinvAlgorithm,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a matrix from the seeded rank-deficient benchmark family.
    Gen {
        #[arg(long)]
        n: usize,
        /// Row count; defaults to 2n.
        #[arg(long)]
        m: Option<usize>,
        /// Target rank; defaults to 7n/8.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the selected algorithms across sizes and verify every result.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [32usize, 64, 128, 256])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = PinvAlgorithm::ALL)]
        algorithms: Vec<PinvAlgorithm>,
        #[arg(long, value_delimiter = ',', default_values_t = [20060524u64])]
        seeds: Vec<u64>,
        /// Timed repetitions per cell; the median is reported and a warm-up
        /// run is discarded when 3 or more.
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value = "csv")]
        format: ReportFormat,
        /// Penrose residual bound for the pass column.
        #[arg(long, default_value_t = 2e-10)]
        bound: f64,
        /// Print detected rank and the condition estimate of L'L per cell
        /// to stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Check a candidate pseudoinverse against the four Penrose conditions.
    Verify {
        g_file: PathBuf,
        x_file: PathBuf,
        #[arg(long, default_value_t = 2e-10)]
        bound: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Pinv {
            infile,
            algorithm,
            out,
        } => {
            let g = io::read_matrix(&infile)?;
            let x = match algorithm.compute(&g, &AlgorithmConfig::default()) {
                Ok(x) => x,
                Err(e @ Error::NoConvergence { .. }) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(3));
                }
                Err(e) => return Err(e.to_string()),
            };
            match out {
                Some(path) => io::write_matrix(&path, &x)?,
                None => print!("{}", io::format_matrix(&x)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { n, m, rank, seed, out } => {
            let defaults = MatrixFamilySpec::benchmark_default(n, seed);
            let spec = MatrixFamilySpec {
                n,
                m: m.unwrap_or(defaults.m),
                rank: rank.unwrap_or(defaults.rank),
                seed,
            };
            let (g, _, _) = random_rank_deficient(&spec).map_err(|e| e.to_string())?;
            io::write_matrix(&out, &g)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            sizes,
            algorithms,
            seeds,
            reps,
            format,
            bound,
            verbose,
        } => {
            let spec = BenchSpec {
                sizes,
                algorithms,
                seeds,
                repetitions: reps,
                bound,
            };
            let report = run_bench(&spec, &AlgorithmConfig::default(), |cell| {
                if verbose {
                    eprintln!(
                        "n={} seed={}: detected rank {}, cond(L'L) ~ {:.3e}",
                        cell.n, cell.seed, cell.detected_rank, cell.lt_l_condition
                    );
                }
            })?;
            print!("{}", emit_report(&report, format));
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else if report.rows.iter().any(|r| r.residuals.is_none()) {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Verify {
            g_file,
            x_file,
            bound,
        } => {
            let g = io::read_matrix(&g_file)?;
            let x = io::read_matrix(&x_file)?;
            let report = penrose_residuals(&g, &x).map_err(|e| e.to_string())?;
            println!(
                "r1={:e} r2={:e} r3={:e} r4={:e} (bound {bound:e})",
                report.r1, report.r2, report.r3, report.r4
            );
            if is_valid_pinv(&report, bound) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
