use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use roulette_grover::classical::{self, ClassicalError, Mode};
use roulette_grover::harness::report::{ant_trace_csv, grover_trace_csv, write_text};
use roulette_grover::harness::{
    emit_report, monte_carlo_validation, run_scaling, HarnessError, Model, ReportFormat,
    SampleModel, ScalingConfig,
};
use roulette_grover::quantum::{self, AuditVerdict, QuantumError};

const EXIT_USAGE: u8 = 1;
const EXIT_FAILURE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "roulette-grover",
    version,
    about = "Roulette and Grover iteration-count experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterations of the ant routine needed to reach the threshold.
    Classical {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Write the per-iteration trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Grover iterations needed to reach the threshold on N = 2^log2n states.
    Quantum {
        #[arg(long)]
        log2n: u32,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Check the per-step amplitude gain of at least 1/sqrt(2N).
        #[arg(long)]
        audit_min_increase: bool,
    },
    /// Sweep N = 2^log2n over a range and fit log-log slopes.
    Scaling {
        #[arg(long)]
        log2n_min: u32,
        #[arg(long)]
        log2n_max: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        models: Vec<Model>,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: ReportFormat,
    },
    /// Compare sampled throw/measurement frequencies with the engine state.
    Sample {
        #[arg(long)]
        model: SampleModel,
        #[arg(long)]
        log2n: u32,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        target: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &HarnessError) -> u8 {
    match e {
        HarnessError::Io { .. } => EXIT_IO,
        HarnessError::Classical(ClassicalError::ThresholdNotReached { .. })
        | HarnessError::Quantum(QuantumError::ThresholdNotReached { .. })
        | HarnessError::Quantum(QuantumError::SqrtBoundExceeded { .. }) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn write_trace(path: Option<&Path>, text: impl FnOnce() -> String) -> Result<(), HarnessError> {
    match path {
        Some(p) => write_text(p, &text()),
        None => Ok(()),
    }
}

fn run(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Classical {
            n,
            mode,
            threshold,
            alpha,
            trace,
        } => {
            let hit = classical::iterations_to_threshold(n, alpha, threshold, mode)?;
            println!("model: classical-{mode}");
            println!("N: {n}");
            println!("k_half: {}", hit.k);
            println!("probability: {:.9}", hit.probability);
            write_trace(trace.as_deref(), || {
                let t = classical::ant_trace(n, alpha, mode, hit.k).expect("validated above");
                ant_trace_csv(&t)
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Quantum {
            log2n,
            threshold,
            trace,
            audit_min_increase,
        } => {
            let hit = quantum::iterations_to_threshold(log2n, threshold)?;
            let n = 1usize << log2n;
            println!("model: quantum");
            println!("N: {n}");
            println!("k_half: {}", hit.k);
            println!("probability: {:.9}", hit.probability);
            let mut code = ExitCode::SUCCESS;
            if audit_min_increase {
                if n < 8 {
                    println!("audit: n/a (needs N >= 8)");
                } else {
                    // the bound covers the rising phase, up to probability 1/2
                    let rising = quantum::iterations_to_threshold(log2n, 0.5)?;
                    match quantum::min_increase_audit(&rising.trace, n)? {
                        AuditVerdict::Pass => println!("audit: pass"),
                        AuditVerdict::Fail { step } => {
                            println!("audit: fail at step {step}");
                            code = ExitCode::from(EXIT_FAILURE);
                        }
                    }
                }
            }
            write_trace(trace.as_deref(), || grover_trace_csv(&hit.trace))?;
            Ok(code)
        }
        Command::Scaling {
            log2n_min,
            log2n_max,
            models,
            threshold,
            seed,
            out,
            format,
        } => {
            let config = ScalingConfig {
                log2n_min,
                log2n_max,
                models,
                threshold,
                seed,
            };
            let report = run_scaling(&config)?;
            emit_report(&report, format, &out)?;
            for fit in &report.fits {
                println!(
                    "{}: slope {:.9} intercept {:.9} r_squared {:.9} ({} points)",
                    fit.model, fit.slope, fit.intercept, fit.r_squared, fit.point_count
                );
            }
            for f in &report.failures {
                eprintln!("{} N={}: {}", f.model, f.n, f.reason);
            }
            let underfit = report.underfit_models(&config.model_order());
            if underfit.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                for m in underfit {
                    eprintln!("error: {m} has fewer than 3 fittable points");
                }
                Ok(ExitCode::from(EXIT_FAILURE))
            }
        }
        Command::Sample {
            model,
            log2n,
            k,
            samples,
            seed,
            target,
        } => {
            if !(1..=quantum::MAX_QUBITS).contains(&log2n) {
                return Err(QuantumError::QubitCount(log2n).into());
            }
            let n = 1usize << log2n;
            let r = monte_carlo_validation(model, n, k, samples, seed, target)?;
            println!("model: {}", r.model);
            println!("N: {}", r.n);
            println!("k: {}", r.k);
            println!("samples: {}", r.samples);
            println!("target: {}", r.target);
            println!(
                "expected_target_frequency: {:.9}",
                r.expected_target_frequency()
            );
            println!(
                "observed_target_frequency: {:.9}",
                r.observed_target_frequency()
            );
            println!("max_abs_z: {:.6} (sector {})", r.max_abs_z, r.max_z_sector);
            if r.n <= 64 {
                println!("sector,expected,observed,z");
                for j in 0..r.n {
                    println!(
                        "{},{:.9},{:.9},{:.6}",
                        j,
                        r.expected[j],
                        r.observed[j] as f64 / r.samples as f64,
                        r.z_score(j)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
