use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use spinor_pair::Qubit;
use spinor_pair_cli::bench::run_bench;
use spinor_pair_cli::commands::{self, Backend, Outcome, Representation};
use spinor_pair_cli::error::CliError;
use spinor_pair_cli::formats::{to_json, write_output};
use spinor_pair_cli::verify::{default_threads, run_suite, Suite};

/// Two-qubit pure states as pairs of local spinors.
#[derive(Debug, Parser)]
#[command(name = "spinor-pair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a state between amplitudes, angles and spinors.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        from: Representation,
        #[arg(long, value_enum)]
        to: Representation,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also evaluate the closed-form sine of gamma and report the difference.
        #[arg(long)]
        cross_check: bool,
    },
    /// Amplitudes to a spinor file.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a state under local Hamiltonian schedules.
    Evolve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        schedule1: Option<PathBuf>,
        #[arg(long)]
        schedule2: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        backend: Backend,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record concurrence and angles after every step (full backend).
        #[arg(long)]
        trace: bool,
        /// Rotate this qubit about its own Bloch axis and fit gamma(t) instead.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        drift_qubit: Option<u8>,
        #[arg(long, default_value_t = 1.0)]
        energy: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        duration: f64,
    },
    /// Run property suites and report worst-case deviations.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Worker threads (default: all available).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Time the full and separable backends.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw random states.
    Sample {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        fixed_chi: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))
}

fn read_opt(path: Option<&PathBuf>) -> Result<Option<String>, CliError> {
    path.map(|p| read(p)).transpose()
}

fn emit(outcome: Outcome, out: Option<&Path>) -> Result<u8, CliError> {
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    write_output(out, &outcome.text)?;
    Ok(outcome.exit_code as u8)
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Convert {
            input,
            from,
            to,
            out,
            cross_check,
        } => emit(
            commands::convert(&read(&input)?, from, to, cross_check)?,
            out.as_deref(),
        ),
        Command::Decompose { input, out } => {
            emit(commands::decompose_cmd(&read(&input)?)?, out.as_deref())
        }
        Command::Evolve {
            input,
            schedule1,
            schedule2,
            backend,
            out,
            trace,
            drift_qubit,
            energy,
            points,
            duration,
        } => {
            let state = read(&input)?;
            let outcome = match drift_qubit {
                Some(q) => {
                    let qubit =
                        Qubit::try_from(q).map_err(|q| CliError::parse(format!("no qubit {q}")))?;
                    commands::drift(&state, qubit, energy, points, duration)?
                }
                None => {
                    let s1 = read_opt(schedule1.as_ref())?;
                    let s2 = read_opt(schedule2.as_ref())?;
                    commands::evolve(&state, s1.as_deref(), s2.as_deref(), backend, trace)?
                }
            };
            emit(outcome, out.as_deref())
        }
        Command::Verify {
            suite,
            trials,
            seed,
            threads,
        } => {
            if trials == 0 {
                return Err(CliError::parse("--trials must be at least 1"));
            }
            let report = run_suite(suite, trials, seed, threads.unwrap_or_else(default_threads));
            print!("{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Bench {
            steps,
            trials,
            seed,
            out,
        } => {
            if steps == 0 || trials == 0 {
                return Err(CliError::parse("--steps and --trials must be at least 1"));
            }
            let report = run_bench(steps, trials, seed);
            if report.timing == "LOW_CONFIDENCE" {
                eprintln!("warning: {steps} steps is too few for stable timing");
            }
            write_output(out.as_deref(), &to_json(&report))?;
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Sample {
            count,
            seed,
            fixed_chi,
            out,
        } => emit(commands::sample(count, seed, fixed_chi)?, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            print!("{}", CliError::parse(e.kind().to_string()).to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            print!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
