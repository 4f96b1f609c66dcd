//! `confdirac`: derive and verify conformal powers of the Dirac operator.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 invalid flags,
//! 3 unreadable or malformed input file.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use conformal_dirac::exact::{parse_rational, Rational};
use conformal_dirac::par::Execution;
use conformal_dirac::special::Family;
use conformal_dirac::verify::{Fault, Profile};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "confdirac", version, about = "Exact conformal powers of the Dirac operator on Einstein manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "CONFDIRAC_FORMAT", default_value = "table")]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Spinor,
    Function,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Spinor => Family::Spinor,
            FamilyArg::Function => Family::Function,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    SignFlip,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

fn at_least(min: i64, s: &str) -> Result<i64, String> {
    let v: i64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if v < min {
        return Err(format!("must be at least {min}"));
    }
    Ok(v)
}

fn dimension(s: &str) -> Result<i64, String> {
    at_least(3, s)
}

fn positive(s: &str) -> Result<i64, String> {
    at_least(1, s)
}

fn sphere_dimension(s: &str) -> Result<i64, String> {
    at_least(2, s)
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solution-operator polynomials from the recurrence and the closed form.
    Qtilde {
        #[arg(long, value_parser = dimension)]
        n: i64,
        #[arg(long, value_parser = positive)]
        k: i64,
        #[arg(long, default_value_t = 3)]
        mmax: usize,
        #[arg(long, value_enum, default_value = "spinor")]
        family: FamilyArg,
    },
    /// Conformal power D_{2N+1} from the obstruction, the product formula
    /// and the linear factors.
    DerivePower {
        #[arg(long, value_parser = dimension)]
        n: i64,
        /// Normalized scalar curvature, an integer or p/q.
        #[arg(long = "J", value_parser = rational, allow_hyphen_values = true)]
        j: Rational,
        #[arg(long = "N")]
        big_n: usize,
    },
    /// Spectral action on the unit round sphere and its kernel.
    Sphere {
        #[arg(long, value_parser = sphere_dimension)]
        n: i64,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 3)]
        kmax: u64,
        /// Spectrum file with `k sign eigenvalue multiplicity` records.
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Runs every identity check over its parameter grid.
    VerifyAll {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        /// Run grid points on the calling thread only.
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Holographic deformation series and its closed form.
    Holographic {
        #[arg(long, value_parser = dimension)]
        n: i64,
        #[arg(long = "J", value_parser = rational, allow_hyphen_values = true)]
        j: Rational,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Natural-number presentation of D_{2N+1} in the M-sequence.
    Membership {
        #[arg(long = "N")]
        big_n: usize,
    },
    /// Both sides of the dual Hahn identification at one lattice point.
    DualHahn {
        #[arg(long, value_parser = dimension)]
        n: i64,
        #[arg(long, value_parser = positive)]
        k: i64,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        y: u64,
        #[arg(long, value_enum, default_value = "spinor")]
        family: FamilyArg,
    },
    /// Series of the Einstein deformation and derivatives of the Dirac family.
    Variation {
        #[arg(long, value_parser = dimension)]
        n: i64,
        #[arg(long = "J", value_parser = rational, allow_hyphen_values = true)]
        j: Rational,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

fn run(cmd: &Cmd) -> Result<report::RunReport, CliError> {
    match cmd {
        Cmd::Qtilde { n, k, mmax, family } => commands::qtilde(*n, *k, *mmax, (*family).into()),
        Cmd::DerivePower { n, j, big_n } => commands::derive_power(*n, j, *big_n),
        Cmd::Sphere { n, big_n, kmax, spectrum } => commands::sphere(*n, *big_n, *kmax, spectrum.as_ref()),
        Cmd::VerifyAll { profile, sequential, inject_fault } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let fault = inject_fault.map(|FaultArg::SignFlip| Fault::RecurrenceSignFlip);
            Ok(commands::verify(profile, exec, fault))
        }
        Cmd::Holographic { n, j, order } => commands::holographic(*n, j, *order),
        Cmd::Membership { big_n } => Ok(commands::membership(*big_n)),
        Cmd::DualHahn { n, k, m, y, family } => commands::dual_hahn(*n, *k, *m, *y, (*family).into()),
        Cmd::Variation { n, j, order } => commands::variation(*n, j, *order),
    }
}

/// Flag errors print the message followed by the usage line, exit 2.
fn usage_error(err: clap::Error) -> ExitCode {
    let _ = err.print();
    let usage = Cli::command().render_usage().to_string();
    if !err.to_string().contains("Usage:") {
        eprintln!("\n{usage}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => return usage_error(e),
    };
    let start = Instant::now();
    match run(&cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => usage_error(Cli::command().error(ErrorKind::ValueValidation, msg)),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
