mod commands;
mod report;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zeta_core::curve::CurveError;
use zeta_core::driver::{ErrorKind, ZetaError};
use zeta_core::order::OrderError;
use zeta_core::sampling::SamplingError;
use zeta_core::weil::WeilError;

use commands::{ClassnumArgs, CountsArgs, OrderArgs, RecoverArgs, ResultantsArgs, SampleArgs, ZetaArgs};

/// Zeta functions of curves over finite fields from class-group orders.
#[derive(Parser, Debug)]
#[command(name = "zeta", version)]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute P(t) for a curve file end to end.
    Zeta(ZetaArgs),
    /// Brute-force point counts over F_{q^n}.
    Counts(CountsArgs),
    /// Class numbers #Cl(C_n) from a Weil polynomial or a curve file.
    Classnum(ClassnumArgs),
    /// Cyclic resultants Res(P(t), t^n - 1).
    Resultants(ResultantsArgs),
    /// Recover P(t) from class-number sequence files.
    Recover(RecoverArgs),
    /// Draw random prime divisors of a given degree.
    Sample(SampleArgs),
    /// Order of the class group of C_n with a chosen oracle.
    Order(OrderArgs),
}

/// A user-facing input problem with no structured source.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 2,
        ErrorKind::Budget => 3,
        ErrorKind::Invariant => 4,
    }
}

fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<ZetaError>() {
            return exit_code(e.kind());
        }
        if cause.is::<InputError>() || cause.is::<std::io::Error>() || cause.is::<WeilError>() && is_weil_input(cause) {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<CurveError>() {
            return match e {
                CurveError::Budget { .. } => 3,
                CurveError::WeilViolation { .. } => 4,
                _ => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<SamplingError>() {
            return match e {
                SamplingError::Hypothesis { .. } => 2,
                SamplingError::Exhausted(_) => 3,
                _ => 4,
            };
        }
        if let Some(e) = cause.downcast_ref::<OrderError>() {
            return match e {
                OrderError::InvalidMode(_) => 2,
                OrderError::Ambiguous(_)
                | OrderError::ClosureBudget(_)
                | OrderError::BoundExceeded(_)
                | OrderError::RegisterTooSmall { .. }
                | OrderError::QuantumFailed(_) => 3,
                _ => 4,
            };
        }
        if cause.is::<WeilError>() {
            return 4;
        }
    }
    4
}

fn is_weil_input(e: &(dyn std::error::Error + 'static)) -> bool {
    matches!(
        e.downcast_ref::<WeilError>(),
        Some(WeilError::Parse { .. } | WeilError::Invalid(_) | WeilError::SequenceTooShort { .. })
    )
}

/// The error chain without causes already quoted by their parent.
fn message(err: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in err.chain() {
        let s = cause.to_string();
        if out.ends_with(&s) {
            continue;
        }
        if !out.is_empty() {
            out.push_str(": ");
        }
        out.push_str(&s);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Zeta(a) => commands::zeta(a),
        Command::Counts(a) => commands::counts(a),
        Command::Classnum(a) => commands::classnum(a),
        Command::Resultants(a) => commands::resultants(a),
        Command::Recover(a) => commands::recover(a),
        Command::Sample(a) => commands::sample(a),
        Command::Order(a) => commands::order(a),
    };
    match out {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", message(&e));
            ExitCode::from(classify(&e))
        }
    }
}
