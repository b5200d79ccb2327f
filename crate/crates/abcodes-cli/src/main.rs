//! abcodes: construct trace codes from almost bent and planar functions,
//! compute exact weight distributions and derived chains, and run the
//! verification suite against the closed-form tables.

mod commands;
mod verify_all;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "abcodes",
    version,
    about = "Linear codes from almost bent and planar functions: exact weight \
             distributions, dual/extension chains, designs, and secret-sharing \
             summaries, verified against closed-form tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code, enumerate its weight distribution, and compare it with
    /// the applicable closed form
    Construct(ConstructArgs),
    /// Report the dual / extended / dual-of-extended chain with parameters
    /// and distributions
    Analyze(ConstructArgs),
    /// Exhaustively verify the defining property of a catalog function
    VerifyFunction(FunctionArgs),
    /// Extract fixed-weight supports from a chain code and verify the design
    /// property
    Design(DesignArgs),
    /// Access-structure summary of the secret-sharing scheme on the dual of
    /// a constructed code
    Sharing(ConstructArgs),
    /// Run the whole verification suite and emit a machine-readable report
    VerifyAll(VerifyAllArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
pub struct FunctionArgs {
    /// Field characteristic (prime)
    #[arg(long)]
    pub p: u64,
    /// Extension degree
    #[arg(long)]
    pub m: usize,
    /// Catalog id: ab:gold, ab:kasami, ab:welch, ab:niho1, ab:niho2,
    /// ab:trace, planar:do, planar:cm, planar:dy
    #[arg(long)]
    pub func: String,
    /// Exponent parameter i (ab:gold, ab:kasami, ab:trace)
    #[arg(long)]
    pub i: Option<u32>,
    /// Exponent parameter t (planar:do)
    #[arg(long)]
    pub t: Option<u32>,
    /// Exponent parameter k (planar:cm)
    #[arg(long)]
    pub k: Option<u32>,
    /// Field-element encoding of u (planar:dy)
    #[arg(long)]
    pub u: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Subgroup rank for the canonical subgroup
    #[arg(long)]
    pub r: Option<usize>,
    /// "canonical" (with --r) or comma-separated basis encodings
    #[arg(long, default_value = "canonical")]
    pub subgroup: String,
}

#[derive(Args)]
pub struct DesignArgs {
    #[command(flatten)]
    pub construct: ConstructArgs,
    /// Codeword weight whose supports form the blocks
    #[arg(long)]
    pub weight: usize,
    /// Design strength to verify; defaults to 3 when r = m (binary), else 1
    #[arg(long)]
    pub strength: Option<usize>,
}

#[derive(Args)]
pub struct VerifyAllArgs {
    /// Restrict the suite to one characteristic
    #[arg(long)]
    pub p: Option<u64>,
    /// Restrict the suite to one extension degree
    #[arg(long)]
    pub m: Option<usize>,
    /// Corrupt one closed-form multiplicity and require exactly one failure
    #[arg(long)]
    pub self_test: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A failure with a stable identifier and the exit code it maps to.
pub struct CliFailure {
    pub name: &'static str,
    pub message: String,
    pub exit: u8,
}

impl CliFailure {
    pub fn usage(name: &'static str, message: impl Into<String>) -> Self {
        CliFailure {
            name,
            message: message.into(),
            exit: EXIT_USAGE,
        }
    }
}

fn failure_exit(name: &'static str) -> u8 {
    match name {
        "FieldTooLarge" | "CodeTooLarge" | "TooLarge" => EXIT_RESOURCE_CAP,
        "DualNotMinimal" | "NonIntegralResult" | "NonIntegralLambda" | "WeightNotRealized"
        | "BlockCountMismatch" => EXIT_VERIFICATION_FAILED,
        _ => EXIT_USAGE,
    }
}

impl From<abcodes::GaloisError> for CliFailure {
    fn from(e: abcodes::GaloisError) -> Self {
        let name = e.name();
        CliFailure {
            name,
            message: e.to_string(),
            exit: failure_exit(name),
        }
    }
}

impl From<abcodes::FunctionError> for CliFailure {
    fn from(e: abcodes::FunctionError) -> Self {
        let name = e.name();
        CliFailure {
            name,
            message: e.to_string(),
            exit: failure_exit(name),
        }
    }
}

impl From<abcodes::CodesError> for CliFailure {
    fn from(e: abcodes::CodesError) -> Self {
        let name = e.name();
        CliFailure {
            name,
            message: e.to_string(),
            exit: failure_exit(name),
        }
    }
}

impl From<abcodes::DesignError> for CliFailure {
    fn from(e: abcodes::DesignError) -> Self {
        let name = e.name();
        CliFailure {
            name,
            message: e.to_string(),
            exit: failure_exit(name),
        }
    }
}

impl From<abcodes::SharingError> for CliFailure {
    fn from(e: abcodes::SharingError) -> Self {
        let name = e.name();
        CliFailure {
            name,
            message: e.to_string(),
            exit: failure_exit(name),
        }
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure {
            name: "Io",
            message: e.to_string(),
            exit: EXIT_USAGE,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => commands::construct(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::VerifyFunction(args) => commands::verify_function(&args),
        Command::Design(args) => commands::design(&args),
        Command::Sharing(args) => commands::sharing(&args),
        Command::VerifyAll(args) => verify_all::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error[{}]: {}", failure.name, failure.message);
            ExitCode::from(failure.exit)
        }
    }
}
