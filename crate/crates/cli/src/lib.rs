//! Batch front end for the `frobchi` engine: reads a TOML problem file,
//! runs one command and prints a JSON report or an aligned table.

pub mod commands;
pub mod error;
pub mod problem;
pub mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{CommandKind, Flags, Report};
pub use error::CliError;
pub use problem::Problem;
pub use render::Format;

#[derive(Parser, Debug)]
#[command(name = "frobchi", version, about = "Frobenius-twisted Euler characteristics and Dutta multiplicities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and check the problem file.
    Validate(CommonArgs),
    /// Lengths and dimensions of H_i(X ⊗ Y).
    Homology(CommonArgs),
    /// χ(X, Y).
    Chi(CommonArgs),
    /// χ(F^e X, Y) for e = 0..=emax.
    ChiSeries(CommonArgs),
    /// Dutta multiplicity from the eigencomponent decomposition.
    Dutta(CommonArgs),
    /// Full eigencomponent decomposition of the Frobenius series.
    Decompose(CommonArgs),
    /// Bracket for the vanishing dimension of X.
    Vdim(CommonArgs),
    /// Whether χ(F^e X, Y) = p^(e t) χ(X, Y) for every probe Y.
    FixedPoint(CommonArgs),
    /// Whether χ(F^e X) = p^(e dim R) χ(X).
    Numvan(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Problem file.
    pub file: PathBuf,
    #[arg(long = "X")]
    pub x: Option<String>,
    /// Second argument; a module, a complex or `R` (the default).
    #[arg(long = "Y")]
    pub y: Option<String>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub emax: Option<u32>,
    /// Number of components: `auto` or an integer.
    #[arg(long)]
    pub u: Option<String>,
    /// Comma-separated probe names.
    #[arg(long, value_delimiter = ',')]
    pub probes: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Table,
}

impl Command {
    fn split(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Command::Validate(a) => (CommandKind::Validate, a),
            Command::Homology(a) => (CommandKind::Homology, a),
            Command::Chi(a) => (CommandKind::Chi, a),
            Command::ChiSeries(a) => (CommandKind::ChiSeries, a),
            Command::Dutta(a) => (CommandKind::Dutta, a),
            Command::Decompose(a) => (CommandKind::Decompose, a),
            Command::Vdim(a) => (CommandKind::Vdim, a),
            Command::FixedPoint(a) => (CommandKind::FixedPoint, a),
            Command::Numvan(a) => (CommandKind::Numvan, a),
        }
    }
}

/// Runs a command on problem text.
pub fn execute(kind: CommandKind, text: &str, flags: &Flags) -> Result<Report, CliError> {
    let problem = Problem::parse(text)?;
    commands::run(kind, &problem, flags)
}

/// Runs a parsed command line; returns the text for stdout and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let (kind, args) = cli.command.split();
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    let flags = Flags {
        x: args.x.clone(),
        y: args.y.clone(),
        e: args.e,
        emax: args.emax,
        u: args.u.clone(),
        probes: args.probes.clone(),
    };
    let result = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::parse("io", format!("cannot read {}: {e}", args.file.display())))
        .and_then(|text| execute(kind, &text, &flags));
    match result {
        Ok(report) => (render::render(&report, format), 0),
        Err(err) => (render::render_error(&err, format), err.exit_code()),
    }
}
