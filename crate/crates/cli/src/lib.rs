//! `bandharvest` command-line front end.
//!
//! Each subcommand evaluates one parameter sweep and writes it as CSV with
//! `#key=value` metadata, or as a single JSON document. Settings may also
//! come from a `key=value` file passed with `--config`; flags given on the
//! command line win.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use bandharvest_core::{Error, SweepResult};
use clap::{Args, Parser, Subcommand};

use crate::commands::*;
use crate::output::{encode, Format};

pub const THREADS_ENV: &str = "BANDHARVEST_THREADS";

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTATION: u8 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    fn kind(&self) -> &'static str {
        if self.code == EXIT_COMPUTATION {
            "computation"
        } else {
            "usage"
        }
    }
}

/// Single line: `bandharvest: error: kind=<usage|computation> code=<n>: <message>`.
impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = self.message.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "bandharvest: error: kind={} code={}: {msg}", self.kind(), self.code)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_computational() { EXIT_COMPUTATION } else { EXIT_USAGE };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// File of `key=value` lines using the flag names as keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "bandharvest", version, about = "Detector response and entanglement harvesting sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Excitation probability against gap for several bandlimits.
    #[command(args_override_self = true)]
    PdSweep {
        #[command(flatten)]
        args: PdSweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Negativity over separation and bandlimit.
    #[command(args_override_self = true)]
    NegativityMap {
        #[command(flatten)]
        args: NegativityMapArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Negativity against bandlimit at fixed separations.
    #[command(args_override_self = true)]
    NegativityVsLambda {
        #[command(flatten)]
        args: NegativityVsLambdaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Negativity against separation at one bandlimit.
    #[command(args_override_self = true)]
    NegativityVsS {
        #[command(flatten)]
        args: NegativityVsSArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gap of maximal excitation against bandlimit.
    #[command(args_override_self = true)]
    OmegaCrit {
        #[command(flatten)]
        args: OmegaCritArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Design a detector array that harvests only below a threshold bandlimit.
    #[command(args_override_self = true)]
    ArrayDesign {
        #[command(flatten)]
        args: ArrayDesignArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Delta-switched excitation probability against bandlimit.
    #[command(args_override_self = true)]
    DeltaPa {
        #[command(flatten)]
        args: DeltaPaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bandlimit sensitivity against smearing width.
    #[command(args_override_self = true)]
    LambdaMax {
        #[command(flatten)]
        args: LambdaMaxArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Commutator phase and excitation probabilities of a delta-switched pair.
    #[command(args_override_self = true)]
    DeltaThetaPb {
        #[command(flatten)]
        args: DeltaThetaPbArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    pub fn execute(&self) -> Result<(SweepResult, &OutputArgs), CliError> {
        let (table, output) = match self {
            Command::PdSweep { args, output } => (cmd_pd_sweep(args), output),
            Command::NegativityMap { args, output } => (cmd_negativity_map(args), output),
            Command::NegativityVsLambda { args, output } => (cmd_negativity_vs_lambda(args), output),
            Command::NegativityVsS { args, output } => (cmd_negativity_vs_s(args), output),
            Command::OmegaCrit { args, output } => (cmd_omega_crit(args), output),
            Command::ArrayDesign { args, output } => (cmd_array_design(args), output),
            Command::DeltaPa { args, output } => (cmd_delta_pa(args), output),
            Command::LambdaMax { args, output } => (cmd_lambda_max(args), output),
            Command::DeltaThetaPb { args, output } => (cmd_delta_theta_pb(args), output),
        };
        Ok((table?, output))
    }
}

/// Worker count from the environment value; `0` or absent means automatic.
pub fn thread_count(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => {
            v.parse().map_err(|_| CliError::usage(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'")))
        }
    }
}

/// Outcome of parsing: either a command to run, or text clap wants shown
/// (help, version) with a success status.
pub enum Parsed {
    Run(Cli),
    Display(String),
}

pub fn parse(argv: Vec<String>) -> Result<Parsed, CliError> {
    let argv = config::merge(argv)?;
    match Cli::try_parse_from(argv) {
        Ok(cli) => Ok(Parsed::Run(cli)),
        Err(e) if !e.use_stderr() => Ok(Parsed::Display(e.render().to_string())),
        Err(e) => {
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            Err(CliError::usage(first.trim_start_matches("error: ")))
        }
    }
}

/// Run a parsed command on a pool of `threads` workers and write its output.
pub fn run(cli: &Cli, threads: usize) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError { code: EXIT_COMPUTATION, message: e.to_string() })?;
    let (table, output) = pool.install(|| cli.command.execute())?;
    let text = encode(&table, output.format)?;
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write output: {e}"))),
    }
}
