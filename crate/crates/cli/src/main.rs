//! Command-line front end for the combfield engine.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, EnumerateOptions, VerifyOptions};
use output::{Format, Status};

#[derive(Debug, Parser)]
#[command(name = "combfield", version, about = "Exact perturbative series and their combinatorial checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Partition function (or free energy) coefficients of a model.
    Series {
        /// Built-in model name (phi4, partitions, bell-squared) or path to a JSON model file.
        #[arg(long)]
        model: String,
        #[arg(long)]
        eps_order: usize,
        #[arg(long, default_value_t = 0)]
        g_order: usize,
        /// Report ln Z instead of Z.
        #[arg(long)]
        connected: bool,
    },
    /// Integer sequences: bell, stirling, partitions, bell-squared.
    Seq {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
    },
    /// Cross-checks: bell-squared, stirling-model, topology-identity, oracle-agreement, exp-log.
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        n: usize,
        /// Seed for the random models used by oracle-agreement.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random models used by oracle-agreement.
        #[arg(long, default_value_t = 20)]
        models: usize,
        #[arg(long, default_value_t = 2)]
        g_order: usize,
    },
    /// Enumerate preorders, posets or Feynman diagrams.
    Enumerate {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        /// Count isomorphism classes instead of labelled structures.
        #[arg(long)]
        unlabelled: bool,
        /// List every structure, not just the count.
        #[arg(long)]
        representatives: bool,
        /// Raise the size cap by one point (slow).
        #[arg(long)]
        allow_large: bool,
        /// Model whose diagrams are enumerated.
        #[arg(long, default_value = "bell-squared")]
        model: String,
    },
}

fn run(cli: &Cli) -> Result<output::OutputRecord, CliError> {
    match &cli.command {
        Command::Series { model, eps_order, g_order, connected } => {
            commands::series(model, *eps_order, *g_order, *connected)
        }
        Command::Seq { name, n } => commands::seq(name, *n),
        Command::Verify { check, n, seed, models, g_order } => commands::verify(
            check,
            *n,
            &VerifyOptions { seed: *seed, models: *models, g_order: *g_order },
        ),
        Command::Enumerate { structure, n, connected, unlabelled, representatives, allow_large, model } => {
            if *allow_large {
                log::warn!("size cap raised; enumeration may take minutes");
            }
            commands::enumerate(
                structure,
                *n,
                &EnumerateOptions {
                    connected: *connected,
                    unlabelled: *unlabelled,
                    representatives: *representatives,
                    allow_large: *allow_large,
                    model,
                },
            )
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rec) => {
            print!("{}", rec.render(cli.format));
            if rec.status == Status::Fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
