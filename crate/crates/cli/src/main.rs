use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

/// Simulate, estimate and analyse growing feature-structure networks.
///
/// Any command accepts `--config FILE` before the command name; the file
/// holds `key = value` lines standing for `--key value` flags. Flags given
/// on the command line override the file.
#[derive(Debug, Parser)]
#[command(name = "featnet", version, propagate_version = true)]
struct Cli {
    /// Read flags from a `key = value` file.
    #[arg(long, value_name = "FILE", global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    Simulate(commands::simulate::Args),
    Estimate(commands::estimate::Args),
    Metrics(commands::metrics::Args),
    Ingest(commands::ingest::Args),
    Sweep(commands::sweep::Args),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Estimate(args) => commands::estimate::run(args),
        Command::Metrics(args) => commands::metrics::run(args),
        Command::Ingest(args) => commands::ingest::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
    }
}

fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let args = match config::expand_config(std::env::args_os().collect()) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("error: {}", one_line(&format!("{e:#}")));
            return ExitCode::FAILURE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // keep the message paragraph, drop the usage and help hints
            let rendered = e.render().to_string();
            let head: Vec<&str> = rendered.lines().take_while(|l| !l.trim().is_empty()).collect();
            let msg = one_line(&head.join(" "));
            eprintln!("error: {}", msg.trim_start_matches("error:").trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", one_line(&format!("{e:#}")));
            ExitCode::FAILURE
        }
    }
}
