use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use jrtower_cli::output::Format;
use jrtower_cli::{commands, Command, Outcome};
use jrtower_core::Effort;

#[derive(Parser, Debug)]
#[command(name = "jrtower")]
#[command(about = "Exact checks for the Julia Robinson number of nested square-root towers")]
#[command(version)]
struct Cli {
    /// Emit a versioned JSON document instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Write scan results as CSV to FILE (resumable through FILE.journal)
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Tower depth for strictness, certificates and spot checks
    #[arg(long, global = true, default_value_t = 5)]
    depth: u32,

    /// Factoring effort: quick | default | thorough
    #[arg(long, global = true, default_value = "default", value_parser = parse_effort)]
    effort: Effort,

    /// Deterministic rho schedule; always on, accepted for explicitness
    #[arg(long, global = true)]
    seedless: bool,

    /// Worker threads for scan (defaults to the number of CPUs)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

fn parse_effort(level: &str) -> Result<Effort, String> {
    Effort::from_level(level).ok_or_else(|| format!("unknown effort level '{level}'"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let format = if cli.json { Format::Json } else { Format::Text };
    let opts = commands::Options {
        format,
        depth: cli.depth,
        effort: cli.effort,
        out: cli.out,
        jobs: cli.jobs,
    };
    match commands::run(&cli.command, &opts) {
        Ok(Outcome::Conclusive) => ExitCode::SUCCESS,
        Ok(Outcome::Inconclusive) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
