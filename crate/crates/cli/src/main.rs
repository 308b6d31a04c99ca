use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kmu_cli::descriptor::{parse_z_choices, ModelDescriptor, SubmanifoldBlock, SweepDescriptor};
use kmu_cli::pipeline::{cmd_deform, cmd_submanifold, cmd_sweep, cmd_verify, dump_tables};
use kmu_core::scalar::parse_rational;
use serde::Serialize;

/// Exact verification of Lie-group (kappa, mu)-space models.
#[derive(Debug, Parser)]
#[command(name = "kmu", version)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    X,
    Y,
    Mixed,
    Diag,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the model, its contact structure and every (kappa, mu) identity.
    Verify { descriptor: PathBuf },
    /// Deform by a positive rational and re-derive the invariants.
    Deform {
        descriptor: PathBuf,
        #[arg(long)]
        a: Option<String>,
    },
    /// Analyze one Legendrian leaf.
    Submanifold {
        descriptor: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "z-choices", value_delimiter = ',')]
        z_choices: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
    },
    /// Verify every point of a rational (alpha, beta) grid.
    Sweep { grid: PathBuf },
    /// Export the non-zero connection and curvature components.
    DumpTables { descriptor: PathBuf },
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    let mut text = if cli.compact { serde_json::to_string(value)? } else { serde_json::to_string_pretty(value)? };
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

/// Runs the command; `Ok(true)` iff every record passed.
fn run(cli: &Cli) -> Result<bool> {
    let load = |path: &PathBuf| ModelDescriptor::load(path)?.resolve();
    match &cli.command {
        Command::Verify { descriptor } => {
            let report = cmd_verify(&load(descriptor)?)?;
            emit(cli, &report)?;
            Ok(report.pass)
        }
        Command::Deform { descriptor, a } => {
            let a = a.as_deref().map(parse_rational).transpose().context("--a")?;
            let report = cmd_deform(&load(descriptor)?, a.as_ref())?;
            emit(cli, &report)?;
            Ok(report.pass)
        }
        Command::Submanifold { descriptor, kind, k, z_choices, c, d } => {
            let desc = load(descriptor)?;
            if let Some(zs) = z_choices {
                parse_z_choices(zs)?;
            }
            let block = SubmanifoldBlock {
                kind: match kind {
                    Kind::X => "x",
                    Kind::Y => "y",
                    Kind::Mixed => "mixed",
                    Kind::Diag => "diag",
                }
                .to_string(),
                k: *k,
                z_choices: z_choices.clone(),
                c: c.clone(),
                d: d.clone(),
            };
            let report = cmd_submanifold(&desc, block.resolve(desc.n)?)?;
            emit(cli, &report)?;
            Ok(report.pass)
        }
        Command::Sweep { grid } => {
            let report = cmd_sweep(&SweepDescriptor::load(grid)?)?;
            emit(cli, &report)?;
            Ok(report.pass)
        }
        Command::DumpTables { descriptor } => {
            emit(cli, &dump_tables(&load(descriptor)?)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
