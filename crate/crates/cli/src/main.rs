use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use chernpolder_cli::{commands, figures, Figure, FigureConfig, RunConfig, Table};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chernpolder",
    version,
    about = "Casimir-Polder shifts and forces near Chern insulators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kubo conductivity tensor of the lattice model.
    Conductivity(RunArgs),
    /// Resonant and nonresonant energy shifts.
    Shift(RunArgs),
    /// Nonresonant force with its far-field asymptote.
    Force(RunArgs),
    /// Data behind a figure: fig1, fig2a or fig2b.
    Figure {
        name: Figure,
        /// Optional TOML with [sweep], [lattice] and [quadrature] overrides.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; defaults to [output].path of the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_sweep(args: &RunArgs, build: fn(&RunConfig) -> Result<Table>) -> Result<()> {
    let config = RunConfig::from_path(&args.config)?;
    let out = args
        .out
        .clone()
        .or_else(|| config.output.path.clone())
        .context("no output path: pass --out or set [output].path")?;
    build(&config)?.write_csv(&out)
}

fn run_figure(name: Figure, config: Option<&Path>, out: &Path) -> Result<()> {
    let config = match config {
        Some(p) => FigureConfig::from_path(p)?,
        None => FigureConfig::default(),
    };
    for (file, table) in figures::generate(name, &config)? {
        table.write_csv(&out.join(file))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Conductivity(a) => run_sweep(a, commands::conductivity),
        Command::Shift(a) => run_sweep(a, commands::shift),
        Command::Force(a) => run_sweep(a, commands::force),
        Command::Figure { name, config, out } => run_figure(*name, config.as_deref(), out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({"level": "error", "message": format!("{e:#}")})
            );
            ExitCode::FAILURE
        }
    }
}
