use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clterm::job::{parse_job, run, JobOptions, Mode, OutputFormat};
use clterm::matgrp::DEFAULT_MAX_SIZE;

/// Class groups of terminalizations of linear quotient singularities.
#[derive(Parser)]
#[command(name = "clterm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full class group report for Cl(V/G) and Cl(X).
    Analyze(JobArgs),
    /// Eigenvalue data and age of every conjugacy class.
    Age(JobArgs),
    /// Relative invariants for the document's character, or for every character of Ab(G).
    Invariant(JobArgs),
    /// Consistency checks, Galois sweep and grading lemmas with witnesses.
    Check(JobArgs),
    /// Junior data and torsion under every Galois twist.
    Sweep(JobArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct JobArgs {
    /// Job document (JSON); reads standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    max_group_size: usize,
    /// Largest degree searched for relative invariants; defaults to |G|.
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, default_value_t = 1)]
    twist: i64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.command {
        Command::Analyze(a) => (Mode::Analyze, a),
        Command::Age(a) => (Mode::Age, a),
        Command::Invariant(a) => (Mode::Invariant, a),
        Command::Check(a) => (Mode::Check, a),
        Command::Sweep(a) => (Mode::Sweep, a),
    };
    match execute(mode, &args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execute(mode: Mode, args: &JobArgs) -> Result<bool, String> {
    let text = match &args.input {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => {
            std::io::read_to_string(std::io::stdin()).map_err(|e| format!("standard input: {e}"))?
        }
    };
    let format = match args.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    let options = JobOptions {
        max_group_size: args.max_group_size,
        degree_bound: args.degree_bound,
        twist: args.twist,
        format,
    };
    let job = parse_job(&text, mode, options).map_err(|e| e.to_string())?;
    let report = run(&job).map_err(|e| e.to_string())?;
    let rendered = report.render(format);
    match &args.output {
        Some(path) => {
            std::fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => print!("{rendered}"),
    }
    Ok(report.success)
}
