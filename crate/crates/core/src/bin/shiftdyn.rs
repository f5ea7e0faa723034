use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use shiftdyn::cli::{run, to_csv, to_kv, Format, RunConfig, Subcommand};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Norms,
    Fhc,
    Chaos,
    Disjoint,
    Star,
    Ftrans,
    Witness,
    Scan,
    Periodic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Kv,
}

/// Checks dynamical criteria for generalized weighted shifts.
///
/// Horizons can be overridden with SHIFTDYN_L_MAX, SHIFTDYN_N and
/// SHIFTDYN_K_COUNT.
#[derive(Debug, Parser)]
#[command(name = "shiftdyn", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    #[arg(long)]
    config: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
}

fn execute(args: Args) -> Result<(), String> {
    let text = fs::read_to_string(&args.config).map_err(|e| format!("{}: {e}", args.config.display()))?;
    let mut cfg = RunConfig::from_toml(&text).map_err(|e| e.to_string())?;
    cfg.apply_env(std::env::vars()).map_err(|e| e.to_string())?;
    let sub: Subcommand = format!("{:?}", args.command).to_lowercase().parse().map_err(|e: shiftdyn::Error| e.to_string())?;
    let report = run(&cfg, sub).map_err(|e| e.to_string())?;

    let format = match args.format {
        Some(OutFormat::Csv) => Format::Csv,
        Some(OutFormat::Kv) => Format::Kv,
        None => cfg.output.format,
    };
    let body = match format {
        Format::Csv => to_csv(&report),
        Format::Kv => to_kv(&report).map_err(|e| e.to_string())?,
    };
    let out = args.out.or_else(|| cfg.output.path.as_ref().map(PathBuf::from));
    match out {
        Some(path) => {
            fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            for v in &report.verdicts {
                println!("{}: {:?}", v.criterion, v.holds);
            }
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("shiftdyn: {e}");
            ExitCode::FAILURE
        }
    }
}
