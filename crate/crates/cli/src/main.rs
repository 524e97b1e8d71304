use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use harmonic_layers_cli::{commands, CliError, CliResult, ExitKind, RunConfig};

/// Default worker count when --threads is not given.
const THREADS_ENV: &str = "HLAYERS_THREADS";

#[derive(Parser)]
#[command(name = "hlayers", version, about = "Harmonic fields in layered media")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Escalate regime warnings to exit code 4.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one method on the configured grid and write a CSV.
    Solve(Common),
    /// Evaluate several methods and tabulate their differences.
    Compare(Common),
    /// Check the PDE, boundary and interface conditions.
    Verify(Common),
    /// Series-versus-asymptotic advice.
    Regimes(Common),
}

fn threads(flag: Option<usize>) -> CliResult<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|_| {
            CliError::validation(format!("{THREADS_ENV} must be a thread count, got {v:?}"))
        }),
        Err(_) => Ok(None),
    }
}

fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn run(cli: Cli) -> CliResult<ExitKind> {
    let common = match &cli.command {
        Command::Solve(c) | Command::Compare(c) | Command::Verify(c) | Command::Regimes(c) => c,
    };
    if let Some(n) = threads(common.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::validation(format!("cannot start thread pool: {e}")))?;
    }
    let cfg = RunConfig::load(&common.config)?;
    let out = common
        .out
        .clone()
        .or_else(|| cfg.output.path.as_ref().map(|p| cfg.resolve(p)));
    match cli.command {
        Command::Solve(c) => {
            let r = commands::solve(&cfg, c.strict)?;
            write_text(out.as_deref(), &r.csv)?;
            eprintln!("{}", r.summary);
            Ok(ExitKind::Ok)
        }
        Command::Compare(c) => {
            let r = commands::compare(&cfg, c.strict)?;
            match &out {
                Some(p) => {
                    write_text(Some(&p.with_extension("json")), &pretty(&r.summary))?;
                    write_text(Some(&p.with_extension("csv")), &r.csv)?;
                }
                None => write_text(None, &pretty(&r.summary))?,
            }
            Ok(ExitKind::Ok)
        }
        Command::Verify(c) => {
            let r = commands::verify(&cfg, c.strict)?;
            write_text(out.as_deref(), &pretty(&r.report))?;
            Ok(if r.pass {
                ExitKind::Ok
            } else {
                ExitKind::VerifyFailed
            })
        }
        Command::Regimes(c) => {
            let r = commands::regimes(&cfg)?;
            write_text(out.as_deref(), &pretty(&r.report))?;
            Ok(if c.strict && r.warning {
                ExitKind::RegimeWarning
            } else {
                ExitKind::Ok
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(kind) => ExitCode::from(kind as u8),
        Err(e) => {
            eprintln!("hlayers: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
