use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lattice_higgs_cli::{run, CliError, ExperimentConfig, Mode, Overrides};

/// Runs one experiment described by a config file.
#[derive(Parser, Debug)]
#[command(name = "lattice-higgs", version)]
struct Args {
    mode: Mode,
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the configured output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("lattice-higgs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let cfg = ExperimentConfig::from_text(&text, args.mode, &Overrides { seed: args.seed, out: args.out.clone() })?;
    println!("config {} seed {}", cfg.hash(), cfg.seed());
    let outcome = run(&cfg)?;
    for c in &outcome.checks {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(outcome.exit_code())
}
