use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use dqsim::commands::{power_settings, run_command, Command};
use dqsim::config::RawConfig;
use dqsim::{run_figure, run_validation};

#[derive(Parser)]
#[command(name = "dqsim", version, about = "Driven qubit in a lossy cavity: dynamics, spectra and entanglement swapping")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Scenario file with key=value lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a configuration key (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,

    /// Output path prefix; a trailing `/` names a directory.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Excited-state amplitude: gamma_t, Re E, Im E, |E|^2.
    Amplitude,
    /// Emission spectrum: delta_k/gamma, S.
    Spectrum,
    /// Qubit entropy: gamma_t, S.
    Entropy,
    /// Swapped-pair concurrence for (theta, phi) and (theta2, phi2).
    Swap,
    /// Entangling power with its error estimate.
    Power,
    /// Compare closed forms against the reference solvers.
    Validate {
        /// Run the slower checks as well.
        #[arg(long)]
        strict: bool,
    },
    /// Reproduce a reference figure (2, 3, 4, 5, 7 or 8).
    Figure { id: u32 },
}

fn run(cli: Cli) -> Result<bool> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => String::new(),
    };
    let mut raw = RawConfig::parse(&text)?;
    for entry in &cli.set {
        raw.set(entry)?;
    }
    if let Some(out) = &cli.out {
        raw.set(&format!("out_prefix={out}"))?;
    }
    raw.apply_env();
    let cfg = raw.build()?;

    let command = match cli.command {
        Cmd::Amplitude => Command::Amplitude,
        Cmd::Spectrum => Command::Spectrum,
        Cmd::Entropy => Command::Entropy,
        Cmd::Swap => Command::Swap,
        Cmd::Power => Command::Power,
        Cmd::Validate { strict } => {
            let report = run_validation(strict)?;
            print!("{}", report.render());
            return Ok(report.passed());
        }
        Cmd::Figure { id } => {
            for path in run_figure(id, &cfg.out_prefix, &power_settings(&cfg))? {
                println!("{}", path.display());
            }
            return Ok(true);
        }
    };
    println!("{}", run_command(command, &cfg)?.display());
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
