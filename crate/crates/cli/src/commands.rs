//! Single-scenario commands. Each builds a [`CsvTable`] from a config and
//! writes it under the configured output prefix.

use std::path::PathBuf;

use anyhow::{Context, Result};
use dqsim_core::entanglement::{
    concurrence_closed, entangling_power, swapped_state, von_neumann_entropy, PowerSettings,
};
use dqsim_core::{amplitude, reduced_density, uniform_times, DressedFrame};
use dqsim_core::spectrum::emission_spectrum;

use crate::config::ScenarioConfig;
use crate::output::{output_path, CsvTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Amplitude,
    Spectrum,
    Entropy,
    Swap,
    Power,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Amplitude => "amplitude",
            Command::Spectrum => "spectrum",
            Command::Entropy => "entropy",
            Command::Swap => "swap",
            Command::Power => "power",
        }
    }
}

fn frame(cfg: &ScenarioConfig) -> Result<DressedFrame> {
    DressedFrame::new(cfg.params).context("invalid system parameters")
}

fn times(cfg: &ScenarioConfig) -> Result<Vec<f64>> {
    Ok(uniform_times(cfg.t_max, cfg.t_steps)?)
}

fn header(cfg: &ScenarioConfig, command: Command, columns: &[&str]) -> CsvTable {
    CsvTable::new(columns.iter().copied())
        .note(format!("command: {}", command.name()))
        .notes(cfg.echo())
}

pub fn amplitude_table(cfg: &ScenarioConfig) -> Result<CsvTable> {
    let fr = frame(cfg)?;
    let mut table = header(cfg, Command::Amplitude, &["gamma_t", "re_E", "im_E", "abs_E_sq"]);
    for t in times(cfg)? {
        let e = amplitude(&fr, t)?;
        table.push(vec![t * cfg.params.gamma, e.re, e.im, e.norm_sqr()]);
    }
    Ok(table)
}

pub fn spectrum_table(cfg: &ScenarioConfig) -> Result<CsvTable> {
    let fr = frame(cfg)?;
    let gamma = cfg.params.gamma;
    let mut table = header(cfg, Command::Spectrum, &["delta_k_over_gamma", "S"]);
    let last = (cfg.dk_steps - 1) as f64;
    for i in 0..cfg.dk_steps {
        let dk = cfg.dk_min + (cfg.dk_max - cfg.dk_min) * i as f64 / last;
        table.push(vec![dk / gamma, emission_spectrum(&fr, dk)?]);
    }
    Ok(table)
}

pub fn entropy_table(cfg: &ScenarioConfig) -> Result<CsvTable> {
    let fr = frame(cfg)?;
    let mut table = header(cfg, Command::Entropy, &["gamma_t", "S"]);
    for t in times(cfg)? {
        let s = von_neumann_entropy(&reduced_density(&fr, &cfg.qubit, t)?)?;
        table.push(vec![t * cfg.params.gamma, s]);
    }
    Ok(table)
}

pub fn swap_table(cfg: &ScenarioConfig) -> Result<CsvTable> {
    let fr = frame(cfg)?;
    let mut table = header(cfg, Command::Swap, &["gamma_t", "concurrence"]);
    for t in times(cfg)? {
        let pair = swapped_state(&fr, &cfg.qubit, &cfg.qubit2, t)
            .with_context(|| format!("swapped state at t = {t}"))?;
        table.push(vec![t * cfg.params.gamma, concurrence_closed(&pair)?]);
    }
    Ok(table)
}

pub fn power_settings(cfg: &ScenarioConfig) -> PowerSettings {
    PowerSettings {
        method: cfg.power_method(),
        ..PowerSettings::default()
    }
}

pub fn power_table(cfg: &ScenarioConfig) -> Result<CsvTable> {
    let fr = frame(cfg)?;
    let settings = power_settings(cfg);
    let mut table = header(cfg, Command::Power, &["gamma_t", "power", "error_estimate"]);
    for t in times(cfg)? {
        let p = entangling_power(&fr, t, &settings)?;
        table.push(vec![t * cfg.params.gamma, p.value, p.error]);
    }
    Ok(table)
}

pub fn table(command: Command, cfg: &ScenarioConfig) -> Result<CsvTable> {
    match command {
        Command::Amplitude => amplitude_table(cfg),
        Command::Spectrum => spectrum_table(cfg),
        Command::Entropy => entropy_table(cfg),
        Command::Swap => swap_table(cfg),
        Command::Power => power_table(cfg),
    }
}

/// Compute and write one command's CSV; returns the file written.
pub fn run_command(command: Command, cfg: &ScenarioConfig) -> Result<PathBuf> {
    let path = output_path(&cfg.out_prefix, &format!("{}.csv", command.name()));
    table(command, cfg)?.write(&path)
}
