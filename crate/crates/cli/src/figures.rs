//! Reference figure sweeps: one CSV per curve and one SVG per panel.

use std::path::PathBuf;

use anyhow::{bail, Result};
use dqsim_core::entanglement::{entangling_power, von_neumann_entropy, PowerSettings};
use dqsim_core::presets::{
    reference, DYNAMICS_DETUNINGS, DYNAMICS_DETUNING_RABI, RABI_SWEEP, SPECTRUM_DETUNINGS,
    SPECTRUM_DETUNING_RABI,
};
use dqsim_core::spectrum::{spectrum_grid, spectrum_scan};
use dqsim_core::{
    amplitude_zeros, reduced_density, uniform_times, DressedFrame, QubitInitialState, SystemParams,
};
use rayon::prelude::*;

use crate::output::{output_path, CsvTable};
use crate::plot::{write_svg, Curve, Panel, YScale};

pub const FIGURE_IDS: [u32; 6] = [2, 3, 4, 5, 7, 8];

const SPECTRUM_SAMPLES: usize = 2001;
const ENTROPY_T_MAX: f64 = 50.0;
const ENTROPY_SAMPLES: usize = 1001;
const POWER_T_MAX: f64 = 25.0;
const POWER_SAMPLES: usize = 501;

#[derive(Debug, Clone, Copy)]
enum Quantity {
    Spectrum { lo: f64, hi: f64 },
    Entropy,
    Power,
}

struct CurveSpec {
    label: String,
    stem: String,
    params: SystemParams,
}

struct PanelSpec {
    suffix: &'static str,
    curves: Vec<CurveSpec>,
}

fn rabi_curve(rabi: f64) -> CurveSpec {
    CurveSpec {
        label: format!("Omega = {rabi}"),
        stem: format!("omega{rabi}"),
        params: reference(rabi, 0.0),
    }
}

fn detuning_curve(rabi: f64, detuning: f64) -> CurveSpec {
    CurveSpec {
        label: format!("Delta = {detuning}"),
        stem: format!("delta{detuning}"),
        params: reference(rabi, detuning),
    }
}

fn rabi_panels() -> Vec<PanelSpec> {
    let (a, b) = RABI_SWEEP.split_at(3);
    vec![
        PanelSpec {
            suffix: "a",
            curves: a.iter().map(|&r| rabi_curve(r)).collect(),
        },
        PanelSpec {
            suffix: "b",
            curves: b.iter().map(|&r| rabi_curve(r)).collect(),
        },
    ]
}

fn layout(id: u32) -> Result<(Quantity, Vec<PanelSpec>, Vec<String>)> {
    let notes = Vec::new();
    Ok(match id {
        2 => (Quantity::Spectrum { lo: -1.5, hi: 2.5 }, rabi_panels(), notes),
        3 => {
            let (a, b) = SPECTRUM_DETUNINGS.split_at(3);
            let panel = |suffix, ds: &[f64]| PanelSpec {
                suffix,
                curves: ds
                    .iter()
                    .map(|&d| detuning_curve(SPECTRUM_DETUNING_RABI, d))
                    .collect(),
            };
            (
                Quantity::Spectrum { lo: -1.5, hi: 1.5 },
                vec![panel("a", a), panel("b", b)],
                vec!["note: the reference sweep for panel b lists delta_drive=0.5 twice; \
                      the third curve uses delta_drive=1.5 instead"
                    .into()],
            )
        }
        4 => (Quantity::Entropy, rabi_panels(), notes),
        5 | 8 => (
            if id == 5 { Quantity::Entropy } else { Quantity::Power },
            vec![PanelSpec {
                suffix: "",
                curves: DYNAMICS_DETUNINGS
                    .iter()
                    .map(|&d| detuning_curve(DYNAMICS_DETUNING_RABI, d))
                    .collect(),
            }],
            notes,
        ),
        7 => (Quantity::Power, rabi_panels(), notes),
        _ => bail!("unsupported figure id {id}; expected one of {FIGURE_IDS:?}"),
    })
}

fn params_note(p: &SystemParams) -> String {
    format!(
        "gamma={} lambda={} omega={} delta_drive={} delta_cavity={}",
        p.gamma, p.lambda, p.rabi, p.drive_detuning, p.cavity_detuning
    )
}

/// Power grid with the exact zeros of 𝓔 merged in.
fn power_times(frame: &DressedFrame) -> Result<Vec<f64>> {
    let mut times = uniform_times(POWER_T_MAX, POWER_SAMPLES)?;
    times.extend(amplitude_zeros(frame, POWER_T_MAX)?);
    times.sort_by(f64::total_cmp);
    times.dedup();
    Ok(times)
}

fn curve_table(quantity: Quantity, spec: &CurveSpec, power: &PowerSettings) -> Result<CsvTable> {
    let frame = DressedFrame::new(spec.params)?;
    let gamma = spec.params.gamma;
    let excited = QubitInitialState::excited();
    let base = |columns: &[&str]| {
        CsvTable::new(columns.iter().copied())
            .note(params_note(&spec.params))
            .note("theta=0 phi=0")
    };
    Ok(match quantity {
        Quantity::Spectrum { lo, hi } => {
            let grid = spectrum_grid(&frame, lo, hi, SPECTRUM_SAMPLES)?;
            let curve = spectrum_scan(&frame, &grid)?;
            let mut t = base(&["delta_k_over_gamma", "S"]);
            for (x, s) in curve.offsets.iter().zip(&curve.intensities) {
                t.push(vec![x / gamma, *s]);
            }
            t
        }
        Quantity::Entropy => {
            let mut t = base(&["gamma_t", "S"]);
            for time in uniform_times(ENTROPY_T_MAX, ENTROPY_SAMPLES)? {
                let s = von_neumann_entropy(&reduced_density(&frame, &excited, time)?)?;
                t.push(vec![time * gamma, s]);
            }
            t
        }
        Quantity::Power => {
            let times = power_times(&frame)?;
            let rows = times
                .par_iter()
                .map(|&time| {
                    let p = entangling_power(&frame, time, power)?;
                    Ok(vec![time * gamma, p.value, p.error])
                })
                .collect::<Result<Vec<_>>>()?;
            let mut t = CsvTable::new(["gamma_t", "power", "error_estimate"])
                .note(params_note(&spec.params))
                .note(format!("power method: {:?}", power.method));
            for row in rows {
                t.push(row);
            }
            t
        }
    })
}

/// Compute every curve of figure `id` and write CSV and SVG files under `prefix`.
pub fn run_figure(id: u32, prefix: &str, power: &PowerSettings) -> Result<Vec<PathBuf>> {
    let (quantity, panels, notes) = layout(id)?;
    let (y_label, x_label, scale) = match quantity {
        Quantity::Spectrum { .. } => ("S", "delta_k / gamma", YScale::Log),
        Quantity::Entropy => ("entropy", "gamma t", YScale::Linear),
        Quantity::Power => ("entangling power", "gamma t", YScale::Linear),
    };
    let mut written = Vec::new();
    for panel in &panels {
        let tables = panel
            .curves
            .par_iter()
            .map(|spec| curve_table(quantity, spec, power))
            .collect::<Result<Vec<_>>>()?;
        let mut curves = Vec::new();
        for (spec, table) in panel.curves.iter().zip(tables) {
            let table = table.notes(notes.iter().cloned());
            let name = format!("fig{id}{}_{}.csv", panel.suffix, spec.stem);
            written.push(table.write(&output_path(prefix, &name))?);
            curves.push(Curve {
                label: spec.label.clone(),
                x: table.rows.iter().map(|r| r[0]).collect(),
                y: table.rows.iter().map(|r| r[1]).collect(),
            });
        }
        let title = format!("Figure {id}{}", panel.suffix);
        let svg = output_path(prefix, &format!("fig{id}{}.svg", panel.suffix));
        write_svg(
            &svg,
            &Panel {
                title: &title,
                x_label,
                y_label,
                scale,
            },
            &curves,
        )?;
        written.push(svg);
    }
    Ok(written)
}
