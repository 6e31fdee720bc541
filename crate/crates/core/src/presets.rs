//! Parameter sets of the reference figures (γ = 1, λ = 0.1, δ = 0).

use crate::model::SystemParams;

pub const LAMBDA: f64 = 0.1;

/// Rabi sweep at Δ = 0 used for the spectrum, entropy and power figures.
pub const RABI_SWEEP: [f64; 6] = [0.0, 0.01, 0.05, 0.1, 0.5, 1.0];

/// Detuning sweep of the spectrum figure at Ω = 0.1. The last value replaces
/// a duplicated 0.5 in the reference sweep.
pub const SPECTRUM_DETUNINGS: [f64; 6] = [0.0, 0.01, 0.1, 0.5, 1.0, 1.5];
pub const SPECTRUM_DETUNING_RABI: f64 = 0.1;

/// Detuning sweep of the entropy and power figures at Ω = 0.2.
pub const DYNAMICS_DETUNINGS: [f64; 4] = [0.0, 0.01, 0.1, 1.0];
pub const DYNAMICS_DETUNING_RABI: f64 = 0.2;

/// γ = 1, λ = 0.1, δ = 0 with the given Ω and Δ.
pub fn reference(rabi: f64, drive_detuning: f64) -> SystemParams {
    SystemParams {
        gamma: 1.0,
        lambda: LAMBDA,
        rabi,
        drive_detuning,
        cavity_detuning: 0.0,
    }
}

/// Every distinct (Ω, Δ) pair of the spectrum and entropy figures.
pub fn figure_parameter_sets() -> Vec<SystemParams> {
    let mut sets: Vec<(f64, f64)> = RABI_SWEEP.iter().map(|&r| (r, 0.0)).collect();
    sets.extend(SPECTRUM_DETUNINGS.iter().map(|&d| (SPECTRUM_DETUNING_RABI, d)));
    sets.extend(DYNAMICS_DETUNINGS.iter().map(|&d| (DYNAMICS_DETUNING_RABI, d)));
    let mut unique: Vec<(f64, f64)> = Vec::new();
    for s in sets {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    unique.into_iter().map(|(r, d)| reference(r, d)).collect()
}
