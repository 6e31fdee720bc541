//! Single-excitation Schrödinger evolution with a finite set of cavity modes.
//!
//! In the interaction picture, with φ_k = ω_D − Δ − δ_k,
//!
//! 𝓔̇ = −i cos²(η/2) Σ_k g_k 𝓖_k e^{iφ_k t},
//! 𝓖̇_k = −i cos²(η/2) g_k 𝓔 e^{−iφ_k t},
//!
//! starting from 𝓔 = 1, 𝓖_k = 0.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid_spacing;
use super::volterra::SolverSettings;
use crate::dynamics::AmplitudeTrajectory;
use crate::error::{Error, Result};
use crate::model::{DressedFrame, SystemParams};
use crate::quadrature::CompensatedSum;

/// Norm drift beyond which the run is rejected.
pub const MAX_NORM_DRIFT: f64 = 1e-3;

/// Phasors are recomputed exactly after this many incremental rotations.
const PHASE_REFRESH: usize = 256;

/// Uniform midpoint grid of modes centred on the cavity resonance.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedReservoir {
    pub mode_offsets: Vec<f64>,
    /// g_k with g_k² = J·Δω.
    pub couplings: Vec<f64>,
    pub spacing: f64,
}

impl DiscretizedReservoir {
    pub fn new(params: &SystemParams, half_width: f64, modes: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) || modes == 0 {
            return Err(Error::Settings(format!(
                "reservoir needs W > 0 and at least one mode, got W = {half_width}, N = {modes}"
            )));
        }
        let spacing = 2.0 * half_width / modes as f64;
        let start = params.cavity_center() - half_width;
        let mode_offsets: Vec<f64> = (0..modes)
            .map(|k| start + (k as f64 + 0.5) * spacing)
            .collect();
        let couplings = mode_offsets
            .iter()
            .map(|&dk| (params.density_at_mode(dk) * spacing).sqrt())
            .collect();
        Ok(Self {
            mode_offsets,
            couplings,
            spacing,
        })
    }

    pub fn from_settings(params: &SystemParams, settings: &SolverSettings) -> Result<Self> {
        Self::new(params, settings.window_half_width, settings.modes)
    }

    pub fn len(&self) -> usize {
        self.mode_offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mode_offsets.is_empty()
    }

    /// Σ g_k², to be compared with ∫J = γλ/2.
    pub fn total_coupling(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).collect::<CompensatedSum>().value()
    }

    /// 2π/Δω: the discrete spectrum revives the initial state after this time.
    pub fn recurrence_time(&self) -> f64 {
        2.0 * PI / self.spacing
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    pub trajectory: AmplitudeTrajectory,
    /// 𝓖_k at the last sample time.
    pub modes: Vec<Complex64>,
    /// |𝓔|² + Σ|𝓖_k|² at every sample time.
    pub norms: Vec<f64>,
}

impl DiscreteSolution {
    pub fn max_norm_drift(&self) -> f64 {
        self.norms.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max)
    }
}

fn total_norm(e: Complex64, modes: &[Complex64]) -> f64 {
    let mut sum = CompensatedSum::default();
    sum.add(e.norm_sqr());
    for g in modes {
        sum.add(g.norm_sqr());
    }
    sum.value()
}

/// Integrate the multimode equations with fixed-step RK4.
pub fn discretized_mode_solve(
    frame: &DressedFrame,
    reservoir: &DiscretizedReservoir,
    times: &[f64],
    step: f64,
) -> Result<DiscreteSolution> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Settings(format!("step must be positive, got {step}")));
    }
    let spacing = grid_spacing(times)?;
    let t_end = times[times.len() - 1];
    if reservoir.is_empty() {
        return Err(Error::Resolution("reservoir has no modes".into()));
    }
    if t_end >= 0.5 * reservoir.recurrence_time() {
        return Err(Error::Resolution(format!(
            "t = {t_end} reaches half the recurrence time {:.3} of the mode grid",
            reservoir.recurrence_time()
        )));
    }
    let lo = reservoir.mode_offsets[0];
    let hi = reservoir.mode_offsets[reservoir.len() - 1];
    let margin = 0.25 * (hi - lo);
    for resonance in frame.photon_resonances() {
        if !(resonance > lo + margin && resonance < hi - margin) {
            return Err(Error::Resolution(format!(
                "photon resonance at {resonance} is not inside the central half of the mode window [{lo}, {hi}]"
            )));
        }
    }

    let c2 = frame.cos2_half_eta();
    let base = frame.omega_d() - frame.params().drive_detuning;
    let freqs: Vec<f64> = reservoir.mode_offsets.iter().map(|dk| base - dk).collect();
    let couplings: Vec<f64> = reservoir.couplings.iter().map(|g| c2 * g).collect();
    let substeps = if spacing == 0.0 {
        1
    } else {
        (spacing / step).ceil().max(1.0) as usize
    };
    let h = if spacing == 0.0 { 0.0 } else { spacing / substeps as f64 };
    let half_turn: Vec<Complex64> = freqs
        .iter()
        .map(|w| Complex64::from_polar(1.0, 0.5 * w * h))
        .collect();

    let n = reservoir.len();
    let mut e = Complex64::new(1.0, 0.0);
    let mut g = vec![Complex64::default(); n];
    // e^{iφ_k t} at the start, midpoint and end of the current step.
    let mut phase = vec![Complex64::new(1.0, 0.0); n];
    let mut phase_mid = vec![Complex64::default(); n];
    let mut phase_end = vec![Complex64::default(); n];
    let mut k_g = [
        vec![Complex64::default(); n],
        vec![Complex64::default(); n],
        vec![Complex64::default(); n],
        vec![Complex64::default(); n],
    ];
    let mut stage = vec![Complex64::default(); n];
    let minus_i = Complex64::new(0.0, -1.0);

    // Returns d𝓔 and fills dG for state (e, gs) with phasors `ph`.
    let rhs = |e: Complex64, gs: &[Complex64], ph: &[Complex64], out: &mut [Complex64]| {
        let mut acc_re = CompensatedSum::default();
        let mut acc_im = CompensatedSum::default();
        for k in 0..gs.len() {
            let coupled = couplings[k] * gs[k] * ph[k];
            acc_re.add(coupled.re);
            acc_im.add(coupled.im);
            out[k] = minus_i * couplings[k] * e * ph[k].conj();
        }
        minus_i * Complex64::new(acc_re.value(), acc_im.value())
    };

    let mut trajectory = AmplitudeTrajectory {
        times: times.to_vec(),
        values: Vec::with_capacity(times.len()),
    };
    let mut norms = Vec::with_capacity(times.len());
    trajectory.values.push(e);
    norms.push(1.0);
    let mut step_count = 0usize;
    for _ in 1..times.len() {
        for _ in 0..substeps {
            for k in 0..n {
                phase_mid[k] = phase[k] * half_turn[k];
                phase_end[k] = phase_mid[k] * half_turn[k];
            }
            let [k1, k2, k3, k4] = &mut k_g;
            let d1 = rhs(e, &g, &phase, k1);
            for k in 0..n {
                stage[k] = g[k] + 0.5 * h * k1[k];
            }
            let d2 = rhs(e + 0.5 * h * d1, &stage, &phase_mid, k2);
            for k in 0..n {
                stage[k] = g[k] + 0.5 * h * k2[k];
            }
            let d3 = rhs(e + 0.5 * h * d2, &stage, &phase_mid, k3);
            for k in 0..n {
                stage[k] = g[k] + h * k3[k];
            }
            let d4 = rhs(e + h * d3, &stage, &phase_end, k4);
            e += h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
            for k in 0..n {
                g[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            }
            step_count += 1;
            if step_count % PHASE_REFRESH == 0 {
                let t = h * step_count as f64;
                for (p, w) in phase.iter_mut().zip(&freqs) {
                    *p = Complex64::from_polar(1.0, w * t);
                }
            } else {
                phase.copy_from_slice(&phase_end);
            }
        }
        let norm = total_norm(e, &g);
        if (norm - 1.0).abs() > MAX_NORM_DRIFT {
            return Err(Error::Resolution(format!(
                "norm drifted to {norm} at t = {}",
                h * step_count as f64
            )));
        }
        trajectory.values.push(e);
        norms.push(norm);
    }
    Ok(DiscreteSolution {
        trajectory,
        modes: g,
        norms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{amplitude_trajectory, uniform_times};
    use crate::spectrum::emission_spectrum;

    fn frame(rabi: f64) -> DressedFrame {
        DressedFrame::new(SystemParams::new(1.0, 0.1, rabi, 0.0, 0.0).unwrap()).unwrap()
    }

    #[test]
    fn default_window_captures_coupling() {
        for r in [0.0, 0.1, 1.0] {
            let fr = frame(r);
            let s = SolverSettings::for_frame(&fr);
            let res = DiscretizedReservoir::from_settings(fr.params(), &s).unwrap();
            let captured = res.total_coupling() / (0.5 * fr.params().gamma * fr.params().lambda);
            assert!((captured - 1.0).abs() < 0.01, "{r}: {captured}");
        }
    }

    #[test]
    fn conserves_norm_and_tracks_closed_form() {
        let fr = frame(0.1);
        let s = SolverSettings::for_frame(&fr);
        let res = DiscretizedReservoir::from_settings(fr.params(), &s).unwrap();
        let times = uniform_times(25.0, 26).unwrap();
        let sol = discretized_mode_solve(&fr, &res, &times, s.step).unwrap();
        assert!(sol.max_norm_drift() < 1e-8, "{:e}", sol.max_norm_drift());
        let exact = amplitude_trajectory(&fr, &times).unwrap();
        let err = sol.trajectory.max_abs_difference(&exact).unwrap();
        assert!(err < 2e-3, "{err:e}");
    }

    #[test]
    fn long_time_modes_trace_the_spectrum() {
        let fr = frame(0.0);
        let s = SolverSettings::for_frame(&fr);
        let res = DiscretizedReservoir::from_settings(fr.params(), &s).unwrap();
        let times = uniform_times(200.0, 2).unwrap();
        let sol = discretized_mode_solve(&fr, &res, &times, s.step).unwrap();
        let scale = fr.params().gamma / std::f64::consts::TAU;
        for (k, dk) in res.mode_offsets.iter().enumerate() {
            if dk.abs() > 1.0 {
                continue;
            }
            let ratio = sol.modes[k].norm_sqr() / res.couplings[k].powi(2) * scale;
            let expected = emission_spectrum(&fr, *dk).unwrap();
            assert!((ratio - expected).abs() < 1e-2 * expected.max(1.0), "{dk}: {ratio} vs {expected}");
        }
    }

    #[test]
    fn rejects_under_resolved_runs() {
        let fr = frame(0.0);
        let narrow = DiscretizedReservoir::new(fr.params(), 1.0, 10).unwrap();
        let times = uniform_times(20.0, 3).unwrap();
        assert!(matches!(
            discretized_mode_solve(&fr, &narrow, &times, 0.01),
            Err(Error::Resolution(_))
        ));
        let off_window = DiscretizedReservoir::new(fr.params(), 0.2, 4000).unwrap();
        assert!(matches!(
            discretized_mode_solve(&fr, &off_window, &[0.0, 1.0], 0.01),
            Err(Error::Resolution(_))
        ));
    }
}
