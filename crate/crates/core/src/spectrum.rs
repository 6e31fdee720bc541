//! Long-time spontaneous-emission spectrum and the continuum norm check.
//!
//! The spectrum is S(δ_k) = (γ/2π)·cos⁴(η/2)·|Ξ₊(∞) + Ξ₋(∞)|², i.e. the
//! stationary photon probability with the per-mode coupling |g_k|² divided
//! out. It carries the dimension of an inverse rate.

use num_complex::Complex64;

use crate::dynamics::{photon_amplitude_normalized, photon_sum_stationary};
use crate::error::{Error, Result};
use crate::model::DressedFrame;
use crate::quadrature::{integrate_adaptive, AdaptiveSettings};

/// Real parts of the decay exponents must stay below −DECAY_MARGIN.
pub const DECAY_MARGIN: f64 = 1e-12;

/// Spectrum samples on an ascending offset grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumCurve {
    pub offsets: Vec<f64>,
    pub intensities: Vec<f64>,
}

impl SpectrumCurve {
    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Indices of interior samples strictly above both neighbours.
    pub fn local_maxima(&self) -> Vec<usize> {
        let s = &self.intensities;
        (1..s.len().saturating_sub(1))
            .filter(|&i| s[i] > s[i - 1] && s[i] >= s[i + 1])
            .collect()
    }
}

fn ensure_decaying(frame: &DressedFrame) -> Result<()> {
    let slowest = frame.slowest_decay();
    if slowest < -DECAY_MARGIN {
        Ok(())
    } else {
        Err(Error::NonDecaying {
            exponent_re: slowest,
        })
    }
}

/// S(δ_k) for one mode offset.
pub fn emission_spectrum(frame: &DressedFrame, delta_k: f64) -> Result<f64> {
    ensure_decaying(frame)?;
    Ok(emission_unchecked(frame, delta_k))
}

fn emission_unchecked(frame: &DressedFrame, delta_k: f64) -> f64 {
    let gamma = frame.params().gamma;
    gamma / std::f64::consts::TAU
        * frame.kernel_weight()
        * photon_sum_stationary(frame, delta_k).norm_sqr()
}

/// Evaluate the spectrum on an ascending grid.
pub fn spectrum_scan(frame: &DressedFrame, offsets: &[f64]) -> Result<SpectrumCurve> {
    if offsets.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Grid("spectrum offsets must be strictly ascending".into()));
    }
    if offsets.is_empty() {
        return Ok(SpectrumCurve::default());
    }
    ensure_decaying(frame)?;
    Ok(SpectrumCurve {
        offsets: offsets.to_vec(),
        intensities: offsets.iter().map(|&d| emission_unchecked(frame, d)).collect(),
    })
}

/// Uniform grid on [lo, hi] merged with dense samples around each photon
/// resonance that falls inside it, so narrow dressed lines are resolved.
pub fn spectrum_grid(frame: &DressedFrame, lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    if !(lo < hi) || samples < 2 {
        return Err(Error::Grid(format!(
            "spectrum range needs lo < hi and >= 2 samples, got [{lo}, {hi}] x {samples}"
        )));
    }
    let last = (samples - 1) as f64;
    let mut grid: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / last)
        .collect();
    for (resonance, s) in frame.photon_resonances().iter().zip(frame.exponents()) {
        let width = s.re.abs().max(1e-9 * (hi - lo));
        for j in -100..=100 {
            let x = resonance + width * 0.1 * j as f64;
            if x > lo && x < hi {
                grid.push(x);
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// A refined local maximum of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    pub offset: f64,
    pub height: f64,
}

/// Locate every local maximum of S on [lo, hi]: scan [`spectrum_grid`], then
/// polish each bracket with golden-section search.
pub fn spectral_peaks(
    frame: &DressedFrame,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<Vec<SpectralPeak>> {
    let grid = spectrum_grid(frame, lo, hi, samples)?;
    let curve = spectrum_scan(frame, &grid)?;
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let s = |x: f64| emission_unchecked(frame, x);
    Ok(curve
        .local_maxima()
        .into_iter()
        .map(|i| {
            let (mut a, mut b) = (grid[i - 1], grid[i + 1]);
            let mut c = b - invphi * (b - a);
            let mut d = a + invphi * (b - a);
            let (mut fc, mut fd) = (s(c), s(d));
            for _ in 0..200 {
                if (b - a) <= 1e-13 * (1.0 + a.abs()) {
                    break;
                }
                if fc > fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - invphi * (b - a);
                    fc = s(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + invphi * (b - a);
                    fd = s(d);
                }
            }
            let offset = 0.5 * (a + b);
            SpectralPeak {
                offset,
                height: s(offset),
            }
        })
        .collect())
}

/// Integration window [lo, hi] and interior break points covering the
/// Lorentzian and both photon resonances.
pub fn norm_window(frame: &DressedFrame) -> Vec<f64> {
    let p = frame.params();
    let half_width = (50.0 * p.lambda)
        .max(20.0 * frame.f().norm())
        .max(20.0 * frame.omega_d());
    let [r_plus, r_minus] = frame.photon_resonances();
    let mut centers = vec![p.cavity_center(), r_plus, r_minus];
    centers.sort_by(f64::total_cmp);
    centers.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut breaks = vec![centers[0] - half_width];
    breaks.extend(&centers);
    breaks.push(centers[centers.len() - 1] + half_width);
    breaks
}

const NORM_QUADRATURE: AdaptiveSettings = AdaptiveSettings {
    abs_tol: 1e-8,
    rel_tol: 1e-8,
    max_intervals: 50_000,
};

fn photon_weight<F>(frame: &DressedFrame, amplitude: F) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    let p = *frame.params();
    let est = integrate_adaptive(
        |dk| p.density_at_mode(dk) * amplitude(dk).norm_sqr(),
        &norm_window(frame),
        NORM_QUADRATURE,
    )?;
    Ok(est.value)
}

/// Total photon probability cos⁴(η/2)·∫J(ω_k)|Ξ₊(t) + Ξ₋(t)|² dω_k.
/// Equals 1 − |𝓔(t)|² for the qubit prepared in |E⟩.
pub fn continuum_norm(frame: &DressedFrame, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    photon_weight(frame, |dk| {
        photon_amplitude_normalized(frame, dk, t).unwrap_or_default()
    })
}

/// t → ∞ limit of [`continuum_norm`]; 1 whenever the dynamics decays.
pub fn stationary_norm(frame: &DressedFrame) -> Result<f64> {
    ensure_decaying(frame)?;
    let c2 = frame.cos2_half_eta();
    photon_weight(frame, |dk| c2 * photon_sum_stationary(frame, dk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::amplitude;
    use crate::model::SystemParams;

    fn frame(rabi: f64, drive: f64) -> DressedFrame {
        DressedFrame::new(SystemParams::new(1.0, 0.1, rabi, drive, 0.0).unwrap()).unwrap()
    }

    /// Independent route: S = (γ/2π)c⁴|Ẽ(−iν)|², with the Laplace transform
    /// Ẽ(p) = (p + M)/(p² + Mp + c⁴γλ/2) of the memory equation.
    fn laplace_spectrum(frame: &DressedFrame, dk: f64) -> f64 {
        let nu = dk + frame.params().drive_detuning - frame.omega_d();
        let p = Complex64::new(0.0, -nu);
        let e = (p + frame.m()) / (p * p + frame.m() * p + frame.memory_strength());
        frame.params().gamma / std::f64::consts::TAU * frame.kernel_weight() * e.norm_sqr()
    }

    #[test]
    fn matches_laplace_transform() {
        for (r, d) in [(0.0, 0.0), (0.1, 0.0), (1.0, 0.0), (0.1, 1.0), (0.3, -0.4)] {
            let fr = frame(r, d);
            for dk in [-1.3, -0.2, 0.0, 0.05, 0.9, 2.0] {
                let a = emission_spectrum(&fr, dk).unwrap();
                let b = laplace_spectrum(&fr, dk);
                assert!((a - b).abs() <= 1e-10 * b.max(1e-300), "{r} {d} {dk}: {a} {b}");
            }
        }
    }

    #[test]
    fn scan_edge_cases() {
        let fr = frame(0.1, 0.0);
        assert!(spectrum_scan(&fr, &[]).unwrap().is_empty());
        let single = spectrum_scan(&fr, &[0.2]).unwrap();
        assert_eq!(single.intensities, vec![emission_spectrum(&fr, 0.2).unwrap()]);
        assert!(spectrum_scan(&fr, &[0.2, 0.1]).is_err());
    }

    #[test]
    fn non_decaying_frame_is_rejected() {
        // Ω = 0 with Δ < 0 decouples |E⟩ from the cavity: 𝓔 ≡ 1.
        let fr = frame(0.0, -1.0);
        assert!(matches!(emission_spectrum(&fr, 0.0), Err(Error::NonDecaying { .. })));
        assert!(spectrum_scan(&fr, &[0.0]).is_err());
        assert!(stationary_norm(&fr).is_err());
    }

    #[test]
    fn undriven_doublet_is_symmetric() {
        let fr = frame(0.0, 0.0);
        for dk in [0.01, 0.1, 0.2217, 0.5, 1.4] {
            let (a, b) = (emission_spectrum(&fr, dk).unwrap(), emission_spectrum(&fr, -dk).unwrap());
            assert!((a - b).abs() <= 1e-9 * a);
        }
        let peaks = spectral_peaks(&fr, -1.5, 1.5, 2001).unwrap();
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0].offset + peaks[1].offset).abs() < 1e-7);
    }

    #[test]
    fn continuum_norm_limits() {
        let fr = frame(0.5, 0.0);
        assert_eq!(continuum_norm(&fr, 0.0).unwrap(), 0.0);
        let t = 10.0;
        let expected = 1.0 - amplitude(&fr, t).unwrap().norm_sqr();
        assert!((continuum_norm(&fr, t).unwrap() - expected).abs() < 1e-6);
        let total = stationary_norm(&frame(0.0, 0.0)).unwrap();
        assert!((total - 1.0).abs() < 1e-6);
    }

    #[test]
    fn grid_resolves_narrow_dressed_line() {
        let fr = frame(1.0, 0.0);
        let grid = spectrum_grid(&fr, -1.5, 2.5, 2001).unwrap();
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        let width = fr.exponents()[0].re.abs();
        let near = grid
            .iter()
            .filter(|&&x| (x - fr.photon_resonances()[0]).abs() < width)
            .count();
        assert!(near >= 10);
    }
}
