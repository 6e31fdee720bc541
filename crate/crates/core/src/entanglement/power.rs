//! Entangling power: the swapped-pair concurrence averaged over Haar-random
//! product initial states,
//!
//! 𝔈(t) = (1/16π²) ∫ sinθ₁ sinθ₂ dθ₁ dθ₂ dφ₁ dφ₂ · C(θ₁, θ₂, φ₁ − φ₂, t).
//!
//! With uᵢ = cos θᵢ and p = |𝓔(t)|² the integrand is
//! C = 2a / (2a + b − c cos φ), where a = (1+u₁)(1+u₂)p/4,
//! b = (1 − u₁u₂)/2 and c = √((1−u₁²)(1−u₂²))/2.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::amplitude;
use crate::error::{Error, Result};
use crate::model::DressedFrame;
use crate::quadrature::{gauss_legendre, CompensatedSum};

/// Populations at or below this give an identically vanishing integrand.
pub const DEAD_POPULATION: f64 = 1e-20;

const MC_BATCH: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMethod {
    /// Gauss–Legendre in cos θ₁ and cos θ₂, uniform nodes in φ₁ − φ₂.
    Quadrature { theta_nodes: usize, phi_nodes: usize },
    /// Uniform sampling of (cos θᵢ, φᵢ) from a seeded generator.
    MonteCarlo { samples: usize, seed: u64 },
}

impl PowerMethod {
    pub const fn quadrature() -> Self {
        Self::Quadrature {
            theta_nodes: 64,
            phi_nodes: 128,
        }
    }

    pub const fn monte_carlo(seed: u64) -> Self {
        Self::MonteCarlo {
            samples: 1_000_000,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSettings {
    pub method: PowerMethod,
    /// Largest acceptable error estimate.
    pub tolerance: f64,
}

impl Default for PowerSettings {
    fn default() -> Self {
        Self {
            method: PowerMethod::quadrature(),
            tolerance: 1e-2,
        }
    }
}

impl PowerSettings {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self {
            method: PowerMethod::MonteCarlo { samples, seed },
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerEstimate {
    pub value: f64,
    /// Half-resolution difference (quadrature) or standard error (Monte Carlo).
    pub error: f64,
}

/// 𝔈 at time `t`.
pub fn entangling_power(
    frame: &DressedFrame,
    t: f64,
    settings: &PowerSettings,
) -> Result<PowerEstimate> {
    let population = amplitude(frame, t)?.norm_sqr();
    entangling_power_for_population(population, settings)
}

/// 𝔈 at every time of a grid.
pub fn power_trajectory(
    frame: &DressedFrame,
    times: &[f64],
    settings: &PowerSettings,
) -> Result<Vec<PowerEstimate>> {
    times
        .iter()
        .map(|&t| entangling_power(frame, t, settings))
        .collect()
}

/// 𝔈 as a function of the excited-state population |𝓔|² alone.
pub fn entangling_power_for_population(
    population: f64,
    settings: &PowerSettings,
) -> Result<PowerEstimate> {
    if !(0.0..=1.0 + 1e-12).contains(&population) {
        return Err(Error::ParameterDomain {
            name: "population",
            value: population,
            reason: "must lie in [0, 1]",
        });
    }
    if population <= DEAD_POPULATION {
        return Ok(PowerEstimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let estimate = match settings.method {
        PowerMethod::Quadrature {
            theta_nodes,
            phi_nodes,
        } => quadrature(population, theta_nodes, phi_nodes)?,
        PowerMethod::MonteCarlo { samples, seed } => monte_carlo(population, samples, seed)?,
    };
    if estimate.error > settings.tolerance {
        return Err(Error::Accuracy {
            estimate: estimate.value,
            error: estimate.error,
            target: settings.tolerance,
        });
    }
    Ok(estimate)
}

fn concurrence_from_parts(two_x_sqr: f64, upsilon_sqr: f64) -> f64 {
    let norm = two_x_sqr + upsilon_sqr;
    if norm > 0.0 {
        two_x_sqr / norm
    } else {
        0.0
    }
}

fn tensor_rule(population: f64, theta_nodes: usize, phi_nodes: usize) -> Result<f64> {
    let nodes = gauss_legendre(theta_nodes)?;
    let cos_phi: Vec<f64> = (0..phi_nodes)
        .map(|j| (TAU * j as f64 / phi_nodes as f64).cos())
        .collect();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&(u1, w1)| {
            let mut row = CompensatedSum::default();
            for &(u2, w2) in &nodes {
                let two_a = 0.5 * (1.0 + u1) * (1.0 + u2) * population;
                let b = 0.5 * (1.0 - u1 * u2);
                let c = 0.5 * ((1.0 - u1 * u1) * (1.0 - u2 * u2)).max(0.0).sqrt();
                let mut ring = CompensatedSum::default();
                for &cp in &cos_phi {
                    ring.add(concurrence_from_parts(two_a, (b - c * cp).max(0.0)));
                }
                row.add(w1 * w2 * ring.value() / phi_nodes as f64);
            }
            row.value()
        })
        .collect();
    Ok(0.25 * rows.into_iter().collect::<CompensatedSum>().value())
}

fn quadrature(population: f64, theta_nodes: usize, phi_nodes: usize) -> Result<PowerEstimate> {
    if theta_nodes < 2 || phi_nodes < 2 {
        return Err(Error::Settings(format!(
            "quadrature needs at least 2 nodes per axis, got {theta_nodes} x {phi_nodes}"
        )));
    }
    let value = tensor_rule(population, theta_nodes, phi_nodes)?;
    let coarse = tensor_rule(population, (theta_nodes / 2).max(1), (phi_nodes / 2).max(1))?;
    Ok(PowerEstimate {
        value,
        error: (value - coarse).abs(),
    })
}

fn monte_carlo(population: f64, samples: usize, seed: u64) -> Result<PowerEstimate> {
    if samples < 2 {
        return Err(Error::Settings(format!(
            "Monte-Carlo needs at least 2 samples, got {samples}"
        )));
    }
    let batches = samples.div_ceil(MC_BATCH);
    let moments: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let count = MC_BATCH.min(samples - batch * MC_BATCH);
            let (mut sum, mut sum_sq) = (CompensatedSum::default(), CompensatedSum::default());
            for _ in 0..count {
                let u1: f64 = rng.gen_range(-1.0..=1.0);
                let u2: f64 = rng.gen_range(-1.0..=1.0);
                let phi1: f64 = rng.gen_range(0.0..TAU);
                let phi2: f64 = rng.gen_range(0.0..TAU);
                let (c1, s1) = ((0.5 * (1.0 + u1)).sqrt(), (0.5 * (1.0 - u1)).sqrt());
                let (c2, s2) = ((0.5 * (1.0 + u2)).sqrt(), (0.5 * (1.0 - u2)).sqrt());
                let upsilon =
                    s1 * c2 * Complex64::from_polar(1.0, phi1) - s2 * c1 * Complex64::from_polar(1.0, phi2);
                let two_x_sqr = 2.0 * (c1 * c2).powi(2) * population;
                let value = concurrence_from_parts(two_x_sqr, upsilon.norm_sqr());
                sum.add(value);
                sum_sq.add(value * value);
            }
            (sum.value(), sum_sq.value())
        })
        .collect();
    let n = samples as f64;
    let mean = moments.iter().map(|m| m.0).collect::<CompensatedSum>().value() / n;
    let second = moments.iter().map(|m| m.1).collect::<CompensatedSum>().value() / n;
    let variance = (second - mean * mean).max(0.0) * n / (n - 1.0);
    Ok(PowerEstimate {
        value: mean,
        error: (variance / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemParams;

    /// φ integral done analytically: (1/2π)∫dφ 2a/(2a + b − c cos φ) = 2a/√((2a+b)² − c²).
    fn semi_analytic(population: f64) -> f64 {
        let nodes = gauss_legendre(200).unwrap();
        let mut total = CompensatedSum::default();
        for &(u1, w1) in &nodes {
            for &(u2, w2) in &nodes {
                let two_a = 0.5 * (1.0 + u1) * (1.0 + u2) * population;
                let b = 0.5 * (1.0 - u1 * u2);
                let c = 0.5 * ((1.0 - u1 * u1) * (1.0 - u2 * u2)).sqrt();
                total.add(w1 * w2 * two_a / ((two_a + b).powi(2) - c * c).sqrt());
            }
        }
        0.25 * total.value()
    }

    #[test]
    fn initial_power_matches_semi_analytic_value() {
        let q = entangling_power_for_population(1.0, &PowerSettings::default()).unwrap();
        let reference = semi_analytic(1.0);
        assert!((q.value - reference).abs() < 1e-6, "{} vs {reference}", q.value);
        assert!((q.value - 0.4456368).abs() < 1e-6);
    }

    #[test]
    fn universal_at_zero_time() {
        let settings = PowerSettings::default();
        let values: Vec<f64> = [(0.0, 0.0), (1.0, 0.0), (0.2, 1.0)]
            .iter()
            .map(|&(r, d)| {
                let fr = DressedFrame::new(SystemParams::new(1.0, 0.1, r, d, 0.0).unwrap()).unwrap();
                entangling_power(&fr, 0.0, &settings).unwrap().value
            })
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn vanishes_with_population() {
        let q = entangling_power_for_population(0.0, &PowerSettings::default()).unwrap();
        assert_eq!(q, PowerEstimate { value: 0.0, error: 0.0 });
        assert!(entangling_power_for_population(-0.1, &PowerSettings::default()).is_err());
    }

    #[test]
    fn monte_carlo_agrees_and_is_reproducible() {
        for p in [1.0, 0.3, 0.01] {
            let q = entangling_power_for_population(p, &PowerSettings::default()).unwrap();
            let mc = entangling_power_for_population(p, &PowerSettings::monte_carlo(200_000, 7)).unwrap();
            assert!((q.value - mc.value).abs() < 1e-3_f64.max(4.0 * mc.error));
            let again = entangling_power_for_population(p, &PowerSettings::monte_carlo(200_000, 7)).unwrap();
            assert_eq!(mc, again);
        }
    }

    #[test]
    fn accuracy_budget_is_enforced() {
        let tight = PowerSettings {
            method: PowerMethod::Quadrature {
                theta_nodes: 4,
                phi_nodes: 4,
            },
            tolerance: 1e-12,
        };
        assert!(matches!(
            entangling_power_for_population(0.5, &tight),
            Err(Error::Accuracy { .. })
        ));
    }

    #[test]
    fn increasing_in_population() {
        let s = PowerSettings::default();
        let values: Vec<f64> = [0.01, 0.1, 0.4, 0.8, 1.0]
            .iter()
            .map(|&p| entangling_power_for_population(p, &s).unwrap().value)
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]));
    }
}
