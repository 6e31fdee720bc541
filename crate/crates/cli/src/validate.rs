//! Oracle suite behind `dqsim validate`: every closed form against an
//! independent reference, reported as one row per check.

use std::fmt::Write as _;

use anyhow::Result;
use dqsim_core::entanglement::{
    concurrence_closed, concurrence_wootters, entangling_power_for_population, swapped_state,
    von_neumann_entropy, PowerSettings,
};
use dqsim_core::oracle::{
    joint_state, schmidt_field_entropy, volterra::rate_bound, DiscretizedReservoir, SolverMethod,
    SolverSettings,
};
use dqsim_core::presets::{figure_parameter_sets, reference};
use dqsim_core::spectrum::continuum_norm;
use dqsim_core::{
    amplitude, amplitude_trajectory, discretized_mode_solve, uniform_times, volterra_solve,
    DressedFrame, QubitInitialState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    /// Worst observed deviation.
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5);
        let mut out = format!("{:<width$}  {:>10}  {:>10}  status\n", "check", "max error", "tolerance");
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<width$}  {:>10.3e}  {:>10.3e}  {status}",
                c.name, c.error, c.tolerance
            );
        }
        out
    }

    fn push(&mut self, name: impl Into<String>, error: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            error,
            tolerance,
        });
    }
}

fn max(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Run the suite. `strict` adds the discrete-mode oracle on every parameter
/// set and a 10⁶-sample Monte-Carlo power check.
pub fn run_validation(strict: bool) -> Result<Report> {
    let sets = figure_parameter_sets();
    let frames: Vec<DressedFrame> = sets
        .iter()
        .map(|p| DressedFrame::new(*p))
        .collect::<Result<_, _>>()?;
    let mut report = Report::default();

    let long = uniform_times(50.0, 1001)?;
    let volterra_errors = frames
        .par_iter()
        .map(|fr| -> Result<f64> {
            let exact = amplitude_trajectory(fr, &long)?;
            let got = volterra_solve(fr, &long, &SolverSettings::for_frame(fr))?;
            Ok(got.max_abs_difference(&exact).unwrap_or(f64::INFINITY))
        })
        .collect::<Result<Vec<_>>>()?;
    report.push("volterra vs closed form, gamma t <= 50", max(volterra_errors), 1e-6);

    let ratios = frames
        .par_iter()
        .map(|fr| -> Result<f64> {
            let settings = SolverSettings::for_frame(fr);
            let h = settings.step;
            let n = (50.0 / (2.0 * h)).ceil() as usize;
            let times = uniform_times(2.0 * h * n as f64, n + 1)?;
            let exact = amplitude_trajectory(fr, &times)?;
            let fine = volterra_solve(fr, &times, &settings)?.max_abs_difference(&exact).unwrap_or(0.0);
            let coarse = volterra_solve(fr, &times, &settings.with_step(2.0 * h))?
                .max_abs_difference(&exact)
                .unwrap_or(0.0);
            Ok((coarse / fine - 16.0).abs())
        })
        .collect::<Result<Vec<_>>>()?;
    report.push("volterra step-doubling ratio, |ratio - 16|", max(ratios), 4.0);

    let mid = uniform_times(20.0, 41)?;
    let trapezoid_errors = frames
        .par_iter()
        .map(|fr| -> Result<f64> {
            let s = SolverSettings::for_frame(fr)
                .with_method(SolverMethod::TrapezoidConvolution)
                .with_step(0.005 / rate_bound(fr));
            let exact = amplitude_trajectory(fr, &mid)?;
            Ok(volterra_solve(fr, &mid, &s)?.max_abs_difference(&exact).unwrap_or(f64::INFINITY))
        })
        .collect::<Result<Vec<_>>>()?;
    report.push("trapezoid convolution vs closed form, gamma t <= 20", max(trapezoid_errors), 1e-3);

    let branch = frames.iter().flat_map(|fr| {
        long.iter().map(move |&t| {
            (amplitude(fr, t).unwrap() - amplitude(&fr.with_negated_branch(), t).unwrap()).norm()
        })
    });
    report.push("amplitude branch invariance", max(branch), 1e-12);

    let mode_frames: Vec<&DressedFrame> = if strict {
        frames.iter().collect()
    } else {
        frames
            .iter()
            .filter(|f| {
                let p = f.params();
                (p.rabi == 0.0 || p.rabi == 1.0 || p.drive_detuning == 1.0) && p.rabi != 0.1
            })
            .collect()
    };
    let short = uniform_times(25.0, 21)?;
    let mode_results = mode_frames
        .par_iter()
        .map(|fr| -> Result<(f64, f64, f64)> {
            let settings = SolverSettings::for_frame(fr);
            let reservoir = DiscretizedReservoir::from_settings(fr.params(), &settings)?;
            let sol = discretized_mode_solve(fr, &reservoir, &short, settings.step)?;
            let exact = amplitude_trajectory(fr, &short)?;
            let volterra = volterra_solve(fr, &short, &settings)?;
            Ok((
                sol.trajectory.max_abs_difference(&exact).unwrap_or(f64::INFINITY),
                sol.max_norm_drift(),
                sol.trajectory.max_abs_difference(&volterra).unwrap_or(f64::INFINITY),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    report.push(
        "discrete modes vs closed form, gamma t <= 25",
        max(mode_results.iter().map(|r| r.0)),
        2e-3,
    );
    report.push("discrete modes norm drift", max(mode_results.iter().map(|r| r.1)), 1e-8);
    report.push(
        "discrete modes vs volterra",
        max(mode_results.iter().map(|r| r.2)),
        2e-3,
    );

    let norm_errors = frames
        .par_iter()
        .map(|fr| -> Result<f64> {
            let mut worst = 0.0f64;
            for t in uniform_times(25.0, 21)?.into_iter().skip(1) {
                let expected = 1.0 - amplitude(fr, t)?.norm_sqr();
                worst = worst.max((continuum_norm(fr, t)? - expected).abs());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;
    report.push("continuum photon norm vs 1 - |E|^2", max(norm_errors), 1e-3);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut concurrence_error = 0.0f64;
    for i in 0..10_000 {
        let fr = &frames[i % frames.len()];
        let a = QubitInitialState::new(rng.gen_range(0.0..=std::f64::consts::PI), rng.gen_range(0.0..std::f64::consts::TAU))?;
        let b = QubitInitialState::new(rng.gen_range(0.0..=std::f64::consts::PI), rng.gen_range(0.0..std::f64::consts::TAU))?;
        let t = rng.gen_range(0.0..50.0);
        let pair = swapped_state(fr, &a, &b, t)?;
        let closed = concurrence_closed(&pair)?;
        concurrence_error = concurrence_error.max((concurrence_wootters(&pair.density())? - closed).abs());
    }
    report.push("concurrence closed form vs Wootters (10^4 samples)", concurrence_error, 1e-9);

    let fig4 = DressedFrame::new(reference(0.1, 0.0))?;
    let settings = SolverSettings::for_frame(&fig4);
    let reservoir = DiscretizedReservoir::from_settings(fig4.params(), &settings)?;
    let sol = discretized_mode_solve(&fig4, &reservoir, &uniform_times(5.0, 2)?, settings.step)?;
    let init = QubitInitialState::new(std::f64::consts::FRAC_PI_2, 0.0)?;
    let joint = joint_state(&init, &sol);
    let field = schmidt_field_entropy(&joint)?;
    let qubit = von_neumann_entropy(&joint.qubit_density())?;
    report.push("field vs qubit entropy (Schmidt)", (field - qubit).abs(), 1e-8);

    let (times, samples): (&[f64], usize) = if strict {
        (&[0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0, 25.0], 1_000_000)
    } else {
        (&[0.0, 5.0, 20.0], 200_000)
    };
    let fig7 = DressedFrame::new(reference(0.0, 0.0))?;
    let mut power_gap = 0.0f64;
    for (i, &t) in times.iter().enumerate() {
        let p = amplitude(&fig7, t)?.norm_sqr();
        let q = entangling_power_for_population(p, &PowerSettings::default())?;
        let mc = entangling_power_for_population(p, &PowerSettings::monte_carlo(samples, 1000 + i as u64))?;
        let allowed = 1e-3f64.max(3.0 * mc.error);
        power_gap = power_gap.max((q.value - mc.value).abs() / allowed);
    }
    report.push("power quadrature vs Monte Carlo, gap / max(1e-3, 3 SE)", power_gap, 1.0);

    Ok(report)
}
