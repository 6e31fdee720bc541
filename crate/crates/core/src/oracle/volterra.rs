//! Direct integration of the memory equation
//!
//! 𝓔̇(t) = −K ∫₀ᵗ e^{−M(t−t′)} 𝓔(t′) dt′,  𝓔(0) = 1,  K = cos⁴(η/2)γλ/2.
//!
//! The exponential kernel admits the auxiliary variable
//! y(t) = ∫₀ᵗ e^{−M(t−t′)}𝓔(t′)dt′, turning the equation into the linear
//! system 𝓔̇ = −K y, ẏ = 𝓔 − M y. A second path discretizes the memory
//! integral itself with the trapezoid rule.

use num_complex::Complex64;

use super::grid_spacing;
use crate::dynamics::AmplitudeTrajectory;
use crate::error::{Error, Result};
use crate::model::DressedFrame;

/// Largest allowed value of step · max(λ, ω_D, |𝓕|, γ).
pub const MAX_STEP_PRODUCT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMethod {
    /// Classical RK4 on the (𝓔, y) system.
    Auxiliary,
    /// Trapezoid rule for both the memory integral and the time derivative.
    TrapezoidConvolution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub step: f64,
    /// Half-width W of the discretized reservoir window around the cavity centre.
    pub window_half_width: f64,
    pub modes: usize,
    pub method: SolverMethod,
}

/// max(λ, ω_D, |𝓕|, γ): the fastest rate the integrators must resolve.
pub fn rate_bound(frame: &DressedFrame) -> f64 {
    let p = frame.params();
    p.lambda.max(frame.omega_d()).max(frame.f().norm()).max(p.gamma)
}

impl SolverSettings {
    /// Defaults scaled to the frame's rates.
    pub fn for_frame(frame: &DressedFrame) -> Self {
        let p = frame.params();
        Self {
            step: 0.025 / rate_bound(frame),
            window_half_width: 80.0 * p.lambda
                + 10.0 * (frame.omega_d() + p.cavity_detuning.abs() + p.drive_detuning.abs()),
            modes: 4000,
            method: SolverMethod::Auxiliary,
        }
    }

    pub fn with_step(self, step: f64) -> Self {
        Self { step, ..self }
    }

    pub fn with_method(self, method: SolverMethod) -> Self {
        Self { method, ..self }
    }

    pub fn validate(&self, frame: &DressedFrame) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::Settings(format!("step must be positive, got {}", self.step)));
        }
        let product = self.step * rate_bound(frame);
        if product > MAX_STEP_PRODUCT {
            return Err(Error::Settings(format!(
                "step {} too large: step x max rate = {product:.4} exceeds {MAX_STEP_PRODUCT}",
                self.step
            )));
        }
        if !(self.window_half_width > 0.0 && self.window_half_width.is_finite()) {
            return Err(Error::Settings(format!(
                "window half-width must be positive, got {}",
                self.window_half_width
            )));
        }
        if self.modes == 0 {
            return Err(Error::Settings("mode count must be positive".into()));
        }
        Ok(())
    }
}

/// Integrate the memory equation on a uniform grid starting at 0.
pub fn volterra_solve(
    frame: &DressedFrame,
    times: &[f64],
    settings: &SolverSettings,
) -> Result<AmplitudeTrajectory> {
    settings.validate(frame)?;
    let spacing = grid_spacing(times)?;
    let substeps = if spacing == 0.0 {
        1
    } else {
        (spacing / settings.step).ceil().max(1.0) as usize
    };
    let h = if spacing == 0.0 { 0.0 } else { spacing / substeps as f64 };
    let values = match settings.method {
        SolverMethod::Auxiliary => auxiliary(frame, times.len(), substeps, h),
        SolverMethod::TrapezoidConvolution => trapezoid(frame, times.len(), substeps, h),
    };
    Ok(AmplitudeTrajectory {
        times: times.to_vec(),
        values,
    })
}

fn auxiliary(frame: &DressedFrame, samples: usize, substeps: usize, h: f64) -> Vec<Complex64> {
    let k = frame.memory_strength();
    let m = frame.m();
    let rhs = |e: Complex64, y: Complex64| (-k * y, e - m * y);
    let (mut e, mut y) = (Complex64::new(1.0, 0.0), Complex64::default());
    let mut out = Vec::with_capacity(samples);
    out.push(e);
    for _ in 1..samples {
        for _ in 0..substeps {
            let (k1e, k1y) = rhs(e, y);
            let (k2e, k2y) = rhs(e + 0.5 * h * k1e, y + 0.5 * h * k1y);
            let (k3e, k3y) = rhs(e + 0.5 * h * k2e, y + 0.5 * h * k2y);
            let (k4e, k4y) = rhs(e + h * k3e, y + h * k3y);
            e += h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        }
        out.push(e);
    }
    out
}

/// Second-order path: y_n by the trapezoid rule over the stored history,
/// 𝓔_{n+1} = 𝓔_n − (h/2)K(y_n + y_{n+1}) solved for the implicit 𝓔_{n+1}.
fn trapezoid(frame: &DressedFrame, samples: usize, substeps: usize, h: f64) -> Vec<Complex64> {
    let k = frame.memory_strength();
    let m = frame.m();
    let total = (samples - 1) * substeps;
    let decay: Vec<Complex64> = (0..=total).map(|j| (-m * (h * j as f64)).exp()).collect();
    let mut history = Vec::with_capacity(total + 1);
    history.push(Complex64::new(1.0, 0.0));
    let mut y_prev = Complex64::default();
    for n in 0..total {
        // Known part of y_{n+1}: all history points, endpoint excluded.
        let mut partial = 0.5 * decay[n + 1] * history[0];
        for (j, e) in history.iter().enumerate().skip(1) {
            partial += decay[n + 1 - j] * e;
        }
        partial *= h;
        let e_n = history[n];
        let e_next = (e_n - 0.5 * h * k * (y_prev + partial)) / (1.0 + 0.25 * h * h * k);
        y_prev = partial + 0.5 * h * e_next;
        history.push(e_next);
    }
    history.into_iter().step_by(substeps).collect()
}
