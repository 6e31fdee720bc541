//! Physical parameters, the dressed-state frame and the Lorentzian reservoir.
//!
//! All rates share one unit; the CLI reports them in multiples of `gamma`.
//! Absolute frequencies never appear: the qubit, drive, cavity and mode
//! frequencies enter only through the detunings
//!
//! * `drive_detuning`  Δ = ω₀ − ω_L
//! * `cavity_detuning` δ = ω₀ − ω_c
//! * mode offset       δ_k = ω_k − ω₀
//!
//! The dressed frame collects the derived quantities every closed form is
//! written in: the mixing angle η, the dressed splitting ω_D = √(Δ² + 4Ω²),
//! the complex kernel rate M = λ − i(ω_D + δ − Δ) and
//! 𝓕 = √(4M² − 2γλ(1 + cos η)²).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rates and detunings of a driven qubit coupled to a Lorentzian cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Microscopic qubit–reservoir coupling γ.
    pub gamma: f64,
    /// Spectral width λ of the Lorentzian coupling.
    pub lambda: f64,
    /// Classical drive coupling Ω.
    pub rabi: f64,
    /// Δ = ω₀ − ω_L.
    pub drive_detuning: f64,
    /// δ = ω₀ − ω_c.
    pub cavity_detuning: f64,
}

impl SystemParams {
    pub fn new(
        gamma: f64,
        lambda: f64,
        rabi: f64,
        drive_detuning: f64,
        cavity_detuning: f64,
    ) -> Result<Self> {
        let params = Self {
            gamma,
            lambda,
            rabi,
            drive_detuning,
            cavity_detuning,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("gamma", self.gamma),
            ("lambda", self.lambda),
            ("rabi", self.rabi),
            ("drive_detuning", self.drive_detuning),
            ("cavity_detuning", self.cavity_detuning),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::ParameterDomain {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        if self.gamma <= 0.0 {
            return Err(Error::ParameterDomain {
                name: "gamma",
                value: self.gamma,
                reason: "must be > 0",
            });
        }
        if self.lambda <= 0.0 {
            return Err(Error::ParameterDomain {
                name: "lambda",
                value: self.lambda,
                reason: "must be > 0",
            });
        }
        if self.rabi < 0.0 {
            return Err(Error::ParameterDomain {
                name: "rabi",
                value: self.rabi,
                reason: "must be >= 0",
            });
        }
        Ok(())
    }

    /// λ > γ: the reservoir correlation time is shorter than the qubit relaxation time.
    pub fn is_weak_coupling(&self) -> bool {
        self.lambda > self.gamma
    }

    /// λ < γ: the non-Markovian regime.
    pub fn is_strong_coupling(&self) -> bool {
        self.lambda < self.gamma
    }

    /// Lorentzian spectral density J as a function of `omega_offset` = ω₀ − ω_k.
    pub fn spectral_density(&self, omega_offset: f64) -> f64 {
        let detuned = omega_offset - self.cavity_detuning;
        self.gamma * self.lambda * self.lambda
            / (TAU * (detuned * detuned + self.lambda * self.lambda))
    }

    /// The same density expressed in the mode offset δ_k = ω_k − ω₀.
    pub fn density_at_mode(&self, delta_k: f64) -> f64 {
        self.spectral_density(-delta_k)
    }

    /// Mode offset δ_k of the cavity centre, where J peaks.
    pub fn cavity_center(&self) -> f64 {
        -self.cavity_detuning
    }
}

/// Free-function form of [`SystemParams::spectral_density`].
pub fn spectral_density(params: &SystemParams, omega_offset: f64) -> f64 {
    params.spectral_density(omega_offset)
}

/// Derived quantities of the dressed basis {|E⟩, |G⟩}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedFrame {
    eta: f64,
    omega_d: f64,
    m: Complex64,
    f: Complex64,
    params: SystemParams,
}

impl DressedFrame {
    pub fn new(params: SystemParams) -> Result<Self> {
        params.validate()?;
        let SystemParams {
            gamma,
            lambda,
            rabi,
            drive_detuning,
            cavity_detuning,
        } = params;

        // Without a drive the dressed basis is the bare basis, also at Δ = 0.
        let eta = if rabi == 0.0 && drive_detuning == 0.0 {
            0.0
        } else {
            (2.0 * rabi).atan2(drive_detuning)
        };
        let omega_d = drive_detuning.hypot(2.0 * rabi);
        let m = Complex64::new(lambda, -(omega_d + cavity_detuning - drive_detuning));
        let one_plus_cos = 1.0 + eta.cos();
        let f = (4.0 * m * m - 2.0 * gamma * lambda * one_plus_cos * one_plus_cos).sqrt();

        Ok(Self {
            eta,
            omega_d,
            m,
            f,
            params,
        })
    }

    /// Mixing angle η ∈ [0, π].
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Dressed qubit frequency ω_D.
    pub fn omega_d(&self) -> f64 {
        self.omega_d
    }

    /// Kernel rate M.
    pub fn m(&self) -> Complex64 {
        self.m
    }

    /// 𝓕 on the principal branch (unless [`Self::with_negated_branch`] was used).
    pub fn f(&self) -> Complex64 {
        self.f
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// cos²(η/2), the dressed coupling prefactor.
    pub fn cos2_half_eta(&self) -> f64 {
        let c = (0.5 * self.eta).cos();
        c * c
    }

    /// cos⁴(η/2), the prefactor of the memory kernel.
    pub fn kernel_weight(&self) -> f64 {
        let c2 = self.cos2_half_eta();
        c2 * c2
    }

    /// Product of the two decay exponents: cos⁴(η/2)·γλ/2.
    pub fn memory_strength(&self) -> f64 {
        0.5 * self.kernel_weight() * self.params.gamma * self.params.lambda
    }

    /// The two exponents −M/2 ± 𝓕/4 of the excited-state amplitude, `[+, −]`.
    pub fn exponents(&self) -> [Complex64; 2] {
        let half_m = 0.5 * self.m;
        let quarter_f = 0.25 * self.f;
        [-half_m + quarter_f, -half_m - quarter_f]
    }

    /// Residue weights 1/2 ± M/𝓕, `[+, −]`. Infinite at an exceptional point 𝓕 = 0.
    pub fn residues(&self) -> [Complex64; 2] {
        let ratio = self.m / self.f;
        [0.5 + ratio, 0.5 - ratio]
    }

    /// Copy of the frame with 𝓕 → −𝓕. Physical results must not change.
    pub fn with_negated_branch(&self) -> Self {
        Self {
            f: -self.f,
            ..*self
        }
    }

    /// Magnitude scale used for the removable-singularity thresholds.
    pub fn rate_scale(&self) -> f64 {
        let p = &self.params;
        self.m.norm() + (p.gamma * p.lambda).sqrt()
    }

    /// True when |𝓕| is small enough that the degenerate-root limit formulas apply.
    pub fn is_exceptional(&self) -> bool {
        self.f.norm() < EXCEPTIONAL_THRESHOLD * self.rate_scale()
    }

    /// Largest real part of the two decay exponents.
    pub fn slowest_decay(&self) -> f64 {
        let [plus, minus] = self.exponents();
        plus.re.max(minus.re)
    }

    /// Mode offsets δ_k at which each photon resonance |−M/2 ± 𝓕/4 + iν| is smallest,
    /// where ν = δ_k + Δ − ω_D. Ordered `[+, −]`.
    pub fn photon_resonances(&self) -> [f64; 2] {
        let base = self.omega_d - self.params.drive_detuning;
        self.exponents().map(|s| base - s.im)
    }
}

/// Relative size of |𝓕| below which the degenerate-root formulas are used.
pub(crate) const EXCEPTIONAL_THRESHOLD: f64 = 1e-8;

pub fn dressed_frame(params: SystemParams) -> Result<DressedFrame> {
    DressedFrame::new(params)
}

/// Initial qubit state cos(θ/2)|E⟩ + sin(θ/2)e^{iφ}|G⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitInitialState {
    theta: f64,
    phi: f64,
}

impl QubitInitialState {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::ParameterDomain {
                name: "theta",
                value: theta,
                reason: "must lie in [0, π]",
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::ParameterDomain {
                name: "phi",
                value: phi,
                reason: "must lie in [0, 2π)",
            });
        }
        Ok(Self { theta, phi })
    }

    /// The excited dressed state |E⟩.
    pub fn excited() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Weight cos(θ/2) of |E⟩.
    pub fn excited_weight(&self) -> f64 {
        (0.5 * self.theta).cos()
    }

    /// Amplitude sin(θ/2)e^{iφ} of |G⟩.
    pub fn ground_amplitude(&self) -> Complex64 {
        Complex64::from_polar((0.5 * self.theta).sin(), self.phi)
    }

    /// Shift φ by `shift`, wrapping back into [0, 2π).
    pub fn with_phase_shift(&self, shift: f64) -> Self {
        let mut phi = (self.phi + shift).rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { phi, ..*self }
    }
}
