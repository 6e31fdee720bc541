//! Qubit–qubit state left behind by a |Ψ⁻⟩ Bell measurement on the two
//! cavity fields, and its concurrence.
//!
//! After the projection the qubits are in
//! (X(|EG⟩ − |GE⟩) + Υ|GG⟩)/√𝓝 with
//!
//! * X = cos(θ₁/2)cos(θ₂/2)𝓔(t)
//! * Υ = sin(θ₁/2)cos(θ₂/2)e^{iφ₁} − sin(θ₂/2)cos(θ₁/2)e^{iφ₂}
//! * 𝓝 = 2|X|² + |Υ|²
//!
//! The photon pulse shape drops out of the normalized state.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::wootters::TwoQubitDensity;
use crate::dynamics::amplitude;
use crate::error::{Error, Result};
use crate::model::{DressedFrame, QubitInitialState};

/// Normalizations below this are treated as a vanishing projection.
pub const MIN_NORM: f64 = 1e-20;

/// Angle tolerance of [`max_entanglement_condition`].
pub const ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwappedPair {
    pub x: Complex64,
    pub upsilon: Complex64,
    pub norm: f64,
}

/// Υ for two initial qubit states; independent of time.
pub fn upsilon(init1: &QubitInitialState, init2: &QubitInitialState) -> Complex64 {
    let (c1, c2) = (init1.excited_weight(), init2.excited_weight());
    let (s1, s2) = ((0.5 * init1.theta()).sin(), (0.5 * init2.theta()).sin());
    s1 * c2 * Complex64::from_polar(1.0, init1.phi()) - s2 * c1 * Complex64::from_polar(1.0, init2.phi())
}

/// |Υ|² = ½(1 − cosθ₁cosθ₂ − sinθ₁sinθ₂cos(φ₁ − φ₂)).
pub fn upsilon_norm_sqr(init1: &QubitInitialState, init2: &QubitInitialState) -> f64 {
    0.5 * (1.0
        - init1.theta().cos() * init2.theta().cos()
        - init1.theta().sin() * init2.theta().sin() * (init1.phi() - init2.phi()).cos())
}

impl SwappedPair {
    /// Build the pair from the excited-state amplitude 𝓔 at some time.
    pub fn from_amplitude(
        excited_amplitude: Complex64,
        init1: &QubitInitialState,
        init2: &QubitInitialState,
    ) -> Result<Self> {
        let x = init1.excited_weight() * init2.excited_weight() * excited_amplitude;
        Self::from_parts(x, upsilon(init1, init2))
    }

    pub fn from_parts(x: Complex64, upsilon: Complex64) -> Result<Self> {
        let norm = 2.0 * x.norm_sqr() + upsilon.norm_sqr();
        if !(norm > MIN_NORM) {
            return Err(Error::ZeroProjection);
        }
        Ok(Self { x, upsilon, norm })
    }

    /// Normalized amplitudes in the basis {|EE⟩, |EG⟩, |GE⟩, |GG⟩}.
    pub fn state_vector(&self) -> [Complex64; 4] {
        let scale = 1.0 / self.norm.sqrt();
        [
            Complex64::default(),
            self.x * scale,
            -self.x * scale,
            self.upsilon * scale,
        ]
    }

    pub fn density(&self) -> TwoQubitDensity {
        TwoQubitDensity::from_pure(&self.state_vector())
    }
}

/// Post-measurement qubit pair at time `t`.
pub fn swapped_state(
    frame: &DressedFrame,
    init1: &QubitInitialState,
    init2: &QubitInitialState,
    t: f64,
) -> Result<SwappedPair> {
    SwappedPair::from_amplitude(amplitude(frame, t)?, init1, init2)
}

/// 2|X|²/(2|X|² + |Υ|²).
pub fn concurrence_closed(pair: &SwappedPair) -> Result<f64> {
    let norm = 2.0 * pair.x.norm_sqr() + pair.upsilon.norm_sqr();
    if !(norm > MIN_NORM) {
        return Err(Error::ZeroProjection);
    }
    Ok(2.0 * pair.x.norm_sqr() / norm)
}

/// Initial states for which the swapped pair is the Bell state |Ψ⁻⟩ at every
/// time with 𝓔 ≠ 0, i.e. Υ = 0 while X can be nonzero.
///
/// Υ vanishes for θ₁ = θ₂ with φ₁ − φ₂ ∈ {0, ±2π}. At θ = 0 the phase is a
/// coordinate artefact and any φ qualifies; θ = π leaves X ≡ 0 and no state.
pub fn max_entanglement_condition(init1: &QubitInitialState, init2: &QubitInitialState) -> bool {
    let theta = init1.theta();
    if (theta - init2.theta()).abs() > ANGLE_TOL {
        return false;
    }
    if (PI - theta) <= ANGLE_TOL {
        return false;
    }
    if theta <= ANGLE_TOL {
        return true;
    }
    let dphi = init1.phi() - init2.phi();
    [-TAU, 0.0, TAU]
        .iter()
        .any(|target| (dphi - target).abs() <= ANGLE_TOL)
}
