//! Field-side entropy of the joint qubit–field pure state.
//!
//! The state a|E,0⟩ + b|G,0⟩ + Σ_k p_k|G,1_k⟩ has a field reduction supported
//! on span{|0⟩, |Ĝ⟩}, Ĝ ∝ Σ p_k|1_k⟩, where it reads
//! [[|a|² + |b|², b·n], [b*·n, n²]] with n = ‖p‖.

use num_complex::Complex64;

use super::modes::DiscreteSolution;
use crate::dynamics::ReducedDensityMatrix;
use crate::entanglement::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::model::QubitInitialState;
use crate::quadrature::CompensatedSum;

/// Largest accepted deviation of the joint norm from 1.
pub const NORM_TOL: f64 = 1e-6;

/// Joint pure state in the single-excitation sector.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    /// Coefficient of |E, 0⟩.
    pub excited: Complex64,
    /// Coefficient of |G, 0⟩.
    pub ground: Complex64,
    /// Coefficients of |G, 1_k⟩.
    pub photons: Vec<Complex64>,
}

impl JointState {
    pub fn norm(&self) -> f64 {
        let mut sum = CompensatedSum::default();
        sum.add(self.excited.norm_sqr());
        sum.add(self.ground.norm_sqr());
        for p in &self.photons {
            sum.add(p.norm_sqr());
        }
        sum.value()
    }

    fn photon_norm_sqr(&self) -> f64 {
        self.photons.iter().map(|p| p.norm_sqr()).collect::<CompensatedSum>().value()
    }

    /// Qubit reduction, obtained by tracing out the modes.
    pub fn qubit_density(&self) -> ReducedDensityMatrix {
        let n = self.norm();
        let eg = self.excited * self.ground.conj() / n;
        ReducedDensityMatrix {
            ee: (self.excited.norm_sqr() / n).into(),
            eg,
            ge: eg.conj(),
            gg: ((self.ground.norm_sqr() + self.photon_norm_sqr()) / n).into(),
        }
    }
}

/// Joint state at the final time of a discrete-mode run for initial qubit
/// state `init`; the run itself starts from |E, 0⟩.
pub fn joint_state(init: &QubitInitialState, solution: &DiscreteSolution) -> JointState {
    let c = init.excited_weight();
    let last = solution.trajectory.values[solution.trajectory.len() - 1];
    JointState {
        excited: c * last,
        ground: init.ground_amplitude(),
        photons: solution.modes.iter().map(|g| c * g).collect(),
    }
}

/// Von Neumann entropy of the field reduction, from its 2×2 Schmidt block.
pub fn schmidt_field_entropy(state: &JointState) -> Result<f64> {
    let total = state.norm();
    let deviation = total - 1.0;
    if !(deviation.abs() <= NORM_TOL) {
        return Err(Error::Normalization { deviation });
    }
    let n_sqr = state.photon_norm_sqr();
    let vacuum = (state.excited.norm_sqr() + state.ground.norm_sqr()) / total;
    let coherence = state.ground * n_sqr.sqrt() / total;
    let field = ReducedDensityMatrix {
        ee: vacuum.into(),
        eg: coherence,
        ge: coherence.conj(),
        gg: (n_sqr / total).into(),
    };
    von_neumann_entropy(&field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::AmplitudeTrajectory;

    #[test]
    fn product_state_has_no_entropy() {
        let state = JointState {
            excited: Complex64::new(0.6, 0.0),
            ground: Complex64::new(0.0, 0.8),
            photons: vec![Complex64::default(); 3],
        };
        assert!(schmidt_field_entropy(&state).unwrap().abs() < 1e-15);
    }

    #[test]
    fn matches_qubit_side_for_random_state() {
        let state = JointState {
            excited: Complex64::new(0.3, -0.2),
            ground: Complex64::new(0.5, 0.1),
            photons: vec![Complex64::new(0.4, 0.3), Complex64::new(-0.2, 0.45), Complex64::new(0.1, 0.0)],
        };
        let n = state.norm().sqrt();
        let state = JointState {
            excited: state.excited / n,
            ground: state.ground / n,
            photons: state.photons.iter().map(|p| p / n).collect(),
        };
        let field = schmidt_field_entropy(&state).unwrap();
        let qubit = von_neumann_entropy(&state.qubit_density()).unwrap();
        assert!((field - qubit).abs() < 1e-12, "{field} vs {qubit}");
    }

    #[test]
    fn rejects_unnormalized_state() {
        let state = JointState {
            excited: Complex64::new(1.0, 0.0),
            ground: Complex64::new(0.1, 0.0),
            photons: vec![],
        };
        assert!(matches!(
            schmidt_field_entropy(&state),
            Err(Error::Normalization { .. })
        ));
    }

    #[test]
    fn joint_state_from_solution() {
        let sol = DiscreteSolution {
            trajectory: AmplitudeTrajectory {
                times: vec![0.0, 1.0],
                values: vec![Complex64::new(1.0, 0.0), Complex64::new(0.6, 0.0)],
            },
            modes: vec![Complex64::new(0.0, 0.8)],
            norms: vec![1.0, 1.0],
        };
        let init = QubitInitialState::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        let joint = joint_state(&init, &sol);
        assert!((joint.norm() - 1.0).abs() < 1e-15);
        let field = schmidt_field_entropy(&joint).unwrap();
        let qubit = von_neumann_entropy(&joint.qubit_density()).unwrap();
        assert!((field - qubit).abs() < 1e-12);
    }
}
