//! Qubit–field entanglement through the von Neumann entropy of the qubit.

use crate::dynamics::{reduced_density, ReducedDensityMatrix};
use crate::error::{Error, Result};
use crate::model::{DressedFrame, QubitInitialState};

const STATE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-12;
/// Eigenvalues this close to zero are rounding noise of a pure state.
const ROUNDING_FLOOR: f64 = 8.0 * f64::EPSILON;

/// −p ln p with 0 ln 0 = 0.
fn entropy_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.ln()
    }
}

/// Shannon entropy (natural log) of the two-outcome distribution {p, 1 − p}.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_term(p) + entropy_term(1.0 - p)
}

/// −Tr ρ ln ρ in nats; lies in [0, ln 2].
pub fn von_neumann_entropy(rho: &ReducedDensityMatrix) -> Result<f64> {
    if rho.hermiticity_defect() > STATE_TOL {
        return Err(Error::InvalidState(format!(
            "density matrix is not Hermitian (defect {:e})",
            rho.hermiticity_defect()
        )));
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
    }
    let [low, _] = rho.eigenvalues();
    if low < -PSD_TOL {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: low,
        });
    }
    if low <= ROUNDING_FLOOR {
        return Ok(0.0);
    }
    Ok(binary_entropy(low.min(0.5)))
}

/// Entropy of the qubit reduced state at each time.
pub fn entropy_trajectory(
    frame: &DressedFrame,
    init: &QubitInitialState,
    times: &[f64],
) -> Result<Vec<f64>> {
    times
        .iter()
        .map(|&t| von_neumann_entropy(&reduced_density(frame, init, t)?))
        .collect()
}

/// Outcome of an Araki–Lieb triangle-inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArakiLiebReport {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub joint_entropy: f64,
    /// Amount by which the joint entropy leaves [lower, upper]; 0 when satisfied.
    pub violation: f64,
}

impl ArakiLiebReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.violation <= tol
    }
}

/// Entropy of the joint qubit–field state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JointEntropy {
    Pure,
    Mixed(f64),
}

/// |S_A − S_F| ≤ S_AF ≤ S_A + S_F. For a pure joint state this forces S_A = S_F.
pub fn araki_lieb_check(joint: JointEntropy, s_a: f64, s_f: f64) -> ArakiLiebReport {
    let joint_entropy = match joint {
        JointEntropy::Pure => 0.0,
        JointEntropy::Mixed(s) => s,
    };
    let lower_bound = (s_a - s_f).abs();
    let upper_bound = s_a + s_f;
    let violation = (lower_bound - joint_entropy)
        .max(joint_entropy - upper_bound)
        .max(0.0);
    ArakiLiebReport {
        lower_bound,
        upper_bound,
        joint_entropy,
        violation,
    }
}

/// Time after which the qubit entropy stays below `threshold` for good,
/// i.e. the last crossing of S(t) = threshold. `None` if S never reaches it.
///
/// A decaying envelope |𝓔(t)| ≤ Σ|A±|e^{Re(s±)t} bounds the smaller eigenvalue
/// of ρ by cos²(θ/2)|𝓔|², which fixes a finite search horizon.
pub fn entropy_survival_time(
    frame: &DressedFrame,
    init: &QubitInitialState,
    threshold: f64,
) -> Result<Option<f64>> {
    if !(threshold > 0.0 && threshold < std::f64::consts::LN_2) {
        return Err(Error::ParameterDomain {
            name: "threshold",
            value: threshold,
            reason: "must lie in (0, ln 2)",
        });
    }
    let slowest = frame.slowest_decay();
    if slowest >= -crate::spectrum::DECAY_MARGIN {
        return Err(Error::NonDecaying {
            exponent_re: slowest,
        });
    }

    // Smaller root of h(p) = threshold.
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < threshold {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_low = lo;

    let weight = init.excited_weight().powi(2);
    let residues = frame.residues();
    let exponents = frame.exponents();
    let envelope = |t: f64| -> f64 {
        if frame.is_exceptional() {
            let m = frame.m();
            (-0.5 * m.re * t).exp() * (1.0 + 0.5 * m.norm() * t)
        } else {
            residues
                .iter()
                .zip(&exponents)
                .map(|(a, s)| a.norm() * (s.re * t).exp())
                .sum()
        }
    };
    let mut horizon = 1.0;
    while weight * envelope(horizon).powi(2) >= p_low {
        horizon *= 2.0;
        if horizon > 1e12 {
            return Err(Error::NonDecaying {
                exponent_re: slowest,
            });
        }
    }

    let entropy_at = |t: f64| -> Result<f64> { von_neumann_entropy(&reduced_density(frame, init, t)?) };
    let fastest = exponents.iter().map(|s| s.norm()).fold(1e-3, f64::max);
    let step = (0.05 / fastest).min(horizon / 16.0);
    let samples = (horizon / step).ceil() as usize;
    let mut last_above = None;
    for i in (0..=samples).rev() {
        let t = horizon * i as f64 / samples as f64;
        if entropy_at(t)? >= threshold {
            last_above = Some((t, horizon * (i + 1) as f64 / samples as f64));
            break;
        }
    }
    let Some((mut a, mut b)) = last_above else {
        return Ok(None);
    };
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if entropy_at(mid)? >= threshold {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}
