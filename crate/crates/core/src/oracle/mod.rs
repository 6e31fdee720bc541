//! Brute-force reference solvers used to validate the closed forms.

pub mod modes;
pub mod schmidt;
pub mod volterra;

pub use modes::{discretized_mode_solve, DiscreteSolution, DiscretizedReservoir};
pub use schmidt::{joint_state, schmidt_field_entropy, JointState};
pub use volterra::{volterra_solve, SolverMethod, SolverSettings};

use crate::error::{Error, Result};

/// Check that `times` is uniform and starts at 0; returns the spacing
/// (0 for a single sample).
pub(crate) fn grid_spacing(times: &[f64]) -> Result<f64> {
    match times {
        [] => Err(Error::Grid("time grid is empty".into())),
        [first, ..] if *first != 0.0 => Err(Error::Grid(format!(
            "time grid must start at 0, got {first}"
        ))),
        [_] => Ok(0.0),
        [_, rest @ ..] => {
            let n = rest.len() as f64;
            let spacing = rest[rest.len() - 1] / n;
            if !(spacing > 0.0 && spacing.is_finite()) {
                return Err(Error::Grid("time grid must be increasing".into()));
            }
            for (i, t) in times.iter().enumerate() {
                if (t - spacing * i as f64).abs() > 1e-9 * spacing.max(*t) {
                    return Err(Error::Grid(format!("time grid is not uniform at index {i}")));
                }
            }
            Ok(spacing)
        }
    }
}
