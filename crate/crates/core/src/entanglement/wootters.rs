//! Two-qubit density matrices and the Wootters concurrence.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

const STATE_TOL: f64 = 1e-10;

/// 4×4 density matrix in the product basis {|EE⟩, |EG⟩, |GE⟩, |GG⟩}.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity(Matrix4<Complex64>);

impl TwoQubitDensity {
    /// Validate Hermiticity, unit trace and positivity (eigenvalues ≥ −1e-10).
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self> {
        let defect = (matrix - matrix.adjoint()).norm();
        if defect > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian (defect {defect:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace - 1.0).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let rho = Self(matrix);
        let min_eigenvalue = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -STATE_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(rho)
    }

    /// |ψ⟩⟨ψ| for a normalized state vector.
    pub fn from_pure(psi: &[Complex64; 4]) -> Self {
        let v = nalgebra::Vector4::from_column_slice(psi);
        Self(v * v.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity() * Complex64::new(0.25, 0.0))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// Eigenvalues of the Hermitian matrix, unsorted.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = SymmetricEigen::new(self.0);
        [
            eig.eigenvalues[0],
            eig.eigenvalues[1],
            eig.eigenvalues[2],
            eig.eigenvalues[3],
        ]
    }
}

/// σ_y ⊗ σ_y in the product basis.
fn spin_flip() -> Matrix4<Complex64> {
    let mut y = Matrix4::<Complex64>::zeros();
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

/// max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄), λᵢ the decreasing eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
///
/// The √λᵢ are taken as the singular values of √ρ (σ_y⊗σ_y) √ρ*, whose Gram
/// matrix is √ρ ρ̃ √ρ. That avoids square roots of round-off sized eigenvalues.
pub fn concurrence_wootters(rho: &TwoQubitDensity) -> Result<f64> {
    let eig = SymmetricEigen::new(rho.0);
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -STATE_TOL {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    let root_diag = Matrix4::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)),
    );
    let sqrt_rho = eig.eigenvectors * root_diag * eig.eigenvectors.adjoint();
    let a = sqrt_rho * spin_flip() * sqrt_rho.conjugate();
    let mut roots: Vec<f64> = a.singular_values().iter().copied().collect();
    roots.sort_by(|x, y| y.total_cmp(x));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}
