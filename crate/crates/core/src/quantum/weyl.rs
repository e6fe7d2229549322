use super::jacobi::eigenvalues_hermitian;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Margins below this count as a violation.
pub const WEYL_TOL: f64 = 1e-9;

const PSD_TOL: f64 = 1e-10;

/// Per-index differences `λ_i(A + B) - λ_i(A)`, eigenvalues descending.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylReport {
    pub margins: Vec<f64>,
    pub min_margin: f64,
    pub violated: bool,
}

/// Checks that adding a positive semidefinite `B` does not lower any ordered
/// eigenvalue of the Hermitian `A`.
pub fn weyl_check(a: &CMatrix, b: &CMatrix) -> Result<WeylReport> {
    if a.dim() != b.dim() {
        return Err(Error::validation(format!(
            "dimension mismatch: A is {0}x{0}, B is {1}x{1}",
            a.dim(),
            b.dim()
        )));
    }
    let lb = eigenvalues_hermitian(b)?;
    let floor = -PSD_TOL * b.frobenius_norm().max(1.0);
    if let Some(&min) = lb.last() {
        if min < floor {
            return Err(Error::validation(format!(
                "B is not positive semidefinite (eigenvalue {min:e})"
            )));
        }
    }
    let la = eigenvalues_hermitian(a)?;
    let lab = eigenvalues_hermitian(&a.add(b)?)?;
    let margins: Vec<f64> = lab.iter().zip(&la).map(|(x, y)| x - y).collect();
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(WeylReport {
        violated: min_margin < -WEYL_TOL,
        margins,
        min_margin,
    })
}
