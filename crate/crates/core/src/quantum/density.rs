use super::jacobi::{eigen_decomposition, HERMITIAN_TOL};
use super::matrix::CMatrix;
use crate::entropy::{renyi_entropy, Entropy, EntropyOrder, ProbVector, NORMALIZATION_TOL};
use crate::error::{Error, Result};
use crate::smoothing::{smooth_subball, SmoothingResult};

/// Eigenvalues within this distance of zero are treated as zero; more
/// negative ones make the matrix invalid.
pub const EIGEN_ZERO_TOL: f64 = 1e-10;

/// Eigenvalues of a (sub-normalized) density matrix, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Clips values in `[-1e-10, 1e-10]` to zero and sorts descending.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::validation("spectrum must be non-empty"));
        }
        for (i, x) in values.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::validation(format!("eigenvalue {i} is not finite")));
            }
            if *x < -EIGEN_ZERO_TOL {
                return Err(Error::validation(format!(
                    "matrix is not positive semidefinite (eigenvalue {x:e})"
                )));
            }
            if x.abs() <= EIGEN_ZERO_TOL {
                *x = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = values.iter().sum();
        if total > 1.0 + NORMALIZATION_TOL {
            return Err(Error::validation(format!("eigenvalues sum to {total} > 1")));
        }
        Ok(Spectrum { eigenvalues: values })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of nonzero eigenvalues.
    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x > 0.0).count()
    }

    /// The eigenvalues as a classical distribution, in descending order.
    pub fn to_prob_vector(&self) -> ProbVector {
        ProbVector::from_trusted(self.eigenvalues.clone())
    }
}

/// Hermitian positive semidefinite matrix with trace 1 (or at most 1 when
/// built as sub-normalized). The eigendecomposition is computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    spectrum: Spectrum,
    eigenvectors: CMatrix,
    normalized: bool,
}

impl DensityMatrix {
    /// Validates a normalized state: Hermitian, PSD, trace within 1e-9 of 1.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::build(matrix, true)
    }

    /// Like [`DensityMatrix::new`] but accepts any trace in `(0, 1]`.
    pub fn subnormalized(matrix: CMatrix) -> Result<Self> {
        Self::build(matrix, false)
    }

    /// `V · diag(λ) · V†` for a unitary `V`.
    pub fn from_eigen(eigenvalues: &[f64], basis: &CMatrix) -> Result<Self> {
        Self::new(basis.conjugate_diagonal(eigenvalues)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(CMatrix::from_real_diagonal(&vec![1.0 / dim as f64; dim]))
    }

    fn build(matrix: CMatrix, normalized: bool) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::validation(format!(
                "density matrix is not Hermitian (max |ρ_ij - conj(ρ_ji)| = {defect:e})"
            )));
        }
        let trace = matrix.trace().re;
        if normalized && (trace - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::validation(format!("density matrix has trace {trace}, expected 1")));
        }
        if !normalized && !(trace > 0.0 && trace <= 1.0 + NORMALIZATION_TOL) {
            return Err(Error::validation(format!(
                "sub-normalized density matrix has trace {trace}"
            )));
        }
        let eigen = eigen_decomposition(&matrix)?;
        let spectrum = Spectrum::new(eigen.values)?;
        Ok(DensityMatrix {
            matrix,
            spectrum,
            eigenvectors: eigen.vectors,
            normalized,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Columns are eigenvectors, in the order of [`Spectrum::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `U ρ U†`.
    pub fn rotated(&self, u: &CMatrix) -> Result<Self> {
        let m = u.matmul(&self.matrix)?.matmul(&u.dagger())?;
        Self::build(m, self.normalized)
    }
}

/// Quantum Rényi entropy `S_α(ρ)`: the classical Rényi entropy of the
/// spectrum. α = 0 gives log rank, α = 1 the von Neumann entropy.
pub fn quantum_renyi(rho: &DensityMatrix, order: EntropyOrder) -> Result<Entropy> {
    renyi_entropy(&rho.spectrum.to_prob_vector(), order)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<Entropy> {
    quantum_renyi(rho, EntropyOrder::One)
}

/// Smooth quantum Rényi entropy over `{σ : 0 ≤ σ ≤ ρ, tr σ ≥ 1 - ε}`.
///
/// The optimum is diagonal in the eigenbasis of ρ, so this is the classical
/// sub-normalized smoothing of the spectrum. The witness is the spectrum μ of
/// the optimal σ, aligned with [`DensityMatrix::eigenvectors`].
pub fn smooth_quantum_renyi(
    rho: &DensityMatrix,
    order: EntropyOrder,
    eps: f64,
) -> Result<SmoothingResult> {
    if !rho.normalized {
        return Err(Error::validation("smoothing needs a normalized density matrix"));
    }
    smooth_subball(&rho.spectrum.to_prob_vector(), order, eps)
}

/// `σ = Σ_i μ_i |v_i⟩⟨v_i|` for a witness spectrum μ in the eigenbasis of ρ.
pub fn witness_operator(rho: &DensityMatrix, mu: &ProbVector) -> Result<CMatrix> {
    if mu.len() != rho.dim() {
        return Err(Error::validation(format!(
            "witness spectrum has {} entries for a {}-dimensional state",
            mu.len(),
            rho.dim()
        )));
    }
    rho.eigenvectors.conjugate_diagonal(mu.atoms())
}
