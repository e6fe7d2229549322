//! Density matrices and their (smooth) Rényi entropies, computed through
//! the eigenvalue spectrum, plus a Hermitian eigensolver, Weyl monotonicity
//! checks and block sources whose spectra are classical block distributions.

mod complex;
mod density;
mod jacobi;
mod matrix;
mod source;
mod weyl;

pub use complex::Complex;
pub use density::{
    quantum_renyi, smooth_quantum_renyi, von_neumann_entropy, witness_operator, DensityMatrix,
    Spectrum, EIGEN_ZERO_TOL,
};
pub use jacobi::{
    eigen_decomposition, eigenvalues_hermitian, EigenDecomposition, HERMITIAN_TOL, MAX_EIGEN_DIM,
};
pub use matrix::{random_ginibre, random_hermitian, random_unitary, CMatrix};
pub use source::{cc_block_density, quantum_typical_report, QuantumBlockSource, MAX_EXPLICIT_DIM};
pub use weyl::{weyl_check, WeylReport, WEYL_TOL};
