use super::density::{von_neumann_entropy, DensityMatrix};
use super::matrix::CMatrix;
use crate::entropy::{Entropy, LogBase};
use crate::error::{Error, Result};
use crate::sources::{
    block_distribution, block_spectrum, entropy_rate, iid_spectrum, typical_set_report,
    MarkovChain, TypicalSetReport, MAX_BLOCK_ATOMS,
};
use crate::spectrum::{SpectrumClass, WeightedSpectrum};

/// Largest block dimension `d^n` built as an explicit matrix.
pub const MAX_EXPLICIT_DIM: usize = 64;

const UNITARY_TOL: f64 = 1e-9;

/// A stationary quantum source given by its block densities `ρ^(n)`.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumBlockSource {
    /// `ρ^(n) = base^{⊗n}`.
    Product { base: DensityMatrix },
    /// `ρ^(n) = Σ P^n(z^n) |u_{z^n}⟩⟨u_{z^n}|` with `|u_{z^n}⟩ = U^{⊗n} |z^n⟩`.
    ClassicallyCorrelated { chain: MarkovChain, unitary: CMatrix },
}

impl QuantumBlockSource {
    pub fn product(base: DensityMatrix) -> Result<Self> {
        if !base.is_normalized() {
            return Err(Error::validation("base: density matrix must be normalized"));
        }
        Ok(QuantumBlockSource::Product { base })
    }

    /// `unitary` defaults to the identity (a classical source embedded
    /// in the computational basis).
    pub fn classically_correlated(chain: MarkovChain, unitary: Option<CMatrix>) -> Result<Self> {
        let d = chain.states();
        let unitary = unitary.unwrap_or_else(|| CMatrix::identity(d));
        if unitary.dim() != d {
            return Err(Error::validation(format!(
                "unitary: dimension {} does not match {d} chain states",
                unitary.dim()
            )));
        }
        let defect = unitary.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::validation(format!(
                "unitary: not unitary (max |UU† - I| = {defect:e})"
            )));
        }
        Ok(QuantumBlockSource::ClassicallyCorrelated { chain, unitary })
    }

    /// Dimension of a single site.
    pub fn local_dim(&self) -> usize {
        match self {
            QuantumBlockSource::Product { base } => base.dim(),
            QuantumBlockSource::ClassicallyCorrelated { chain, .. } => chain.states(),
        }
    }

    /// von Neumann entropy rate `lim S(ρ^(n)) / n`.
    pub fn entropy_rate(&self) -> Result<Entropy> {
        match self {
            QuantumBlockSource::Product { base } => von_neumann_entropy(base),
            QuantumBlockSource::ClassicallyCorrelated { chain, .. } => Ok(entropy_rate(chain)),
        }
    }

    /// A classical chain whose block distributions have the same nonzero
    /// spectrum as `ρ^(n)`.
    pub fn classical_shadow(&self) -> Result<MarkovChain> {
        match self {
            QuantumBlockSource::Product { base } => {
                let positive: Vec<f64> = base
                    .spectrum()
                    .eigenvalues()
                    .iter()
                    .copied()
                    .filter(|&x| x > 0.0)
                    .collect();
                let total: f64 = positive.iter().sum();
                MarkovChain::iid(&positive.iter().map(|x| x / total).collect::<Vec<_>>())
            }
            QuantumBlockSource::ClassicallyCorrelated { chain, .. } => Ok(chain.clone()),
        }
    }

    /// Spectrum of `ρ^(n)` without building the matrix.
    pub fn block_spectrum(&self, n: usize) -> Result<WeightedSpectrum> {
        match self {
            QuantumBlockSource::Product { base } => iid_spectrum(base.spectrum().eigenvalues(), n),
            QuantumBlockSource::ClassicallyCorrelated { chain, .. } => {
                if chain.is_iid() {
                    iid_spectrum(&chain.transition()[0], n)
                } else if chain.states() == 2 {
                    block_spectrum(chain, n)
                } else if (chain.states() as f64).powi(n as i32) <= MAX_BLOCK_ATOMS as f64 {
                    let p = block_distribution(chain, n)?;
                    WeightedSpectrum::from_classes(
                        p.atoms()
                            .iter()
                            .map(|&x| SpectrumClass {
                                log_prob: x.ln(),
                                log_mult: 0.0,
                            })
                            .collect(),
                        n,
                    )
                } else {
                    Err(Error::Unsupported(format!(
                        "spectrum of a {}-state correlated source at n = {n}",
                        chain.states()
                    )))
                }
            }
        }
    }
}

/// Explicit block density `ρ^(n)`; only for `d^n ≤ 64`.
pub fn cc_block_density(source: &QuantumBlockSource, n: usize) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::validation("block length must be positive"));
    }
    let d = source.local_dim();
    let dim = (d as f64).powi(n as i32);
    if dim > MAX_EXPLICIT_DIM as f64 {
        return Err(Error::resource(format!(
            "{d}^{n} exceeds the explicit block dimension limit of {MAX_EXPLICIT_DIM}"
        )));
    }
    let matrix = match source {
        QuantumBlockSource::Product { base } => base.matrix().kron_power(n),
        QuantumBlockSource::ClassicallyCorrelated { chain, unitary } => {
            let p = block_distribution(chain, n)?;
            unitary.kron_power(n).conjugate_diagonal(p.atoms())?
        }
    };
    DensityMatrix::new(matrix)
}

/// Typical-subspace statistics: `tr(ρ^(n) P_T)` and `tr P_T`. The typical
/// projector is diagonal in the eigenbasis of `ρ^(n)`, so both equal the
/// classical typical mass and count of the spectrum.
pub fn quantum_typical_report(
    source: &QuantumBlockSource,
    n: usize,
    eps: f64,
    base: LogBase,
) -> Result<TypicalSetReport> {
    typical_set_report(&source.classical_shadow()?, n, eps, base)
}
