//! Conventional and smooth Rényi entropies of classical distributions,
//! Markov sources and density matrices.
//!
//! ```
//! use smooth_renyi::{smooth_subball, EntropyOrder, ProbVector};
//!
//! let p = ProbVector::normalized(vec![0.5, 0.25, 0.25]).unwrap();
//! let r = smooth_subball(&p, EntropyOrder::Infinity, 0.25).unwrap();
//! assert!((r.value.bits() - 2.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod entropy;
pub mod error;
pub mod experiments;
pub mod io;
pub mod numeric;
pub mod quantum;
pub mod smoothing;
pub mod sources;
pub mod spectrum;

pub use entropy::{renyi_entropy, statistical_distance, Entropy, EntropyOrder, LogBase, ProbVector};
pub use error::{Error, Result};
pub use experiments::{quantum_rate_convergence, rate_convergence, ExperimentConfig, RateSeries};
pub use quantum::{
    quantum_renyi, smooth_quantum_renyi, weyl_check, DensityMatrix, QuantumBlockSource,
};
pub use smoothing::{
    closeness_gap, smooth_oracle, smooth_subball, smooth_subball_spectrum, smooth_traceball,
    BallKind, SmoothingResult,
};
pub use sources::{block_spectrum, entropy_rate, typical_set_report, MarkovChain};
pub use spectrum::{renyi_entropy_spectrum, WeightedSpectrum};
