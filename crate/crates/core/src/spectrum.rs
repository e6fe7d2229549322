//! Aggregated (log-probability, log-multiplicity) representation of block
//! distributions too large to enumerate atom by atom.

use crate::entropy::{Entropy, EntropyOrder, ProbVector};
use crate::error::{Error, Result};
use crate::numeric::{log_add, log_sum_exp};

/// Two log-probabilities closer than this are merged into one class.
pub const MERGE_TOL: f64 = 1e-12;

/// Tolerance on total mass for a spectrum that stands for a normalized block.
pub const SPECTRUM_MASS_TOL: f64 = 1e-6;

/// `exp(log_mult)` atoms, each of probability `exp(log_prob)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumClass {
    pub log_prob: f64,
    pub log_mult: f64,
}

impl SpectrumClass {
    /// Natural log of the class mass.
    pub fn log_mass(&self) -> f64 {
        self.log_prob + self.log_mult
    }
}

/// Classes sorted by strictly decreasing `log_prob`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSpectrum {
    classes: Vec<SpectrumClass>,
    block_length: usize,
}

impl WeightedSpectrum {
    /// Sorts, drops empty/zero-probability classes and merges equal
    /// log-probabilities (within [`MERGE_TOL`]) with log-sum-exp.
    pub fn from_classes(mut raw: Vec<SpectrumClass>, block_length: usize) -> Result<Self> {
        if block_length == 0 {
            return Err(Error::validation("block length must be positive"));
        }
        for c in &raw {
            if c.log_prob.is_nan() || c.log_mult.is_nan() || c.log_prob > 1e-12 {
                return Err(Error::validation(format!(
                    "invalid spectrum class (log_prob {}, log_mult {})",
                    c.log_prob, c.log_mult
                )));
            }
        }
        raw.retain(|c| c.log_prob > f64::NEG_INFINITY && c.log_mult > f64::NEG_INFINITY);
        raw.sort_by(|a, b| b.log_prob.total_cmp(&a.log_prob));
        let mut classes: Vec<SpectrumClass> = Vec::with_capacity(raw.len());
        for c in raw {
            match classes.last_mut() {
                Some(last) if (last.log_prob - c.log_prob).abs() <= MERGE_TOL => {
                    last.log_mult = log_add(last.log_mult, c.log_mult);
                }
                _ => classes.push(c),
            }
        }
        Ok(WeightedSpectrum {
            classes,
            block_length,
        })
    }

    /// One class per positive atom, block length 1.
    pub fn from_prob_vector(p: &ProbVector) -> Result<Self> {
        Self::from_classes(
            p.atoms()
                .iter()
                .map(|&x| SpectrumClass {
                    log_prob: x.ln(),
                    log_mult: 0.0,
                })
                .collect(),
            1,
        )
    }

    pub fn classes(&self) -> &[SpectrumClass] {
        &self.classes
    }

    pub fn block_length(&self) -> usize {
        self.block_length
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn log_mass(&self) -> f64 {
        log_sum_exp(self.classes.iter().map(SpectrumClass::log_mass))
    }

    pub fn mass(&self) -> f64 {
        self.log_mass().exp()
    }

    /// Natural log of the number of atoms with positive probability.
    pub fn log_support(&self) -> f64 {
        log_sum_exp(self.classes.iter().map(|c| c.log_mult))
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let m = self.mass();
        if (1.0 - m).abs() <= SPECTRUM_MASS_TOL {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "spectrum must be normalized (mass {m})"
            )))
        }
    }

    /// Expand into individual atoms (descending). Multiplicities are rounded
    /// to integers; refuses more than `max_atoms` atoms.
    pub fn expand(&self, max_atoms: usize) -> Result<ProbVector> {
        let total = self.log_support().exp();
        if !(total.round() <= max_atoms as f64) {
            return Err(Error::resource(format!(
                "expanding {total:.0} atoms exceeds the limit of {max_atoms}"
            )));
        }
        let mut atoms = Vec::with_capacity(total.round() as usize);
        for c in &self.classes {
            let count = c.log_mult.exp().round() as usize;
            atoms.extend(std::iter::repeat_n(c.log_prob.exp(), count));
        }
        ProbVector::new(atoms)
    }
}

/// Rényi entropy of the distribution a spectrum stands for, evaluated in the
/// log domain so that block lengths in the thousands do not underflow.
pub fn renyi_entropy_spectrum(spec: &WeightedSpectrum, order: EntropyOrder) -> Result<Entropy> {
    if spec.is_empty() {
        return Err(Error::domain("entropy of an empty spectrum"));
    }
    let classes = spec.classes();
    let nats = match order {
        EntropyOrder::Zero => spec.log_support(),
        EntropyOrder::Infinity => -classes[0].log_prob,
        EntropyOrder::One => -classes
            .iter()
            .map(|c| c.log_mass().exp() * c.log_prob)
            .sum::<f64>(),
        EntropyOrder::Finite(alpha) => {
            log_sum_exp(classes.iter().map(|c| c.log_mult + alpha * c.log_prob)) / (1.0 - alpha)
        }
    };
    Ok(Entropy::from_nats(nats))
}
