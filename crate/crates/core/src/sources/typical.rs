use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::sample::Sampler;
use super::{block_distribution, block_spectrum, entropy_rate, MarkovChain, MAX_BLOCK_ATOMS};
use crate::entropy::LogBase;
use crate::error::{Error, Result};

const MC_TAG: u64 = 0x6165_7000;
const MC_CHUNK: usize = 250;
const BAND_TOL: f64 = 1e-12;

/// Mass and size of the typical set `T_ε^(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TypicalSetReport {
    pub n: usize,
    pub epsilon: f64,
    pub base: LogBase,
    /// `P(T_ε^(n))`.
    pub mass: f64,
    /// Exact count when the block was enumerated atom by atom.
    pub cardinality: Option<u128>,
    /// `log |T_ε^(n)|` in `base` units (`-inf` for an empty set).
    pub log_cardinality: f64,
    /// `n (h + ε)` in `base` units.
    pub log_card_bound: f64,
    pub mass_ok: bool,
    pub card_ok: bool,
}

/// Typical-set statistics at block length `n`, where `z^n` is typical when
/// `-(1/n) log P(z^n)` lies within `ε` of the entropy rate (both measured in
/// `base`). Blocks up to 2^22 atoms are enumerated exactly; longer binary
/// blocks go through the aggregated spectrum.
pub fn typical_set_report(
    chain: &MarkovChain,
    n: usize,
    eps: f64,
    base: LogBase,
) -> Result<TypicalSetReport> {
    validate(n, eps)?;
    let h = entropy_rate(chain).nats();
    let width = eps * base.ln();
    let typical = |ln_p: f64| -> bool {
        let rate = -ln_p / n as f64;
        rate >= h - width - BAND_TOL && rate <= h + width + BAND_TOL
    };

    let atoms = (chain.states() as f64).powi(n as i32);
    let (mass, cardinality, ln_card) = if atoms <= MAX_BLOCK_ATOMS as f64 {
        let block = block_distribution(chain, n)?;
        let mut mass = 0.0;
        let mut count: u128 = 0;
        for &p in block.atoms() {
            if p > 0.0 && typical(p.ln()) {
                mass += p;
                count += 1;
            }
        }
        let ln_card = if count == 0 { f64::NEG_INFINITY } else { (count as f64).ln() };
        (mass, Some(count), ln_card)
    } else if chain.states() == 2 {
        let spec = block_spectrum(chain, n)?;
        let selected: Vec<_> = spec.classes().iter().filter(|c| typical(c.log_prob)).collect();
        let mass = selected.iter().map(|c| c.log_mass().exp()).sum();
        let ln_card = crate::numeric::log_sum_exp(selected.iter().map(|c| c.log_mult));
        (mass, None, ln_card)
    } else {
        return Err(Error::resource(format!(
            "typical set of a {}-state chain at n = {n} is too large to enumerate",
            chain.states()
        )));
    };

    let log_card_bound = n as f64 * (h / base.ln() + eps);
    let log_cardinality = ln_card / base.ln();
    Ok(TypicalSetReport {
        n,
        epsilon: eps,
        base,
        mass,
        cardinality,
        log_cardinality,
        log_card_bound,
        mass_ok: mass >= 1.0 - eps,
        card_ok: log_cardinality <= log_card_bound + 1e-9,
    })
}

/// Fraction of `samples` sampled paths of length `n` that are ε-typical.
///
/// Samples are split into fixed chunks, each drawn from its own ChaCha
/// stream, so the result depends only on the arguments.
pub fn typical_fraction_mc(
    chain: &MarkovChain,
    n: usize,
    eps: f64,
    samples: usize,
    seed: u64,
    base: LogBase,
) -> Result<f64> {
    validate(n, eps)?;
    if samples == 0 {
        return Err(Error::validation("samples must be at least 1"));
    }
    let h = entropy_rate(chain).nats();
    let width = eps * base.ln();
    let sampler = Sampler::new(chain);
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ MC_TAG);
            rng.set_stream(chunk as u64);
            let here = MC_CHUNK.min(samples - chunk * MC_CHUNK);
            (0..here)
                .filter(|_| {
                    let mut z = sampler.first(&mut rng);
                    let mut ln_p = sampler.ln_initial[z];
                    for _ in 1..n {
                        let next = sampler.step(z, &mut rng);
                        ln_p += sampler.ln_rows[z][next];
                        z = next;
                    }
                    let rate = -ln_p / n as f64;
                    rate >= h - width - BAND_TOL && rate <= h + width + BAND_TOL
                })
                .count()
        })
        .sum();
    Ok(hits as f64 / samples as f64)
}

fn validate(n: usize, eps: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::validation("block length must be positive"));
    }
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::validation(format!("eps: must be a non-negative real, got {eps}")));
    }
    Ok(())
}
