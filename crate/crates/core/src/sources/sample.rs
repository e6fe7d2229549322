use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MarkovChain;
use crate::error::{Error, Result};

const SAMPLE_PATH_TAG: u64 = 0x7061_7468;

/// Cumulative tables for inverse-CDF draws from π and from each row of T.
pub(crate) struct Sampler {
    initial: Vec<f64>,
    rows: Vec<Vec<f64>>,
    pub(crate) ln_initial: Vec<f64>,
    pub(crate) ln_rows: Vec<Vec<f64>>,
}

fn cumulative(p: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    p.iter()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect()
}

fn draw(cdf: &[f64], u: f64) -> usize {
    let total = *cdf.last().unwrap();
    let target = u * total;
    match cdf.iter().position(|&c| target < c) {
        Some(i) => i,
        // u·total rounded onto the last boundary: take the last positive entry
        None => {
            let mut i = cdf.len() - 1;
            while i > 0 && cdf[i] == cdf[i - 1] {
                i -= 1;
            }
            i
        }
    }
}

impl Sampler {
    pub(crate) fn new(chain: &MarkovChain) -> Self {
        Sampler {
            initial: cumulative(chain.stationary().atoms()),
            rows: chain.transition().iter().map(|r| cumulative(r)).collect(),
            ln_initial: chain.stationary().atoms().iter().map(|p| p.ln()).collect(),
            ln_rows: chain
                .transition()
                .iter()
                .map(|r| r.iter().map(|p| p.ln()).collect())
                .collect(),
        }
    }

    pub(crate) fn first<R: Rng>(&self, rng: &mut R) -> usize {
        draw(&self.initial, rng.random::<f64>())
    }

    pub(crate) fn step<R: Rng>(&self, from: usize, rng: &mut R) -> usize {
        draw(&self.rows[from], rng.random::<f64>())
    }
}

/// A length-`n` realization: `z_0 ~ π`, then `z_{i+1} ~ T[z_i]`.
/// Reproducible for a given `seed`.
pub fn sample_path(chain: &MarkovChain, n: usize, seed: u64) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::validation("path length must be positive"));
    }
    let sampler = Sampler::new(chain);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SAMPLE_PATH_TAG);
    let mut path = Vec::with_capacity(n);
    let mut z = sampler.first(&mut rng);
    path.push(z);
    for _ in 1..n {
        z = sampler.step(z, &mut rng);
        path.push(z);
    }
    Ok(path)
}
