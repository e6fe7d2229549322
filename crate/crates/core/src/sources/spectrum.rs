use super::MarkovChain;
use crate::error::{Error, Result};
use crate::numeric::{ln_binomial, ln_factorial_table};
use crate::spectrum::{SpectrumClass, WeightedSpectrum};

/// Largest block length accepted by [`block_spectrum`].
pub const MAX_SPECTRUM_BLOCK: usize = 4096;

const MAX_IID_TYPES: f64 = (1u64 << 24) as f64;

/// Binary strings of a fixed length sharing their first symbol and their
/// four transition counts; `log_mult` is the natural log of how many there are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionClass {
    pub first: usize,
    /// `counts[a][b]` = number of positions `i` with `z_i = a, z_{i+1} = b`.
    pub counts: [[usize; 2]; 2],
    pub log_mult: f64,
}

/// All non-empty transition-count classes of binary strings of length `n`.
///
/// A string starting with `a` that switches symbol `s` times consists of
/// `s + 1` alternating runs. With `N_a` copies of `a` spread over `r_a` runs
/// the count is `C(N_a - 1, r_a - 1) · C(N_b - 1, r_b - 1)` (compositions of
/// each symbol count into its runs).
pub fn binary_transition_classes(n: usize) -> Result<Vec<TransitionClass>> {
    if n == 0 {
        return Err(Error::validation("block length must be positive"));
    }
    if n > MAX_SPECTRUM_BLOCK {
        return Err(Error::resource(format!(
            "block length {n} exceeds the spectrum limit of {MAX_SPECTRUM_BLOCK}"
        )));
    }
    let lnf = ln_factorial_table(n);
    let mut out = Vec::with_capacity(n * (n + 1));
    for first in 0..2 {
        let other = 1 - first;
        for switches in 0..n {
            let runs = switches + 1;
            let runs_first = runs.div_ceil(2);
            let runs_other = runs / 2;
            let within = n - 1 - switches;
            for stay_first in 0..=within {
                let stay_other = within - stay_first;
                if runs_other == 0 && stay_other > 0 {
                    continue;
                }
                let count_first = stay_first + runs_first;
                let count_other = stay_other + runs_other;
                let mut log_mult =
                    ln_binomial(&lnf, count_first as i64 - 1, runs_first as i64 - 1);
                if runs_other > 0 {
                    log_mult +=
                        ln_binomial(&lnf, count_other as i64 - 1, runs_other as i64 - 1);
                }
                let mut counts = [[0usize; 2]; 2];
                counts[first][first] = stay_first;
                counts[other][other] = stay_other;
                counts[first][other] = switches.div_ceil(2);
                counts[other][first] = switches / 2;
                out.push(TransitionClass {
                    first,
                    counts,
                    log_mult,
                });
            }
        }
    }
    Ok(out)
}

/// `k · ln x` with the convention `0 · ln 0 = 0`.
fn weighted_log(k: usize, x: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * x.ln()
    }
}

/// Aggregated spectrum of the length-`n` block distribution of a binary
/// chain. I.i.d. chains collapse to the `n + 1` binomial type classes.
pub fn block_spectrum(chain: &MarkovChain, n: usize) -> Result<WeightedSpectrum> {
    if chain.states() != 2 {
        return Err(Error::Unsupported(format!(
            "block spectrum needs a binary chain, got {} states",
            chain.states()
        )));
    }
    if chain.is_iid() {
        if n > MAX_SPECTRUM_BLOCK {
            return Err(Error::resource(format!(
                "block length {n} exceeds the spectrum limit of {MAX_SPECTRUM_BLOCK}"
            )));
        }
        return iid_spectrum(&chain.transition()[0], n);
    }
    let t = chain.transition();
    let pi = chain.stationary().atoms();
    let classes = binary_transition_classes(n)?
        .into_iter()
        .map(|c| {
            let mut log_prob = pi[c.first].ln();
            for a in 0..2 {
                for b in 0..2 {
                    log_prob += weighted_log(c.counts[a][b], t[a][b]);
                }
            }
            SpectrumClass {
                log_prob,
                log_mult: c.log_mult,
            }
        })
        .collect();
    WeightedSpectrum::from_classes(classes, n)
}

/// Spectrum of `n` i.i.d. draws from `probs`: one class per type
/// (multinomial composition of `n`) over the symbols of positive probability.
pub fn iid_spectrum(probs: &[f64], n: usize) -> Result<WeightedSpectrum> {
    if n == 0 {
        return Err(Error::validation("block length must be positive"));
    }
    let support: Vec<f64> = probs.iter().copied().filter(|&p| p > 0.0).collect();
    if support.is_empty() {
        return Err(Error::domain("i.i.d. spectrum of an all-zero distribution"));
    }
    let k = support.len();
    let lnf = ln_factorial_table(n + k);
    let types = ln_binomial(&lnf, (n + k - 1) as i64, (k - 1) as i64).exp();
    if types > MAX_IID_TYPES {
        return Err(Error::resource(format!(
            "{types:.0} type classes exceed the limit of {MAX_IID_TYPES}"
        )));
    }
    let ln_p: Vec<f64> = support.iter().map(|p| p.ln()).collect();
    let mut classes = Vec::with_capacity(types as usize);
    let mut counts = vec![0usize; k];
    compositions(n, 0, &mut counts, &mut |c| {
        let log_prob = c.iter().zip(&ln_p).map(|(&ci, &lp)| ci as f64 * lp).sum();
        let log_mult = lnf[n] - c.iter().map(|&ci| lnf[ci]).sum::<f64>();
        classes.push(SpectrumClass { log_prob, log_mult });
    });
    WeightedSpectrum::from_classes(classes, n)
}

fn compositions(left: usize, pos: usize, counts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if pos + 1 == counts.len() {
        counts[pos] = left;
        emit(counts);
        return;
    }
    for c in 0..=left {
        counts[pos] = c;
        compositions(left - c, pos + 1, counts, emit);
    }
}
