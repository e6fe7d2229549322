//! Stationary ergodic classical sources: finite-state Markov chains (i.i.d.
//! as the identical-rows special case), their block distributions, entropy
//! rates and typical-set diagnostics.

mod sample;
mod spectrum;
mod typical;

pub use sample::sample_path;
pub use spectrum::{
    binary_transition_classes, block_spectrum, iid_spectrum, TransitionClass, MAX_SPECTRUM_BLOCK,
};
pub use typical::{typical_fraction_mc, typical_set_report, TypicalSetReport};

use crate::entropy::{Entropy, ProbVector, NORMALIZATION_TOL};
use crate::error::{Error, Result};

/// Largest number of atoms `block_distribution` will enumerate.
pub const MAX_BLOCK_ATOMS: usize = 1 << 22;

const ROW_SUM_TOL: f64 = 1e-12;
const STATIONARY_RESIDUAL: f64 = 1e-12;
const MAX_POWER_ITERATIONS: usize = 1_000_000;

/// Irreducible, aperiodic, stationarity-initialized finite Markov chain.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    transition: Vec<Vec<f64>>,
    initial: ProbVector,
}

impl MarkovChain {
    /// Validates the matrix and, when given, checks that `initial` is the
    /// stationary distribution (within 1e-9). Defaults to the stationary
    /// distribution.
    pub fn new(transition: Vec<Vec<f64>>, initial: Option<Vec<f64>>) -> Result<Self> {
        let pi = stationary_distribution(&transition)?;
        let initial = match initial {
            None => pi,
            Some(init) => {
                if init.len() != transition.len() {
                    return Err(Error::validation(format!(
                        "init: length {} does not match {} states",
                        init.len(),
                        transition.len()
                    )));
                }
                let init = ProbVector::normalized(init)
                    .map_err(|e| Error::validation(format!("init: {e}")))?;
                let worst = init
                    .atoms()
                    .iter()
                    .zip(pi.atoms())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                if worst > NORMALIZATION_TOL {
                    return Err(Error::validation(format!(
                        "init: not the stationary distribution {:?} (max deviation {worst:e})",
                        pi.atoms()
                    )));
                }
                init
            }
        };
        Ok(MarkovChain {
            transition,
            initial,
        })
    }

    /// Memoryless source emitting symbol `i` with probability `probs[i]`.
    pub fn iid(probs: &[f64]) -> Result<Self> {
        ProbVector::normalized(probs.to_vec())?;
        Self::new(vec![probs.to_vec(); probs.len()], None)
    }

    /// Binary i.i.d. source with `P(1) = q`.
    pub fn bernoulli(q: f64) -> Result<Self> {
        Self::iid(&[1.0 - q, q])
    }

    pub fn states(&self) -> usize {
        self.transition.len()
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn stationary(&self) -> &ProbVector {
        &self.initial
    }

    /// True when every row equals the first one.
    pub fn is_iid(&self) -> bool {
        let first = &self.transition[0];
        self.transition
            .iter()
            .all(|row| row.iter().zip(first).all(|(a, b)| a == b))
    }
}

fn validate_matrix(t: &[Vec<f64>]) -> Result<()> {
    let m = t.len();
    if m == 0 {
        return Err(Error::validation("T: chain needs at least one state"));
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != m {
            return Err(Error::validation(format!(
                "T[{i}]: row has {} entries, expected {m}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::validation(format!("T[{i}][{j}] = {x} is not a probability")));
            }
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > ROW_SUM_TOL {
            return Err(Error::validation(format!("T[{i}]: row sums to {s}, expected 1")));
        }
    }
    Ok(())
}

fn reachable(m: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<Option<usize>> {
    let mut level = vec![None; m];
    level[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for v in 0..m {
            if level[v].is_none() && edge(u, v) {
                level[v] = Some(level[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    level
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Checks strong connectivity and that the gcd of cycle lengths is 1.
fn check_ergodic(t: &[Vec<f64>]) -> Result<()> {
    let m = t.len();
    let forward = reachable(m, |u, v| t[u][v] > 0.0);
    let backward = reachable(m, |u, v| t[v][u] > 0.0);
    if forward.iter().chain(&backward).any(Option::is_none) {
        return Err(Error::validation("T: chain is reducible"));
    }
    let mut period = 0;
    for u in 0..m {
        for v in 0..m {
            if t[u][v] > 0.0 {
                let (lu, lv) = (forward[u].unwrap(), forward[v].unwrap());
                period = gcd(period, (lu + 1).abs_diff(lv));
            }
        }
    }
    if period != 1 {
        return Err(Error::validation(format!("T: chain is periodic with period {period}")));
    }
    Ok(())
}

/// Stationary distribution of an irreducible aperiodic chain by power
/// iteration from the uniform vector.
pub fn stationary_distribution(transition: &[Vec<f64>]) -> Result<ProbVector> {
    validate_matrix(transition)?;
    check_ergodic(transition)?;
    let m = transition.len();
    let mut pi = vec![1.0 / m as f64; m];
    let mut next = vec![0.0; m];
    for _ in 0..MAX_POWER_ITERATIONS {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (i, row) in transition.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                next[j] += pi[i] * t;
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let residual: f64 = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut pi, &mut next);
        if residual <= STATIONARY_RESIDUAL {
            return ProbVector::normalized(pi);
        }
    }
    Err(Error::numerical("power iteration did not converge"))
}

/// `h = -Σ_i π_i Σ_j T_ij log T_ij`.
pub fn entropy_rate(chain: &MarkovChain) -> Entropy {
    let nats = chain
        .stationary()
        .atoms()
        .iter()
        .zip(chain.transition())
        .map(|(&pi, row)| {
            pi * row
                .iter()
                .filter(|&&t| t > 0.0)
                .map(|&t| -t * t.ln())
                .sum::<f64>()
        })
        .sum();
    Entropy::from_nats(nats)
}

/// Explicit distribution of the first `n` symbols, atoms in lexicographic
/// order of the state sequence (first symbol most significant).
pub fn block_distribution(chain: &MarkovChain, n: usize) -> Result<ProbVector> {
    if n == 0 {
        return Err(Error::validation("block length must be positive"));
    }
    let m = chain.states();
    let size = (m as f64).powi(n as i32);
    if size > MAX_BLOCK_ATOMS as f64 {
        return Err(Error::resource(format!(
            "{m}^{n} atoms exceed the enumeration limit of {MAX_BLOCK_ATOMS}"
        )));
    }
    let t = chain.transition();
    let mut probs = chain.stationary().atoms().to_vec();
    for _ in 1..n {
        let mut next = Vec::with_capacity(probs.len() * m);
        for (idx, &p) in probs.iter().enumerate() {
            let last = idx % m;
            next.extend(t[last].iter().map(|&x| p * x));
        }
        probs = next;
    }
    ProbVector::new(probs)
}
