use super::oracle::oracle_search;
use super::subball::{greedy_removal, smooth_subball_spectrum, water_level};
use super::{validate_epsilon, validate_order, BallKind, SmoothingResult};
use crate::entropy::{renyi_entropy, Entropy, EntropyOrder, ProbVector};
use crate::error::{Error, Result};
use crate::spectrum::WeightedSpectrum;

/// Smooth Rényi entropy over the trace-distance ball of normalized
/// distributions.
///
/// * α = ∞: two-sided water fill. The level is the smallest `t` such that the
///   mass above `t` is at most ε and fits below `t`; that is
///   `max(1/m, t_ε)` with `Σ (P(z) - t_ε)_+ = ε`. Cut mass is poured onto the
///   lightest atoms first, up to `t`.
/// * α = 0: same value as the sub-normalized ball; the removed mass is piled
///   onto the heaviest surviving atom.
/// * any other α: numeric search, reported with `exact = false`.
pub fn smooth_traceball(
    p: &ProbVector,
    order: EntropyOrder,
    eps: f64,
) -> Result<SmoothingResult> {
    validate_order(order)?;
    validate_epsilon(eps)?;
    p.require_normalized()?;

    if eps == 0.0 {
        return Ok(SmoothingResult {
            value: renyi_entropy(p, order)?,
            witness: Some(p.clone()),
            exact: true,
        });
    }
    let witness = match order {
        EntropyOrder::Infinity => min_entropy_witness(p, eps),
        EntropyOrder::Zero => {
            let kept = greedy_removal(p, eps, true);
            let mut q = kept.atoms().to_vec();
            let removed = 1.0 - kept.mass();
            let top = argmax(&q);
            q[top] += removed;
            ProbVector::from_trusted(q)
        }
        _ => {
            let (value, witness) = oracle_search(p, order, eps, BallKind::TraceDistance)?;
            return Ok(SmoothingResult {
                value,
                witness: Some(witness),
                exact: false,
            });
        }
    };
    Ok(SmoothingResult {
        value: renyi_entropy(&witness, order)?,
        witness: Some(witness),
        exact: true,
    })
}

/// [`smooth_traceball`] on a block spectrum whose atoms live on an alphabet
/// of `exp(log_alphabet)` points (zero-probability points included). Only the
/// closed-form orders 0 and ∞ are supported.
pub fn smooth_traceball_spectrum(
    spec: &WeightedSpectrum,
    order: EntropyOrder,
    eps: f64,
    log_alphabet: f64,
) -> Result<SmoothingResult> {
    match order {
        EntropyOrder::Zero => smooth_subball_spectrum(spec, order, eps),
        EntropyOrder::Infinity => {
            let sub = smooth_subball_spectrum(spec, order, eps)?;
            Ok(SmoothingResult {
                value: Entropy::from_nats(sub.value.nats().min(log_alphabet)),
                ..sub
            })
        }
        _ => {
            validate_order(order)?;
            Err(Error::Unsupported(format!(
                "trace-ball smoothing of a block spectrum at alpha = {order}"
            )))
        }
    }
}

fn min_entropy_witness(p: &ProbVector, eps: f64) -> ProbVector {
    let m = p.len() as f64;
    let t = water_level(p.atoms(), eps).max(1.0 / m);
    let mut q: Vec<f64> = p.atoms().iter().map(|&x| x.min(t)).collect();
    let mut cut: f64 = p.atoms().iter().map(|&x| (x - t).max(0.0)).sum();
    for i in p.ascending_order() {
        if cut <= 0.0 {
            break;
        }
        let room = (t - q[i]).max(0.0);
        let pour = room.min(cut);
        q[i] += pour;
        cut -= pour;
    }
    ProbVector::from_trusted(q)
}

fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// The flattest member of the trace ball: the top is cut down to the level
/// removing ε, the bottom filled up to the level adding ε (uniform if the two
/// levels cross). It is majorized by every member of the ball.
pub fn flattest_in_trace_ball(p: &ProbVector, eps: f64) -> ProbVector {
    let m = p.len();
    let top = water_level(p.atoms(), eps);
    let bottom = fill_level(p.atoms(), eps);
    if bottom >= top {
        return ProbVector::from_trusted(vec![1.0 / m as f64; m]);
    }
    ProbVector::from_trusted(p.atoms().iter().map(|&x| x.clamp(bottom, top)).collect())
}

/// The steepest member of the trace ball: ε moved from the lightest atoms
/// onto the heaviest one. It majorizes every member of the ball.
pub fn steepest_in_trace_ball(p: &ProbVector, eps: f64) -> ProbVector {
    let mut q = p.atoms().to_vec();
    let top = argmax(&q);
    let mut budget = eps.min(1.0 - q[top]);
    let moved = budget;
    for i in p.ascending_order() {
        if i == top || budget <= 0.0 {
            continue;
        }
        let take = q[i].min(budget);
        q[i] -= take;
        budget -= take;
    }
    q[top] += moved - budget;
    ProbVector::from_trusted(q)
}

/// Level `b` with `Σ (b - P(z))_+ = eps` (or the uniform level if that needs
/// more than the whole alphabet).
fn fill_level(atoms: &[f64], eps: f64) -> f64 {
    let mut asc = atoms.to_vec();
    asc.sort_by(|a, b| a.total_cmp(b));
    let mut low = 0.0;
    for k in 0..asc.len() {
        low += asc[k];
        let filled = (k + 1) as f64;
        match asc.get(k + 1) {
            Some(&next) if filled * next - low < eps => continue,
            Some(&next) => return ((eps + low) / filled).min(next),
            None => return (eps + low) / filled,
        }
    }
    0.0
}
