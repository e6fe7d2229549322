use super::{validate_epsilon, validate_order, SmoothingResult, REMOVAL_TOL};
use crate::entropy::{renyi_entropy, Entropy, EntropyOrder, ProbVector};
use crate::error::Result;
use crate::numeric::{log_add, log_sum_exp};
use crate::spectrum::{renyi_entropy_spectrum, WeightedSpectrum};

/// Above this many atoms a class count is treated as a continuum.
const LN_EXACT_COUNT_LIMIT: f64 = 36.0;

/// Smooth Rényi entropy over the sub-normalized ε-ball.
///
/// For α > 1 the supremum is attained by the water-filled `Q(z) = min(P(z), t)`
/// with `Σ min(P(z), t) = 1 - ε`. For α < 1 the infimum zeroes the lightest
/// atoms in ascending (probability, index) order until ε mass is gone; the
/// last one may be partially reduced, except at α = 0 where only whole atoms
/// are removed.
pub fn smooth_subball(p: &ProbVector, order: EntropyOrder, eps: f64) -> Result<SmoothingResult> {
    validate_order(order)?;
    validate_epsilon(eps)?;
    p.require_normalized()?;

    let witness = if eps == 0.0 {
        p.clone()
    } else if order.is_below_one() {
        greedy_removal(p, eps, order == EntropyOrder::Zero)
    } else {
        let t = water_level(p.atoms(), eps);
        ProbVector::from_trusted(p.atoms().iter().map(|&x| x.min(t)).collect())
    };
    Ok(SmoothingResult {
        value: renyi_entropy(&witness, order)?,
        witness: Some(witness),
        exact: true,
    })
}

/// Level `t` with `Σ (P(z) - t)_+ = eps`, solved segment by segment over the
/// descending sort.
pub(crate) fn water_level(atoms: &[f64], eps: f64) -> f64 {
    let mut desc = atoms.to_vec();
    desc.sort_by(|a, b| b.total_cmp(a));
    let mut head = 0.0;
    for k in 0..desc.len() {
        head += desc[k];
        let next = desc.get(k + 1).copied().unwrap_or(0.0);
        let clipped = (k + 1) as f64;
        // mass removed when clipping at `next`
        if head - clipped * next >= eps {
            return ((head - eps) / clipped).max(next);
        }
    }
    // Only reachable when the total mass is below eps.
    0.0
}

/// Zero (or partially reduce) the lightest atoms until `eps` mass is removed.
pub(crate) fn greedy_removal(p: &ProbVector, eps: f64, whole_atoms_only: bool) -> ProbVector {
    let mut q = p.atoms().to_vec();
    let order = p.ascending_order();
    let mut removed = 0.0;
    let mut remaining_support = p.support_size();
    for &i in &order {
        let x = q[i];
        if x == 0.0 {
            continue;
        }
        if removed + x <= eps + REMOVAL_TOL && remaining_support > 1 {
            removed += x;
            q[i] = 0.0;
            remaining_support -= 1;
            continue;
        }
        if !whole_atoms_only {
            let r = (eps - removed).max(0.0);
            q[i] = (x - r).max(0.0);
        }
        break;
    }
    ProbVector::from_trusted(q)
}

/// [`smooth_subball`] on an aggregated block spectrum, in the log domain.
///
/// Only the value is returned; the witness would have as many atoms as the
/// block distribution itself.
pub fn smooth_subball_spectrum(
    spec: &WeightedSpectrum,
    order: EntropyOrder,
    eps: f64,
) -> Result<SmoothingResult> {
    validate_order(order)?;
    validate_epsilon(eps)?;
    spec.require_normalized()?;

    let value = if eps == 0.0 {
        renyi_entropy_spectrum(spec, order)?
    } else if order.is_below_one() {
        removal_value(spec, order, eps)
    } else {
        water_fill_value(spec, order, eps)
    };
    Ok(SmoothingResult {
        value,
        witness: None,
        exact: true,
    })
}

fn water_fill_value(spec: &WeightedSpectrum, order: EntropyOrder, eps: f64) -> Entropy {
    let classes = spec.classes();
    let mut log_count = f64::NEG_INFINITY;
    let mut head = 0.0f64;
    let mut comp = 0.0f64;
    let mut level = None;
    for k in 0..classes.len() {
        log_count = log_add(log_count, classes[k].log_mult);
        // compensated accumulation of the head mass
        let y = classes[k].log_mass().exp() - comp;
        let t = head + y;
        comp = (t - head) - y;
        head = t;
        let next_log_prob = classes.get(k + 1).map_or(f64::NEG_INFINITY, |c| c.log_prob);
        let removed_at_next = head - (log_count + next_log_prob).exp();
        if removed_at_next >= eps {
            let log_t = ((head - eps).ln() - log_count).max(next_log_prob);
            level = Some((k, log_t, log_count));
            break;
        }
    }
    let (k, log_t, log_count) = level.unwrap_or((classes.len() - 1, f64::NEG_INFINITY, log_count));
    match order {
        EntropyOrder::Infinity => Entropy::from_nats(-log_t),
        EntropyOrder::Finite(alpha) => {
            let tail = classes[k + 1..]
                .iter()
                .map(|c| c.log_mult + alpha * c.log_prob);
            let lse = log_sum_exp(std::iter::once(log_count + alpha * log_t).chain(tail));
            Entropy::from_nats(lse / (1.0 - alpha))
        }
        EntropyOrder::Zero | EntropyOrder::One => unreachable!("order checked by caller"),
    }
}

fn removal_value(spec: &WeightedSpectrum, order: EntropyOrder, eps: f64) -> Entropy {
    let classes = spec.classes();
    let whole_atoms_only = order == EntropyOrder::Zero;
    let mut removed = 0.0;
    // index of the lightest class that keeps (part of) its atoms
    let mut boundary = 0;
    for idx in (0..classes.len()).rev() {
        let mass = classes[idx].log_mass().exp();
        if idx > 0 && removed + mass <= eps + REMOVAL_TOL {
            removed += mass;
            continue;
        }
        boundary = idx;
        break;
    }
    let c = classes[boundary];
    let mass = c.log_mass().exp();
    let budget = (eps - removed).max(0.0);

    // log of the (possibly fractional) count of atoms surviving in the boundary class
    let survivors = |slack: f64| -> f64 {
        let left = mass - budget - slack;
        if left <= 0.0 {
            f64::NEG_INFINITY
        } else {
            left.ln() - c.log_prob
        }
    };

    let boundary_term = if whole_atoms_only {
        let ln_s = survivors(REMOVAL_TOL);
        let ln_kept = if ln_s > LN_EXACT_COUNT_LIMIT {
            ln_s
        } else {
            // keep at least one atom overall
            let kept = ln_s.exp().ceil().max(if boundary == 0 { 1.0 } else { 0.0 });
            kept.ln()
        };
        ln_kept.min(c.log_mult)
    } else {
        let alpha = order.alpha();
        let ln_s = survivors(0.0).min(c.log_mult);
        let ln_weight = if ln_s > LN_EXACT_COUNT_LIMIT {
            ln_s
        } else {
            // s = whole + f, f in (0, 1]: `whole` untouched atoms and one partial atom
            let s = ln_s.exp();
            let whole = (s.ceil() - 1.0).max(0.0);
            let f = s - whole;
            (whole + f.powf(alpha)).ln()
        };
        alpha * c.log_prob + ln_weight
    };

    let above = classes[..boundary].iter();
    match order {
        EntropyOrder::Zero => Entropy::from_nats(log_sum_exp(
            above.map(|c| c.log_mult).chain(std::iter::once(boundary_term)),
        )),
        EntropyOrder::Finite(alpha) => {
            let lse = log_sum_exp(
                above
                    .map(|c| c.log_mult + alpha * c.log_prob)
                    .chain(std::iter::once(boundary_term)),
            );
            Entropy::from_nats(lse / (1.0 - alpha))
        }
        EntropyOrder::One | EntropyOrder::Infinity => unreachable!("order checked by caller"),
    }
}
