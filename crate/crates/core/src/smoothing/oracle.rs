//! Brute-force reference solvers used to cross-check the closed forms.
//!
//! * sub-normalized ball, α > 1: bisection on the water level `t`.
//! * sub-normalized ball, α < 1: enumeration of every extreme point of the
//!   polytope (a zeroed subset plus at most one partially reduced atom).
//! * trace ball: multi-start pairwise-transfer local search over the
//!   polytope, seeded with the closed-form candidates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::traceball::{flattest_in_trace_ball, steepest_in_trace_ball};
use super::{
    smooth_subball, smooth_traceball, validate_epsilon, validate_order, BallKind, REMOVAL_TOL,
};
use crate::entropy::{renyi_entropy, statistical_distance, Entropy, EntropyOrder, ProbVector};
use crate::error::{Error, Result};

pub const ORACLE_MAX_ALPHABET: usize = 12;

const RANDOM_STARTS: u64 = 64;
const ORACLE_SEED: u64 = 0x5eed_0f_0a_c1e;

/// Optimal (sub-normalized ball) or best-found (trace ball) smooth entropy.
pub fn smooth_oracle(
    p: &ProbVector,
    order: EntropyOrder,
    eps: f64,
    ball: BallKind,
) -> Result<Entropy> {
    oracle_search(p, order, eps, ball).map(|(v, _)| v)
}

pub(crate) fn oracle_search(
    p: &ProbVector,
    order: EntropyOrder,
    eps: f64,
    ball: BallKind,
) -> Result<(Entropy, ProbVector)> {
    validate_order(order)?;
    validate_epsilon(eps)?;
    p.require_normalized()?;
    if p.len() > ORACLE_MAX_ALPHABET {
        return Err(Error::resource(format!(
            "oracle supports at most {ORACLE_MAX_ALPHABET} atoms, got {}",
            p.len()
        )));
    }
    if eps == 0.0 {
        return Ok((renyi_entropy(p, order)?, p.clone()));
    }
    let q = match (ball, order.is_below_one()) {
        (BallKind::SubNormalized, false) => bisected_water_fill(p, eps),
        (BallKind::SubNormalized, true) => enumerate_extreme_points(p, order, eps)?,
        (BallKind::TraceDistance, _) => trace_local_search(p, order, eps)?,
    };
    Ok((renyi_entropy(&q, order)?, q))
}

fn bisected_water_fill(p: &ProbVector, eps: f64) -> ProbVector {
    let target = 1.0 - eps;
    let clip = |t: f64| -> f64 { p.atoms().iter().map(|&x| x.min(t)).sum() };
    let (mut lo, mut hi) = (0.0, p.max_atom());
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        let mass = clip(mid);
        if (mass - target).abs() <= 1e-12 {
            lo = mid;
            hi = mid;
            break;
        }
        if mass < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    ProbVector::from_trusted(p.atoms().iter().map(|&x| x.min(t)).collect())
}

fn enumerate_extreme_points(p: &ProbVector, order: EntropyOrder, eps: f64) -> Result<ProbVector> {
    let atoms = p.atoms();
    let m = atoms.len();
    let mut best: Option<(f64, ProbVector)> = None;
    let mut consider = |q: Vec<f64>| -> Result<()> {
        let q = ProbVector::from_trusted(q);
        if q.mass() <= 0.0 {
            return Ok(());
        }
        let h = renyi_entropy(&q, order)?.nats();
        if best.as_ref().is_none_or(|(b, _)| h < *b) {
            best = Some((h, q));
        }
        Ok(())
    };
    for mask in 0u32..(1 << m) {
        let zeroed: f64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| atoms[i]).sum();
        if zeroed > eps + REMOVAL_TOL {
            continue;
        }
        let base: Vec<f64> = (0..m)
            .map(|i| if mask >> i & 1 == 1 { 0.0 } else { atoms[i] })
            .collect();
        consider(base.clone())?;
        if order == EntropyOrder::Zero {
            continue;
        }
        let r = (eps - zeroed).max(0.0);
        for k in (0..m).filter(|&k| mask >> k & 1 == 0) {
            if atoms[k] >= r {
                let mut q = base.clone();
                q[k] = atoms[k] - r;
                consider(q)?;
            }
        }
    }
    best.map(|(_, q)| q)
        .ok_or_else(|| Error::numerical("no feasible extreme point found"))
}

fn trace_local_search(p: &ProbVector, order: EntropyOrder, eps: f64) -> Result<ProbVector> {
    let minimize = order.is_below_one();
    let score = |q: &[f64]| -> f64 {
        let h = renyi_entropy(&ProbVector::from_trusted(q.to_vec()), order)
            .map(|e| e.nats())
            .unwrap_or(f64::NAN);
        if minimize { -h } else { h }
    };

    let mut warm: Vec<Vec<f64>> = vec![
        p.atoms().to_vec(),
        flattest_in_trace_ball(p, eps).atoms().to_vec(),
        steepest_in_trace_ball(p, eps).atoms().to_vec(),
    ];
    for exact_order in [EntropyOrder::Infinity, EntropyOrder::Zero] {
        if let Some(w) = smooth_traceball(p, exact_order, eps)?.witness {
            warm.push(w.atoms().to_vec());
        }
    }
    if let Some(w) = smooth_subball(p, order, eps)?.witness {
        let mass = w.mass();
        warm.push(w.atoms().iter().map(|x| x / mass).collect());
    }

    let results: Vec<(f64, Vec<f64>)> = (0..RANDOM_STARTS)
        .into_par_iter()
        .map(|start| {
            let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
            rng.set_stream(start);
            let q = random_ball_member(p, eps, &mut rng);
            let q = pairwise_descent(p, q, eps, &score);
            (score(&q), q)
        })
        .chain(warm.into_par_iter().map(|q| {
            let q = pairwise_descent(p, q, eps, &score);
            (score(&q), q)
        }))
        .collect();

    let mut best: Option<&(f64, Vec<f64>)> = None;
    for r in &results {
        if r.0.is_nan() {
            continue;
        }
        if best.is_none_or(|b| r.0 > b.0) {
            best = Some(r);
        }
    }
    best.map(|(_, q)| ProbVector::from_trusted(q.clone()))
        .ok_or_else(|| Error::numerical("local search produced no feasible point"))
}

fn random_ball_member(p: &ProbVector, eps: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut r: Vec<f64> = (0..p.len())
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = r.iter().sum();
    r.iter_mut().for_each(|x| *x /= total);
    let d = statistical_distance(p, &ProbVector::from_trusted(r.clone())).unwrap_or(0.0);
    let reach = if d > 0.0 { (eps / d).min(1.0) } else { 1.0 };
    let s = reach * rng.random::<f64>();
    p.atoms()
        .iter()
        .zip(&r)
        .map(|(&a, &b)| (a + s * (b - a)).max(0.0))
        .collect()
}

fn feasible(p: &[f64], q: &[f64], eps: f64) -> bool {
    let d: f64 = 0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>();
    d <= eps + 1e-12
}

/// Greedy mass transfers between pairs of atoms with a shrinking step.
fn pairwise_descent<F>(p: &ProbVector, mut q: Vec<f64>, eps: f64, score: &F) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let p = p.atoms();
    let m = q.len();
    if !feasible(p, &q, eps) {
        return p.to_vec();
    }
    let mut current = score(&q);
    let mut step: f64 = 0.25;
    while step > 1e-13 {
        let mut improved = true;
        let mut rounds = 0;
        while improved && rounds < 200 {
            improved = false;
            rounds += 1;
            for i in 0..m {
                for j in 0..m {
                    if i == j || q[i] <= 0.0 {
                        continue;
                    }
                    let delta = step.min(q[i]);
                    let (qi, qj) = (q[i], q[j]);
                    q[i] = qi - delta;
                    q[j] = qj + delta;
                    let s = score(&q);
                    if feasible(p, &q, eps) && s > current + 1e-15 {
                        current = s;
                        improved = true;
                    } else {
                        q[i] = qi;
                        q[j] = qj;
                    }
                }
            }
        }
        step *= 0.5;
    }
    q
}
