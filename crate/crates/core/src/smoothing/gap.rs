use super::{smooth_subball, smooth_traceball, MEMBERSHIP_TOL};
use crate::entropy::{Entropy, EntropyOrder, ProbVector};
use crate::error::Result;

/// Difference between the trace-ball and sub-ball smooth entropies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub sub_value: Entropy,
    pub trace_value: Entropy,
    /// `trace_value - sub_value`.
    pub gap: Entropy,
    /// `(α / (α - 1)) · log(1 - ε)`.
    pub bound: Entropy,
    /// Whether the gap lies in `[0, bound]` (α < 1) or `[bound, 0]` (α > 1).
    pub sandwich_ok: bool,
    /// Whether the trace-ball value came from a closed form.
    pub exact: bool,
}

pub fn closeness_gap(p: &ProbVector, order: EntropyOrder, eps: f64) -> Result<GapReport> {
    let sub = smooth_subball(p, order, eps)?;
    let trace = smooth_traceball(p, order, eps)?;
    let gap = trace.value - sub.value;
    // + 0.0 turns the α = 0 product -0.0 into 0.0
    let bound = Entropy::from_nats(order.gap_coefficient() * (1.0 - eps).ln() + 0.0);
    let (lo, hi) = if order.is_below_one() {
        (0.0, bound.nats())
    } else {
        (bound.nats(), 0.0)
    };
    let g = gap.nats();
    Ok(GapReport {
        sub_value: sub.value,
        trace_value: trace.value,
        gap,
        bound,
        sandwich_ok: g >= lo - MEMBERSHIP_TOL && g <= hi + MEMBERSHIP_TOL,
        exact: trace.exact,
    })
}
