//! ε-smooth Rényi entropy under the two closeness notions.
//!
//! * [`BallKind::SubNormalized`]: `{Q : 0 <= Q(z) <= P(z), Σ Q >= 1 - ε}`.
//! * [`BallKind::TraceDistance`]: normalized `Q` with `δ(P, Q) <= ε`.
//!
//! For α < 1 the smooth entropy is the infimum over the ball, for α > 1 the
//! supremum; α = 1 is not defined.
//!
//! The sub-normalized ball is solved in closed form: a water level for
//! α > 1 and greedy removal of the lightest atoms for α < 1. The trace ball
//! is closed form for α ∈ {0, ∞} and falls back to [`smooth_oracle`]
//! otherwise.

mod gap;
mod oracle;
mod subball;
mod traceball;

use std::fmt;
use std::str::FromStr;

pub use gap::{closeness_gap, GapReport};
pub use oracle::{smooth_oracle, ORACLE_MAX_ALPHABET};
pub use subball::{smooth_subball, smooth_subball_spectrum};
pub use traceball::{
    flattest_in_trace_ball, smooth_traceball, smooth_traceball_spectrum, steepest_in_trace_ball,
};

use crate::entropy::{statistical_distance, Entropy, EntropyOrder, ProbVector};
use crate::error::{Error, Result};

/// Slack used when deciding whether a whole atom still fits in the removal budget.
pub(crate) const REMOVAL_TOL: f64 = 1e-12;

/// Tolerance of the ball-membership checker.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallKind {
    SubNormalized,
    TraceDistance,
}

impl FromStr for BallKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sub" => Ok(BallKind::SubNormalized),
            "trace" => Ok(BallKind::TraceDistance),
            other => Err(Error::validation(format!(
                "ball: expected `sub` or `trace`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for BallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BallKind::SubNormalized => "sub",
            BallKind::TraceDistance => "trace",
        })
    }
}

/// Smoothing parameter and ball kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingSpec {
    epsilon: f64,
    ball: BallKind,
}

impl SmoothingSpec {
    pub fn new(epsilon: f64, ball: BallKind) -> Result<Self> {
        validate_epsilon(epsilon)?;
        Ok(SmoothingSpec { epsilon, ball })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn ball(&self) -> BallKind {
        self.ball
    }
}

/// Value of a smooth entropy together with the ball member realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingResult {
    pub value: Entropy,
    /// Optimizing distribution; `None` for spectrum-level computations.
    pub witness: Option<ProbVector>,
    /// `false` when the value comes from numeric search rather than a closed form.
    pub exact: bool,
}

pub(crate) fn validate_epsilon(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::validation(format!(
            "eps: must satisfy 0 <= eps < 1, got {eps}"
        )));
    }
    Ok(())
}

pub(crate) fn validate_order(order: EntropyOrder) -> Result<()> {
    if order == EntropyOrder::One {
        return Err(Error::UnsupportedOrder(
            "smooth entropy is undefined at alpha = 1".into(),
        ));
    }
    Ok(())
}

/// Re-checks that `witness` lies in the ε-ball of kind `ball` around `p`.
pub fn in_ball(p: &ProbVector, witness: &ProbVector, eps: f64, ball: BallKind) -> bool {
    if p.len() != witness.len() {
        return false;
    }
    match ball {
        BallKind::SubNormalized => {
            let dominated = p
                .atoms()
                .iter()
                .zip(witness.atoms())
                .all(|(&pz, &qz)| qz >= 0.0 && qz <= pz + MEMBERSHIP_TOL);
            dominated && witness.mass() >= 1.0 - eps - MEMBERSHIP_TOL
        }
        BallKind::TraceDistance => {
            let normalized = (witness.mass() - 1.0).abs() <= MEMBERSHIP_TOL
                && witness.atoms().iter().all(|&q| q >= 0.0);
            normalized
                && statistical_distance(p, witness)
                    .map(|d| d <= eps + MEMBERSHIP_TOL)
                    .unwrap_or(false)
        }
    }
}
