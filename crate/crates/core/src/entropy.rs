//! Conventional Rényi entropy of finite, possibly sub-normalized distributions.
//!
//! All values are computed in nats and carried as [`Entropy`]; conversion to
//! bits (the default presentation base) or nats happens at the edges through
//! [`LogBase`].

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;

/// Tolerance on total mass for a distribution to count as normalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Logarithm base used to present entropies and to interpret additive
/// rate tolerances such as `h ± ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// Bits.
    #[default]
    Two,
    /// Nats.
    E,
}

impl LogBase {
    /// `ln(base)`.
    pub fn ln(self) -> f64 {
        match self {
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::E => 1.0,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Two => "bits",
            LogBase::E => "nats",
        }
    }

    /// Build an entropy from a value expressed in this base.
    pub fn entropy(self, value: f64) -> Entropy {
        Entropy::from_nats(value * self.ln())
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2" | "bits" => Ok(LogBase::Two),
            "e" | "nats" => Ok(LogBase::E),
            other => Err(Error::validation(format!(
                "base: expected `2` or `e`, got `{other}`"
            ))),
        }
    }
}

/// An entropy (or entropy difference) stored in nats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Entropy(f64);

impl Entropy {
    pub const ZERO: Entropy = Entropy(0.0);

    pub fn from_nats(nats: f64) -> Self {
        Entropy(nats)
    }

    pub fn from_bits(bits: f64) -> Self {
        Entropy(bits * std::f64::consts::LN_2)
    }

    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }

    pub fn in_base(self, base: LogBase) -> f64 {
        self.0 / base.ln()
    }

    pub fn scale(self, factor: f64) -> Self {
        Entropy(self.0 * factor)
    }

    /// Fixed six-decimal rendering with the unit label, e.g. `2.000000 bits`.
    pub fn display(self, base: LogBase) -> String {
        format!("{:.6} {}", self.in_base(base), base.unit())
    }
}

impl Add for Entropy {
    type Output = Entropy;
    fn add(self, rhs: Entropy) -> Entropy {
        Entropy(self.0 + rhs.0)
    }
}

impl Sub for Entropy {
    type Output = Entropy;
    fn sub(self, rhs: Entropy) -> Entropy {
        Entropy(self.0 - rhs.0)
    }
}

impl Neg for Entropy {
    type Output = Entropy;
    fn neg(self) -> Entropy {
        Entropy(-self.0)
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(LogBase::Two))
    }
}

/// Order α of a Rényi entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyOrder {
    /// Max-entropy: log of the support size.
    Zero,
    /// Shannon / von Neumann entropy.
    One,
    /// Min-entropy: `-log max`.
    Infinity,
    /// Finite α with `α > 0` and `α != 1`.
    Finite(f64),
}

impl EntropyOrder {
    /// Classify a real α, mapping 0, 1 and +inf onto the distinguished marks.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::validation(format!(
                "alpha: order must be a non-negative real, got {alpha}"
            )));
        }
        Ok(if alpha == 0.0 {
            EntropyOrder::Zero
        } else if alpha == 1.0 {
            EntropyOrder::One
        } else if alpha.is_infinite() {
            EntropyOrder::Infinity
        } else {
            EntropyOrder::Finite(alpha)
        })
    }

    pub fn alpha(self) -> f64 {
        match self {
            EntropyOrder::Zero => 0.0,
            EntropyOrder::One => 1.0,
            EntropyOrder::Infinity => f64::INFINITY,
            EntropyOrder::Finite(a) => a,
        }
    }

    /// True for orders whose smooth entropy is an infimum (α < 1).
    pub fn is_below_one(self) -> bool {
        self.alpha() < 1.0
    }

    /// `α / (α - 1)`, with its limits 0 at α = 0 and 1 at α = ∞.
    pub fn gap_coefficient(self) -> f64 {
        match self {
            EntropyOrder::Zero => 0.0,
            EntropyOrder::Infinity => 1.0,
            EntropyOrder::One => f64::INFINITY,
            EntropyOrder::Finite(a) => a / (a - 1.0),
        }
    }
}

impl FromStr for EntropyOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(EntropyOrder::Infinity),
            _ => {
                let a: f64 = t.parse().map_err(|_| {
                    Error::validation(format!("alpha: expected a real, 0, 1 or inf, got `{t}`"))
                })?;
                EntropyOrder::new(a)
            }
        }
    }
}

impl fmt::Display for EntropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyOrder::Zero => write!(f, "0"),
            EntropyOrder::One => write!(f, "1"),
            EntropyOrder::Infinity => write!(f, "inf"),
            EntropyOrder::Finite(a) => write!(f, "{a}"),
        }
    }
}

/// A finite probability vector, possibly sub-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    atoms: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl ProbVector {
    /// Validates that every atom is a finite non-negative real and that the
    /// total mass does not exceed `1 + 1e-9`.
    pub fn new(atoms: Vec<f64>) -> Result<Self> {
        for (i, &p) in atoms.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::validation(format!("p[{i}] = {p} is not finite")));
            }
            if p < 0.0 {
                return Err(Error::validation(format!("p[{i}] = {p} is negative")));
            }
        }
        let mass: f64 = atoms.iter().sum();
        if mass > 1.0 + NORMALIZATION_TOL {
            return Err(Error::validation(format!(
                "p: total mass {mass} exceeds 1"
            )));
        }
        Ok(ProbVector {
            atoms,
            labels: None,
        })
    }

    /// Like [`ProbVector::new`] but additionally requires `|1 - mass| <= 1e-9`.
    pub fn normalized(atoms: Vec<f64>) -> Result<Self> {
        let pv = Self::new(atoms)?;
        pv.require_normalized()?;
        Ok(pv)
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("uniform distribution needs at least one atom"));
        }
        Ok(ProbVector {
            atoms: vec![1.0 / m as f64; m],
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.atoms.len() {
            return Err(Error::validation(format!(
                "labels: {} labels for {} atoms",
                labels.len(),
                self.atoms.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        (1.0 - self.mass()).abs() <= NORMALIZATION_TOL
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "p: distribution must be normalized (mass {})",
                self.mass()
            )))
        }
    }

    pub fn support_size(&self) -> usize {
        self.atoms.iter().filter(|&&p| p > 0.0).count()
    }

    pub fn max_atom(&self) -> f64 {
        self.atoms.iter().copied().fold(0.0, f64::max)
    }

    /// Indices ordered by ascending (probability, index).
    pub(crate) fn ascending_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.atoms.len()).collect();
        idx.sort_by(|&a, &b| self.atoms[a].total_cmp(&self.atoms[b]).then(a.cmp(&b)));
        idx
    }

    /// Built from atoms already known to be valid (internal witnesses).
    pub(crate) fn from_trusted(atoms: Vec<f64>) -> Self {
        ProbVector {
            atoms,
            labels: None,
        }
    }
}

/// Rényi entropy of order α of a (possibly sub-normalized) distribution.
///
/// Zero atoms contribute nothing for α > 0 and are outside the support for
/// α = 0; `0 · log 0 = 0` for the Shannon case. No renormalization is done.
pub fn renyi_entropy(p: &ProbVector, order: EntropyOrder) -> Result<Entropy> {
    if p.is_empty() {
        return Err(Error::domain("entropy of an empty distribution"));
    }
    if p.mass() <= 0.0 {
        return Err(Error::domain("entropy of an all-zero distribution"));
    }
    let positive = p.atoms().iter().copied().filter(|&x| x > 0.0);
    let nats = match order {
        EntropyOrder::Zero => (p.support_size() as f64).ln(),
        EntropyOrder::One => -positive.map(|x| x * x.ln()).sum::<f64>(),
        EntropyOrder::Infinity => -p.max_atom().ln(),
        EntropyOrder::Finite(alpha) => {
            log_sum_exp(positive.map(|x| alpha * x.ln())) / (1.0 - alpha)
        }
    };
    Ok(Entropy::from_nats(nats))
}

/// Statistical (total variation) distance `½ Σ |P(z) - Q(z)|`.
pub fn statistical_distance(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::validation(format!(
            "statistical distance between alphabets of size {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(0.5
        * p.atoms()
            .iter()
            .zip(q.atoms())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>())
}
