//! Log-domain helpers shared by the spectrum and smoothing code.

/// `ln(exp(a) + exp(b))` without overflow. `-inf` acts as the additive zero.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ exp(x_i)`; returns `-inf` for an empty input.
pub fn log_sum_exp<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let xs: Vec<f64> = values.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let s: f64 = xs.iter().map(|&x| (x - max).exp()).sum();
    max + s.ln()
}

/// `ln(exp(a) - exp(b))` for `a >= b`; `-inf` when the difference vanishes.
pub fn log_sub(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    if b >= a {
        return f64::NEG_INFINITY;
    }
    a + (-(b - a).exp()).ln_1p()
}

/// Table of `ln k!` for `k = 0..=n`, accumulated with compensated summation.
pub fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..=n {
        let y = (k as f64).ln() - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        table.push(sum);
    }
    table
}

/// `ln C(n, k)` from a factorial table; `-inf` outside `0 <= k <= n`.
pub fn ln_binomial(table: &[f64], n: i64, k: i64) -> f64 {
    if k < 0 || n < 0 || k > n {
        return f64::NEG_INFINITY;
    }
    table[n as usize] - table[k as usize] - table[(n - k) as usize]
}
