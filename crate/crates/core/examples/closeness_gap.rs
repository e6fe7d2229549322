//! How far apart the two smoothing notions can be: the gap is bounded by
//! (α/(α-1))·log(1-ε) and the uniform distribution attains it at α = ∞.

use smooth_renyi::{closeness_gap, EntropyOrder, LogBase, ProbVector};

fn main() -> smooth_renyi::Result<()> {
    let eps = 0.1;
    let uniform = ProbVector::uniform(4)?;
    let g = closeness_gap(&uniform, EntropyOrder::Infinity, eps)?;
    println!("uniform(4), alpha = inf, eps = {eps}");
    println!("  sub   {}", g.sub_value.display(LogBase::Two));
    println!("  trace {}", g.trace_value.display(LogBase::Two));
    println!("  gap   {}  bound {}", g.gap.display(LogBase::Two), g.bound.display(LogBase::Two));

    let p = ProbVector::normalized(vec![0.55, 0.2, 0.15, 0.1])?;
    println!("\nP = {:?}, eps = {eps}", p.atoms());
    println!("{:>6} {:>12} {:>12} {:>9}", "alpha", "gap", "bound", "sandwich");
    for order in [EntropyOrder::Zero, EntropyOrder::new(0.5)?, EntropyOrder::new(3.0)?, EntropyOrder::Infinity] {
        let g = closeness_gap(&p, order, eps)?;
        println!(
            "{:>6} {:>12.6} {:>12.6} {:>9}",
            order.to_string(),
            g.gap.bits(),
            g.bound.bits(),
            if g.sandwich_ok { "ok" } else { "violated" }
        );
    }
    Ok(())
}
