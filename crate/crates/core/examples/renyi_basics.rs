//! Rényi entropies of a small distribution across orders and bases.

use smooth_renyi::{renyi_entropy, EntropyOrder, LogBase, ProbVector};

fn main() -> smooth_renyi::Result<()> {
    let p = ProbVector::normalized(vec![0.5, 0.25, 0.25])?;
    let orders = [
        EntropyOrder::Zero,
        EntropyOrder::new(0.5)?,
        EntropyOrder::One,
        EntropyOrder::new(2.0)?,
        EntropyOrder::Infinity,
    ];
    println!("P = {:?}", p.atoms());
    for order in orders {
        let h = renyi_entropy(&p, order)?;
        println!(
            "alpha = {order:<4} {:>16} {:>16}",
            h.display(LogBase::Two),
            h.display(LogBase::E)
        );
    }

    // sub-normalized inputs are not rescaled
    let q = ProbVector::new(vec![0.4, 0.2, 0.2])?;
    println!(
        "\nsub-normalized Q (mass {}): H_inf = {}",
        q.mass(),
        renyi_entropy(&q, EntropyOrder::Infinity)?.display(LogBase::Two)
    );
    Ok(())
}
