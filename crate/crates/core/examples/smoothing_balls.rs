//! Smooth entropies over the sub-normalized and trace-distance balls, with
//! the optimal ball member and a brute-force cross-check.

use smooth_renyi::smoothing::{in_ball, smooth_oracle};
use smooth_renyi::{smooth_subball, smooth_traceball, BallKind, EntropyOrder, LogBase, ProbVector};

fn main() -> smooth_renyi::Result<()> {
    let p = ProbVector::normalized(vec![0.5, 0.25, 0.125, 0.0625, 0.0625])?;
    let eps = 0.1;
    for order in [EntropyOrder::Zero, EntropyOrder::new(0.5)?, EntropyOrder::new(2.0)?, EntropyOrder::Infinity] {
        let sub = smooth_subball(&p, order, eps)?;
        let trace = smooth_traceball(&p, order, eps)?;
        let oracle = smooth_oracle(&p, order, eps, BallKind::SubNormalized)?;
        let w = sub.witness.as_ref().unwrap();
        println!("alpha = {order}");
        println!("  sub    {}  witness {:.4?}", sub.value.display(LogBase::Two), w.atoms());
        println!("  oracle {}", oracle.display(LogBase::Two));
        println!(
            "  trace  {}{}",
            trace.value.display(LogBase::Two),
            if trace.exact { "" } else { "  (numeric search)" }
        );
        assert!(in_ball(&p, w, eps, BallKind::SubNormalized));
        assert!(in_ball(&p, trace.witness.as_ref().unwrap(), eps, BallKind::TraceDistance));
    }
    Ok(())
}
