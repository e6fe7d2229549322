//! Normalized smooth min- and max-entropy of long blocks approaching the
//! entropy rate, for an i.i.d. and a correlated binary source.

use smooth_renyi::experiments::write_csv;
use smooth_renyi::{rate_convergence, BallKind, EntropyOrder, ExperimentConfig, LogBase, MarkovChain};

fn main() -> smooth_renyi::Result<()> {
    let grid = vec![16, 64, 256, 1024, 2048];
    let sources = [
        ("bernoulli(0.3)", MarkovChain::bernoulli(0.3)?),
        ("sticky chain", MarkovChain::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]], None)?),
    ];
    for (name, chain) in &sources {
        for order in [EntropyOrder::Infinity, EntropyOrder::Zero] {
            let config = ExperimentConfig::new(order, 0.05, grid.clone(), BallKind::SubNormalized, 0, LogBase::Two)?;
            let series = rate_convergence(chain, &config)?;
            println!("# {name}, alpha = {order}, h = {:.6} bits", series.h);
            write_csv(&series, std::io::stdout()).expect("stdout");
            let last = series.last().unwrap();
            println!("# largest n inside bracket: {}\n", last.in_bracket());
        }
    }
    Ok(())
}
