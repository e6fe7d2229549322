//! Typical-set mass and cardinality, exact and sampled.

use smooth_renyi::sources::{sample_path, typical_fraction_mc};
use smooth_renyi::{entropy_rate, typical_set_report, LogBase, MarkovChain};

fn main() -> smooth_renyi::Result<()> {
    let chain = MarkovChain::bernoulli(0.3)?;
    println!("h = {:.6} bits", entropy_rate(&chain).bits());
    println!("{:>5} {:>8} {:>10} {:>12} {:>12}", "n", "mass", "|T|", "log2|T|", "n(h+eps)");
    for n in [16, 20, 256, 2048] {
        let r = typical_set_report(&chain, n, 0.1, LogBase::Two)?;
        let count = r.cardinality.map_or("-".to_string(), |c| c.to_string());
        println!(
            "{n:>5} {:>8.4} {count:>10} {:>12.4} {:>12.4}",
            r.mass, r.log_cardinality, r.log_card_bound
        );
    }

    let sticky = MarkovChain::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]], None)?;
    let path = sample_path(&sticky, 60, 7)?;
    let text: String = path.iter().map(|z| char::from(b'0' + *z as u8)).collect();
    println!("\nsample path: {text}");
    for n in [256, 1024, 4096] {
        let f = typical_fraction_mc(&sticky, n, 0.05, 10_000, 1, LogBase::Two)?;
        println!("n = {n:>4}: typical fraction {f:.4}");
    }
    Ok(())
}
