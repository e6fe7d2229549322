//! Adding a positive semidefinite matrix never lowers an ordered eigenvalue.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smooth_renyi::quantum::{random_ginibre, random_hermitian};
use smooth_renyi::weyl_check;

fn main() -> smooth_renyi::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = f64::INFINITY;
    for _ in 0..200 {
        let d = rng.random_range(1..=8);
        let a = random_hermitian(d, &mut rng);
        let g = random_ginibre(d, &mut rng);
        let b = g.dagger().matmul(&g)?;
        let report = weyl_check(&a, &b)?;
        assert!(!report.violated);
        worst = worst.min(report.min_margin);
    }
    println!("200 random pairs, smallest margin {worst:.3e}");

    let a = random_hermitian(3, &mut rng);
    let g = random_ginibre(3, &mut rng);
    let report = weyl_check(&a, &g.dagger().matmul(&g)?)?;
    println!("margins {:.4?}", report.margins);
    Ok(())
}
