//! Quantum smooth entropies reduce to classical ones on the spectrum, and a
//! rotated correlated source has the classical block distribution as its
//! spectrum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smooth_renyi::quantum::{cc_block_density, random_unitary, witness_operator, CMatrix};
use smooth_renyi::sources::block_distribution;
use smooth_renyi::{
    quantum_renyi, smooth_quantum_renyi, smooth_subball, DensityMatrix, EntropyOrder, LogBase,
    MarkovChain, ProbVector, QuantumBlockSource,
};

fn main() -> smooth_renyi::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lambda = [0.5, 0.25, 0.125, 0.125];
    let rho = DensityMatrix::from_eigen(&lambda, &random_unitary(4, &mut rng))?;
    let classical = ProbVector::normalized(lambda.to_vec())?;
    for order in [EntropyOrder::Zero, EntropyOrder::One, EntropyOrder::new(2.0)?, EntropyOrder::Infinity] {
        println!("S_{order}(rho) = {}", quantum_renyi(&rho, order)?.display(LogBase::Two));
    }
    let q = smooth_quantum_renyi(&rho, EntropyOrder::Infinity, 0.2)?;
    let c = smooth_subball(&classical, EntropyOrder::Infinity, 0.2)?;
    println!("smooth min-entropy: quantum {}  classical {}", q.value.display(LogBase::Two), c.value.display(LogBase::Two));

    // the optimal sigma is dominated by rho
    let sigma = witness_operator(&rho, q.witness.as_ref().unwrap())?;
    let rest = DensityMatrix::subnormalized(rho.matrix().sub(&sigma)?)?;
    println!("tr(sigma) = {:.4}, rho - sigma >= 0 (min eigenvalue {:.2e})",
        sigma.trace().re, rest.spectrum().eigenvalues().last().unwrap());

    let chain = MarkovChain::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]], None)?;
    let source = QuantumBlockSource::classically_correlated(chain.clone(), Some(CMatrix::hadamard()))?;
    for n in 1..=6 {
        let block = cc_block_density(&source, n)?;
        let mut probs = block_distribution(&chain, n)?.atoms().to_vec();
        probs.sort_by(|a, b| b.total_cmp(a));
        let worst = block
            .spectrum()
            .eigenvalues()
            .iter()
            .zip(&probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("n = {n}: dim {:>2}, max |eigenvalue - P^n| = {worst:.1e}", block.dim());
    }
    Ok(())
}
