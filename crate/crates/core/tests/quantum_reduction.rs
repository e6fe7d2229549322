use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smooth_renyi::quantum::{
    cc_block_density, quantum_typical_report, random_ginibre, random_unitary, witness_operator,
    CMatrix,
};
use smooth_renyi::smoothing::in_ball;
use smooth_renyi::sources::block_distribution;
use smooth_renyi::{
    quantum_renyi, smooth_quantum_renyi, smooth_subball, typical_set_report, weyl_check,
    BallKind, DensityMatrix, EntropyOrder, LogBase, MarkovChain, ProbVector, QuantumBlockSource,
};

fn random_spectrum(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|_| rng.random_range(0.01..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

fn order_from(code: u8, a: f64) -> EntropyOrder {
    match code % 4 {
        0 => EntropyOrder::Zero,
        1 => EntropyOrder::Infinity,
        2 => EntropyOrder::new(0.05 + 0.9 * a).unwrap(),
        _ => EntropyOrder::new(1.1 + 6.0 * a).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smooth_entropy_reduces_to_spectrum(
        seed in any::<u64>(),
        d in 1usize..=16,
        code in any::<u8>(),
        a in 0.0f64..1.0,
        eps in 0.0f64..0.5,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = random_spectrum(d, &mut rng);
        let rho = DensityMatrix::from_eigen(&lambda, &random_unitary(d, &mut rng)).unwrap();
        let order = order_from(code, a);
        let q = smooth_quantum_renyi(&rho, order, eps).unwrap().value.nats();
        let c = smooth_subball(&ProbVector::normalized(lambda).unwrap(), order, eps)
            .unwrap()
            .value
            .nats();
        prop_assert!((q - c).abs() <= 1e-8, "{q} vs {c}");
    }

    #[test]
    fn unitary_invariance(seed in any::<u64>(), d in 1usize..=8, code in any::<u8>(), a in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = random_spectrum(d, &mut rng);
        let rho = DensityMatrix::from_eigen(&lambda, &random_unitary(d, &mut rng)).unwrap();
        let rotated = rho.rotated(&random_unitary(d, &mut rng)).unwrap();
        let order = if code % 5 == 4 { EntropyOrder::One } else { order_from(code, a) };
        let x = quantum_renyi(&rho, order).unwrap().nats();
        let y = quantum_renyi(&rotated, order).unwrap().nats();
        prop_assert!((x - y).abs() <= 1e-9);
    }

    #[test]
    fn witness_operator_lies_in_operator_ball(
        seed in any::<u64>(),
        d in 2usize..=8,
        code in any::<u8>(),
        a in 0.0f64..1.0,
        eps in 0.0f64..0.5,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = DensityMatrix::from_eigen(&random_spectrum(d, &mut rng), &random_unitary(d, &mut rng))
            .unwrap();
        let r = smooth_quantum_renyi(&rho, order_from(code, a), eps).unwrap();
        let mu = r.witness.unwrap();
        let sigma = witness_operator(&rho, &mu).unwrap();
        prop_assert!(sigma.trace().re >= 1.0 - eps - 1e-9);
        // 0 ≤ σ ≤ ρ: ρ - σ is a valid PSD increment of σ, and σ itself is PSD
        let report = weyl_check(&sigma, &rho.matrix().sub(&sigma).unwrap()).unwrap();
        prop_assert!(!report.violated);
        prop_assert!(DensityMatrix::subnormalized(sigma).is_ok());
    }

    #[test]
    fn dominated_operators_give_ball_members(
        seed in any::<u64>(),
        d in 2usize..=8,
        eps in 0.01f64..0.5,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = DensityMatrix::from_eigen(&random_spectrum(d, &mut rng), &random_unitary(d, &mut rng))
            .unwrap();
        let lambda = rho.spectrum().eigenvalues().to_vec();
        // scale eigenvalues down by factors keeping trace ≥ 1 - ε
        let shrink: Vec<f64> = (0..d).map(|_| rng.random_range(1.0 - eps..=1.0)).collect();
        let mu: Vec<f64> = lambda.iter().zip(&shrink).map(|(l, s)| l * s).collect();
        let sigma = DensityMatrix::subnormalized(
            rho.eigenvectors().conjugate_diagonal(&mu).unwrap(),
        )
        .unwrap();
        let classical = ProbVector::normalized(lambda).unwrap();
        let witness = ProbVector::new(sigma.spectrum().eigenvalues().to_vec()).unwrap();
        prop_assert!(in_ball(&classical, &witness, eps, BallKind::SubNormalized));
    }
}

#[test]
fn spec_examples() {
    let mixed = DensityMatrix::maximally_mixed(2).unwrap();
    let pure = DensityMatrix::new(
        CMatrix::from_parts(&[vec![0.5, 0.5], vec![0.5, 0.5]], None).unwrap(),
    )
    .unwrap();
    let ev = pure.spectrum().eigenvalues();
    assert!((ev[0] - 1.0).abs() < 1e-15 && ev[1] == 0.0);
    for order in [EntropyOrder::Zero, EntropyOrder::One, EntropyOrder::Infinity] {
        assert!((quantum_renyi(&mixed, order).unwrap().bits() - 1.0).abs() < 1e-12);
        assert!(quantum_renyi(&pure, order).unwrap().bits().abs() < 1e-14);
    }
    let rho = DensityMatrix::new(CMatrix::from_real_diagonal(&[0.5, 0.25, 0.25])).unwrap();
    let s2 = quantum_renyi(&rho, EntropyOrder::new(2.0).unwrap()).unwrap();
    assert!((s2.bits() - 1.41504).abs() < 1e-5);
    let smooth = smooth_quantum_renyi(&rho, EntropyOrder::Infinity, 0.25).unwrap();
    assert!((smooth.value.bits() - 2.0).abs() < 1e-12);
}

#[test]
fn correlated_block_spectra_are_block_distributions() {
    let chain = MarkovChain::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]], None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for unitary in [CMatrix::hadamard(), random_unitary(2, &mut rng)] {
        let src = QuantumBlockSource::classically_correlated(chain.clone(), Some(unitary)).unwrap();
        for n in 1..=6 {
            let rho = cc_block_density(&src, n).unwrap();
            let mut p = block_distribution(&chain, n).unwrap().atoms().to_vec();
            p.sort_by(|a, b| b.total_cmp(a));
            for (x, y) in rho.spectrum().eigenvalues().iter().zip(&p) {
                assert!((x - y).abs() <= 1e-8);
            }
        }
    }
}

#[test]
fn typical_subspace_matches_classical_set() {
    let chain = MarkovChain::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]], None).unwrap();
    let src = QuantumBlockSource::classically_correlated(chain.clone(), Some(CMatrix::hadamard()))
        .unwrap();
    for n in [4, 16, 100, 1000] {
        let q = quantum_typical_report(&src, n, 0.05, LogBase::Two).unwrap();
        let c = typical_set_report(&chain, n, 0.05, LogBase::Two).unwrap();
        assert_eq!(q.mass, c.mass);
        assert_eq!(q.log_cardinality, c.log_cardinality);
        assert!(q.card_ok);
    }
    // explicit projector onto the typical eigenvectors at n = 6
    let rho = cc_block_density(&src, 6).unwrap();
    let h = src.entropy_rate().unwrap().nats();
    let eps_nats = 0.2 * 2f64.ln();
    let typical: Vec<f64> = rho
        .spectrum()
        .eigenvalues()
        .iter()
        .map(|&l| {
            let rate = -l.ln() / 6.0;
            if (rate - h).abs() <= eps_nats + 1e-12 { 1.0 } else { 0.0 }
        })
        .collect();
    let projector = rho.eigenvectors().conjugate_diagonal(&typical).unwrap();
    let mass = rho.matrix().matmul(&projector).unwrap().trace().re;
    let c = typical_set_report(&chain, 6, 0.2, LogBase::Two).unwrap();
    assert!((mass - c.mass).abs() < 1e-9);
    assert!((projector.trace().re - c.cardinality.unwrap() as f64).abs() < 1e-9);
}

#[test]
fn weyl_campaign() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let d = rng.random_range(1..=8);
        let g = random_ginibre(d, &mut rng);
        let a = g.add(&g.dagger()).unwrap().scale(0.5);
        let h = random_ginibre(d, &mut rng);
        let b = h.dagger().matmul(&h).unwrap();
        assert!(!weyl_check(&a, &b).unwrap().violated);
    }
}

#[test]
fn eigensolver_handles_largest_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lambda = random_spectrum(128, &mut rng);
    let rho = DensityMatrix::from_eigen(&lambda, &random_unitary(128, &mut rng)).unwrap();
    let mut sorted = lambda.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    for (x, y) in rho.spectrum().eigenvalues().iter().zip(&sorted) {
        assert!((x - y).abs() < 1e-10);
    }
}
