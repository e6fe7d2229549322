//! Complex Jacobi eigendecomposition of a Hermitian matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smooth_renyi::quantum::{eigen_decomposition, random_hermitian, CMatrix, Complex};

fn main() -> smooth_renyi::Result<()> {
    // [[2, i], [-i, 2]]
    let mut h = CMatrix::identity(2).scale(2.0);
    h[(0, 1)] = Complex::new(0.0, 1.0);
    h[(1, 0)] = Complex::new(0.0, -1.0);
    let e = eigen_decomposition(&h)?;
    println!("eigenvalues {:?}", e.values);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in [4, 16, 64] {
        let h = random_hermitian(d, &mut rng);
        let e = eigen_decomposition(&h)?;
        println!(
            "d = {d:>2}: lambda_max {:>8.4}, lambda_min {:>8.4}, |H - V L V*| = {:.2e}",
            e.values[0],
            e.values[d - 1],
            e.reconstruction_error(&h)
        );
    }
    Ok(())
}
