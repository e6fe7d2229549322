use super::complex::Complex;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Largest matrix dimension the eigensolver accepts.
pub const MAX_EIGEN_DIM: usize = 256;

/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_TOL: f64 = 1e-9;

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and the unitary whose columns are the matching
/// eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    /// `‖H - V Λ V†‖_F`.
    pub fn reconstruction_error(&self, h: &CMatrix) -> f64 {
        let rebuilt = self
            .vectors
            .conjugate_diagonal(&self.values)
            .expect("decomposition matches its own dimension");
        h.sub(&rebuilt).map_or(f64::INFINITY, |d| d.frobenius_norm())
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn eigenvalues_hermitian(h: &CMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(h, false)?.values)
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn eigen_decomposition(h: &CMatrix) -> Result<EigenDecomposition> {
    jacobi(h, true)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let d = a.dim();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(h: &CMatrix, want_vectors: bool) -> Result<EigenDecomposition> {
    let d = h.dim();
    if d == 0 {
        return Err(Error::validation("matrix must be non-empty"));
    }
    if d > MAX_EIGEN_DIM {
        return Err(Error::resource(format!(
            "dimension {d} exceeds the eigensolver limit of {MAX_EIGEN_DIM}"
        )));
    }
    let defect = h.hermitian_defect();
    if !(defect <= HERMITIAN_TOL) {
        return Err(Error::validation(format!(
            "matrix is not Hermitian (max |H_ij - conj(H_ji)| = {defect:e})"
        )));
    }

    // work on the exactly Hermitian part
    let mut a = h.add(&h.dagger())?.scale(0.5);
    for i in 0..d {
        a[(i, i)].im = 0.0;
    }
    let mut v = CMatrix::identity(d);
    let threshold = OFF_DIAGONAL_TOL * h.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut a, want_vectors.then_some(&mut v), p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::numerical(format!(
            "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(d);
    if want_vectors {
        for (col, &src) in order.iter().enumerate() {
            for row in 0..d {
                vectors[(row, col)] = v[(row, src)];
            }
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Annihilates `a[p][q]` with `a ← U† a U`, where `U = diag(1, e^{-iφ}) · R(θ)`
/// on the (p, q) plane and `φ = arg a[p][q]`.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize) {
    let h = a[(p, q)];
    let mag = h.abs();
    if mag == 0.0 {
        return;
    }
    let w = h.scale(1.0 / mag);
    let wc = w.conj();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let d = a.dim();

    // columns: a ← a U
    for k in 0..d {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp.scale(c) - (wc * akq).scale(s);
        a[(k, q)] = akp.scale(s) + (wc * akq).scale(c);
    }
    // rows: a ← U† a
    for k in 0..d {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk.scale(c) - (w * aqk).scale(s);
        a[(q, k)] = apk.scale(s) + (w * aqk).scale(c);
    }
    a[(p, q)] = Complex::ZERO;
    a[(q, p)] = Complex::ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    if let Some(v) = v {
        for k in 0..d {
            let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
            v[(k, p)] = vkp.scale(c) - (wc * vkq).scale(s);
            v[(k, q)] = vkp.scale(s) + (wc * vkq).scale(c);
        }
    }
}
