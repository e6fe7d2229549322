use rand::Rng;
use rand_distr::StandardNormal;

use super::complex::Complex;
use crate::error::{Error, Result};

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex::real(x);
        }
        m
    }

    /// Builds from separate real and imaginary parts (`im` may be omitted).
    pub fn from_parts(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        let dim = re.len();
        if dim == 0 {
            return Err(Error::validation("re: matrix must be non-empty"));
        }
        let mut m = Self::zeros(dim);
        for (i, row) in re.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::validation(format!(
                    "re[{i}]: row has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)].re = x;
            }
        }
        if let Some(im) = im {
            if im.len() != dim {
                return Err(Error::validation(format!(
                    "im: {} rows, expected {dim}",
                    im.len()
                )));
            }
            for (i, row) in im.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::validation(format!(
                        "im[{i}]: row has {} entries, expected {dim}",
                        row.len()
                    )));
                }
                for (j, &x) in row.iter().enumerate() {
                    m[(i, j)].im = x;
                }
            }
        }
        if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation("re/im: entries must be finite"));
        }
        Ok(m)
    }

    /// `2^{-1/2} [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut h = Self::zeros(2);
        h[(0, 0)] = Complex::real(s);
        h[(0, 1)] = Complex::real(s);
        h[(1, 0)] = Complex::real(s);
        h[(1, 1)] = Complex::real(-s);
        h
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn re_parts(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)].re).collect())
            .collect()
    }

    pub fn im_parts(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)].im).collect())
            .collect()
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        self.same_dim(other)?;
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == Complex::ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.same_dim(other)?;
        Ok(CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.same_dim(other)?;
        Ok(CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: f64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z.scale(k)).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self[(i, j)];
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = x * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `self^{⊗n}`.
    pub fn kron_power(&self, n: usize) -> CMatrix {
        let mut out = CMatrix::identity(1);
        for _ in 0..n {
            out = out.kron(self);
        }
        out
    }

    /// `U · diag(d) · U†` for a real diagonal.
    pub fn conjugate_diagonal(&self, diag: &[f64]) -> Result<CMatrix> {
        if diag.len() != self.dim {
            return Err(Error::validation("diagonal length does not match matrix"));
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex::ZERO;
                for (k, &w) in diag.iter().enumerate() {
                    if w != 0.0 {
                        acc += (self[(i, k)] * self[(j, k)].conj()).scale(w);
                    }
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex {
        let mut t = Complex::ZERO;
        for i in 0..self.dim {
            t += self[(i, i)];
        }
        t
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M_ij - conj(M_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).abs());
            }
        }
        worst
    }

    /// `max |(U U†)_ij - δ_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.matmul(&self.dagger()).expect("same dimension");
        let id = CMatrix::identity(self.dim);
        p.data
            .iter()
            .zip(&id.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn same_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::validation(format!(
                "dimension mismatch: {0}x{0} vs {1}x{1}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.dim + j]
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random complex Gaussian matrix (Ginibre ensemble).
pub fn random_ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = gaussian(rng);
        }
    }
    m
}

/// Haar-like random unitary: modified Gram–Schmidt on the columns of a
/// Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = random_ginibre(dim, rng);
    let mut cols: Vec<Vec<Complex>> = (0..dim)
        .map(|j| (0..dim).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            // <q_k, v_j>
            let mut dot = Complex::ZERO;
            for i in 0..dim {
                dot += cols[k][i].conj() * cols[j][i];
            }
            for i in 0..dim {
                let sub = dot * cols[k][i];
                cols[j][i] = cols[j][i] - sub;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z = z.scale(1.0 / norm));
    }
    let mut u = CMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// Random Hermitian matrix `(G + G†) / 2`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = random_ginibre(dim, rng);
    g.add(&g.dagger()).expect("same dimension").scale(0.5)
}
