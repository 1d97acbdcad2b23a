//! Dense complex square matrices with induced norms.
//!
//! This is the noncommutative algebra instance. It carries a Gaussian
//! elimination solver, an eigenvalue oracle for `n <= 4` that shares no code
//! with the power-norm machinery, and resolvent grid scans.

mod eigen;
mod spectrum;

pub use eigen::{characteristic_polynomial, eigen_oracle, oracle_spectral_radius, spectral_mapping_check};
pub use spectrum::{spectrum_scan, GridParams, SpectrumCell, SpectrumGrid};

use num_complex::Complex64;

use crate::algebra::{NormedAlgebra, Scalar};
use crate::error::{Error, Result};

/// Pivots below this multiple of `||A||` mark the matrix singular.
pub const PIVOT_REL_THRESHOLD: f64 = 1e-12;

/// Induced operator norm used by a [`DenseMatrix`].
///
/// Both give `||I|| = 1`. The Frobenius norm does not and is not offered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormKind {
    /// Maximum absolute row sum (operator norm on `l^inf`).
    #[default]
    Inf,
    /// Maximum absolute column sum (operator norm on `l^1`).
    One,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
    norm_kind: NormKind,
}

impl DenseMatrix {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn from_row_major(n: usize, data: Vec<Complex64>, norm_kind: NormKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "{} entries do not form a {n}x{n} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(DenseMatrix { n, data, norm_kind })
    }

    pub fn from_rows(rows: &[Vec<Complex64>], norm_kind: NormKind) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "row of length {} in a matrix with {n} rows",
                r.len()
            )));
        }
        Self::from_row_major(n, rows.concat(), norm_kind)
    }

    pub fn from_real_rows(rows: &[&[f64]], norm_kind: NormKind) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows, norm_kind)
    }

    pub fn identity(n: usize, norm_kind: NormKind) -> Self {
        let mut m = Self::zeros(n, norm_kind);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn zeros(n: usize, norm_kind: NormKind) -> Self {
        DenseMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
            norm_kind,
        }
    }

    pub fn diagonal(diag: &[Complex64], norm_kind: NormKind) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, norm_kind);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm_kind
    }

    pub fn with_norm(mut self, norm_kind: NormKind) -> Self {
        self.norm_kind = norm_kind;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, k: u32) -> DenseMatrix {
        let mut out = self.identity_like();
        for _ in 0..k {
            out = NormedAlgebra::mul(&out, self);
        }
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        DenseMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
            norm_kind: self.norm_kind,
        }
    }

    /// Gauss-Jordan elimination with partial pivoting.
    ///
    /// Returns the inverse, or `None` when a pivot falls below
    /// `PIVOT_REL_THRESHOLD * ||A||`, together with the smallest pivot
    /// magnitude met.
    pub fn eliminate(&self) -> (Option<DenseMatrix>, f64) {
        let n = self.n;
        let threshold = PIVOT_REL_THRESHOLD * self.norm();
        let mut a = self.data.clone();
        let mut inv = Self::identity(n, self.norm_kind).data;
        let mut min_pivot = f64::INFINITY;
        for col in 0..n {
            let (prow, pmag) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            min_pivot = min_pivot.min(pmag);
            if pmag <= threshold || pmag == 0.0 {
                return (None, min_pivot);
            }
            if prow != col {
                for j in 0..n {
                    a.swap(prow * n + j, col * n + j);
                    inv.swap(prow * n + j, col * n + j);
                }
            }
            let pinv = a[col * n + col].inv();
            for j in 0..n {
                a[col * n + j] *= pinv;
                inv[col * n + j] *= pinv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[col * n + j], inv[col * n + j]);
                    a[r * n + j] -= f * ac;
                    inv[r * n + j] -= f * ic;
                }
            }
        }
        let out = DenseMatrix {
            n,
            data: inv,
            norm_kind: self.norm_kind,
        };
        (Some(out), min_pivot)
    }

    /// `A^{-1}` with `||A A^{-1} - I|| <= tol`.
    ///
    /// Up to two steps of iterative refinement are applied when the first
    /// solve misses the tolerance.
    pub fn inverse(&self, tol: f64) -> Result<DenseMatrix> {
        let (inv, min_pivot) = self.eliminate();
        let mut inv = inv.ok_or(Error::Singular {
            pivot: min_pivot,
            threshold: PIVOT_REL_THRESHOLD * self.norm(),
        })?;
        let e = self.identity_like();
        let mut residual = self.mul(&inv).sub(&e).norm();
        for _ in 0..2 {
            if residual <= tol {
                break;
            }
            let correction = e.sub(&self.mul(&inv));
            inv = inv.add(&inv.mul(&correction));
            residual = self.mul(&inv).sub(&e).norm();
        }
        if residual > tol {
            return Err(Error::Residual { residual, tol });
        }
        Ok(inv)
    }
}

/// Direct inverse by elimination; see [`DenseMatrix::inverse`].
pub fn direct_inverse(a: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    a.inverse(tol)
}

impl NormedAlgebra for DenseMatrix {
    fn identity_like(&self) -> Self {
        Self::identity(self.n, self.norm_kind)
    }

    fn zero_like(&self) -> Self {
        Self::zeros(self.n, self.norm_kind)
    }

    fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn scale(&self, alpha: Scalar) -> Self {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * alpha).collect(),
            norm_kind: self.norm_kind,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        DenseMatrix {
            n,
            data,
            norm_kind: self.norm_kind,
        }
    }

    fn norm(&self) -> f64 {
        let n = self.n;
        match self.norm_kind {
            NormKind::Inf => (0..n)
                .map(|i| (0..n).map(|j| self.data[i * n + j].norm()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::One => (0..n)
                .map(|j| (0..n).map(|i| self.data[i * n + j].norm()).sum::<f64>())
                .fold(0.0, f64::max),
        }
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    fn direct_inverse(&self, tol: f64) -> Option<Result<Self>> {
        Some(self.inverse(tol))
    }
}
