//! Seeded random inputs shared by the self-test and the CLI.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::NormedAlgebra;
use crate::matrix::{DenseMatrix, NormKind};
use crate::wiener::WienerElement;

/// Complex number with both parts uniform in `[-1, 1)`.
pub fn unit_box<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `n x n` matrix with entries in the complex unit box.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, kind: NormKind) -> DenseMatrix {
    let data = (0..n * n).map(|_| unit_box(rng)).collect();
    DenseMatrix::from_row_major(n, data, kind).expect("finite entries")
}

/// `sum_i c_i m^i` with `c_i` in the unit box, `i <= degree`.
pub fn random_polynomial_in<R: Rng>(rng: &mut R, m: &DenseMatrix, degree: usize) -> DenseMatrix {
    let mut power = m.identity_like();
    let mut out = m.zero_like();
    for _ in 0..=degree {
        out = out.add(&power.scale(unit_box(rng)));
        power = power.mul(m);
    }
    out
}

/// Laurent polynomial with degrees in `-degree..=degree`, coefficients in
/// the unit box.
pub fn random_trig_poly<R: Rng>(rng: &mut R, degree: i64) -> WienerElement {
    WienerElement::from_pairs((-degree..=degree).map(|d| (d, unit_box(rng)))).expect("finite coefficients")
}

/// `a_j = exp(c j + d sqrt(j))` parameters: `c` in `[-1, 1)`, `d` in `[0, d_max)`.
pub fn random_subadd<R: Rng>(rng: &mut R, d_max: f64) -> (f64, f64) {
    (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..d_max))
}
