//! The Wiener algebra of absolutely summable Fourier series, restricted to
//! finitely supported Laurent coefficient maps.
//!
//! `f(theta) = sum_j a_j e^{i j theta}`; negative degrees carry the
//! conjugate powers. The norm is `||f||_1 = sum_j |a_j|` and multiplication
//! is coefficient convolution, so the algebra is commutative.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{neumann_series, power_norms, NeumannOptions, NormedAlgebra, Scalar, DEFAULT_PROBE_DEPTH};
use crate::error::{Error, Result};
use crate::report::ConvergenceReport;

/// Largest accepted `|degree|` for user-built elements.
pub const MAX_ABS_DEGREE: i64 = 1 << 31;

/// Default cap on the support width of a computed power.
pub const DEFAULT_COEFF_CAP: usize = 1_000_000;

/// Default sup-norm sampling grid.
pub const DEFAULT_GRID: usize = 4096;

const MAX_INVERSE_TERMS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WienerElement {
    coeffs: BTreeMap<i64, Complex64>,
}

impl WienerElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, Complex64::new(1.0, 0.0))
    }

    /// `c z^degree`.
    pub fn monomial(degree: i64, c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            coeffs.insert(degree, c);
        }
        WienerElement { coeffs }
    }

    /// Sums duplicate degrees; rejects non-finite values and degrees beyond
    /// [`MAX_ABS_DEGREE`].
    pub fn from_pairs<I: IntoIterator<Item = (i64, Complex64)>>(pairs: I) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (d, c) in pairs {
            if d.abs() > MAX_ABS_DEGREE {
                return Err(Error::InvalidInput(format!("degree {d} out of range")));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidInput(format!("coefficient of degree {d} is not finite")));
            }
            *coeffs.entry(d).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut out = WienerElement { coeffs };
        out.prune();
        Ok(out)
    }

    pub fn from_real_pairs(pairs: &[(i64, f64)]) -> Result<Self> {
        Self::from_pairs(pairs.iter().map(|&(d, c)| (d, Complex64::new(c, 0.0))))
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    }

    pub fn coeff(&self, degree: i64) -> Complex64 {
        self.coeffs.get(&degree).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// `(min_degree, max_degree)`, `None` for zero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// `sum_j |j a_j|`, a Lipschitz constant for `theta -> f(theta)`.
    pub fn derivative_bound(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&d, c)| d.unsigned_abs() as f64 * c.norm())
            .sum()
    }

    /// Point evaluation at `e^{i theta}`, a character of the algebra.
    pub fn evaluate(&self, theta: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&d, &c)| c * Complex64::from_polar(1.0, d as f64 * theta))
            .sum()
    }

    /// Coefficient convolution.
    ///
    /// Operands are put in a canonical order first so that `f g` and `g f`
    /// accumulate in the same order and agree bit for bit.
    pub fn multiply(&self, other: &Self) -> Self {
        let (a, b) = if canonical_cmp(self, other).is_le() {
            (self, other)
        } else {
            (other, self)
        };
        a.convolve(b)
    }

    fn convolve(&self, other: &Self) -> Self {
        let (Some((lo_a, hi_a)), Some((lo_b, hi_b))) = (self.degree_range(), other.degree_range()) else {
            return Self::zero();
        };
        let width = (hi_a - lo_a + hi_b - lo_b) as u64 + 1;
        let pairs = (self.coeffs.len() * other.coeffs.len()) as u64;
        let zero = Complex64::new(0.0, 0.0);
        let mut out = if width <= 4 * pairs + 64 {
            let base = lo_a + lo_b;
            let mut dense = vec![zero; width as usize];
            for (&da, &ca) in &self.coeffs {
                for (&db, &cb) in &other.coeffs {
                    dense[(da + db - base) as usize] += ca * cb;
                }
            }
            let coeffs = dense
                .into_iter()
                .enumerate()
                .map(|(i, c)| (base + i as i64, c))
                .collect();
            WienerElement { coeffs }
        } else {
            let mut coeffs = BTreeMap::new();
            for (&da, &ca) in &self.coeffs {
                for (&db, &cb) in &other.coeffs {
                    *coeffs.entry(da + db).or_insert(zero) += ca * cb;
                }
            }
            WienerElement { coeffs }
        };
        out.prune();
        out
    }

    /// Samples `|f|` on `m` equispaced angles and certifies the true sup.
    pub fn sup_norm(&self, m: usize) -> Result<SupEstimate> {
        if m < 8 {
            return Err(Error::InvalidInput(format!("grid size {m} is below 8")));
        }
        let l1 = self.l1_norm();
        let sampled = (0..m)
            .map(|i| self.evaluate(2.0 * PI * i as f64 / m as f64).norm())
            .fold(0.0, f64::max);
        // |f| <= ||f||_1 pointwise; clamping only removes rounding excess.
        let grid_max = sampled.min(l1);
        let certified_upper_error = PI / m as f64 * self.derivative_bound();
        Ok(SupEstimate {
            grid_max,
            certified_upper_error,
            lower: grid_max,
            upper: (grid_max + certified_upper_error).min(l1),
        })
    }
}

fn canonical_cmp(a: &WienerElement, b: &WienerElement) -> std::cmp::Ordering {
    let key = |(d, c): (&i64, &Complex64)| (*d, c.re.to_bits(), c.im.to_bits());
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().map(key).cmp(b.coeffs.iter().map(key)))
}

/// Sampled sup norm with a certified enclosure `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupEstimate {
    pub grid_max: f64,
    /// `(pi / M) sum_j |j a_j|`.
    pub certified_upper_error: f64,
    pub lower: f64,
    pub upper: f64,
}

impl SupEstimate {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

impl NormedAlgebra for WienerElement {
    fn identity_like(&self) -> Self {
        Self::identity()
    }

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, &c) in &other.coeffs {
            *out.coeffs.entry(d).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune();
        out
    }

    fn scale(&self, alpha: Scalar) -> Self {
        let mut out = WienerElement {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d, c * alpha)).collect(),
        };
        out.prune();
        out
    }

    fn mul(&self, other: &Self) -> Self {
        self.multiply(other)
    }

    fn norm(&self) -> f64 {
        self.l1_norm()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `(||f^n||_1)^{1/n}` for `n = 1..=n_max`.
///
/// Fails with `Budget` before any work if the support of `f^{n_max}` would
/// be wider than `coeff_cap`.
pub fn wiener_spectral_radius(f: &WienerElement, n_max: usize, coeff_cap: usize) -> Result<ConvergenceReport> {
    if let Some((lo, hi)) = f.degree_range() {
        let width = (hi - lo) as u128 * n_max as u128 + 1;
        if width > coeff_cap as u128 {
            return Err(Error::Budget(format!(
                "power {n_max} would need {width} coefficients (cap {coeff_cap})"
            )));
        }
    }
    power_norms(f, n_max)
}

/// `f^{-1}` with `||f f^{-1} - e||_1 <= tol`.
///
/// `f` is written as `c z^d (e - g)` and `(e - g)^{-1}` summed as a Neumann
/// series. The mean coefficient (`d = 0`) is tried first, then the largest
/// coefficient.
pub fn wiener_inverse(f: &WienerElement, tol: f64) -> Result<WienerElement> {
    let mut pivots = vec![0i64];
    if let Some((&d, _)) = f
        .coeffs
        .iter()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()).then(b.0.cmp(a.0)))
    {
        if d != 0 {
            pivots.push(d);
        }
    }
    let opts = NeumannOptions {
        tol,
        max_terms: MAX_INVERSE_TERMS,
        probe_depth: DEFAULT_PROBE_DEPTH,
    };
    let mut failure = Error::NotConvergent {
        probe_depth: DEFAULT_PROBE_DEPTH,
        best_norm: f64::INFINITY,
    };
    for d in pivots {
        let c = f.coeff(d);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let unit = WienerElement::monomial(-d, c.inv());
        let g = WienerElement::identity().sub(&f.multiply(&unit));
        match neumann_series(&g, &opts) {
            Ok(series) => {
                let inv = series.inverse.multiply(&unit);
                let residual = f.multiply(&inv).sub(&WienerElement::identity()).l1_norm();
                if residual > tol {
                    return Err(Error::Residual { residual, tol });
                }
                return Ok(inv);
            }
            Err(e @ Error::NotConvergent { .. }) => failure = e,
            Err(e) => return Err(e),
        }
    }
    Err(failure)
}
