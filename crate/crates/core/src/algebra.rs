//! Generic engine over unital normed algebras: power-norm tables, spectral
//! radius upper bounds, Neumann-series inversion, perturbation inversion,
//! resolvents and the telescoping identity.
//!
//! Every instance must satisfy `||e|| = 1` and `||x y|| <= ||x|| ||y||`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::ConvergenceReport;
use crate::scale::{pow2, Magnitude};

/// Scalar field. Real data embeds with zero imaginary part.
pub type Scalar = Complex64;

/// Default number of powers probed for one with norm below one.
pub const DEFAULT_PROBE_DEPTH: usize = 32;

/// Default cap on the number of Neumann terms.
pub const DEFAULT_MAX_TERMS: usize = 100_000;

/// Absolute floor used by [`NormedAlgebra::approx_eq`].
pub const APPROX_ABS_FLOOR: f64 = 1e-12;

/// A unital complex normed algebra.
pub trait NormedAlgebra: Clone {
    /// The unit `e` of the algebra `self` lives in.
    fn identity_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Scalar::new(-1.0, 0.0)))
    }
    fn scale(&self, alpha: Scalar) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn norm(&self) -> f64;

    /// Structural zero test, independent of the norm.
    fn is_zero(&self) -> bool;

    /// Instances with a direct solver return `Some`; the engine falls back
    /// to Neumann series otherwise.
    fn direct_inverse(&self, _tol: f64) -> Option<Result<Self>> {
        None
    }

    /// `||x - y|| <= max(rel_tol * max(||x||, ||y||), 1e-12)`.
    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.norm().max(other.norm());
        self.sub(other).norm() <= (rel_tol * scale).max(APPROX_ABS_FLOOR)
    }
}

/// Running power `x^k` held as `2^exp2 * direction`, with the direction's
/// norm kept within a factor of two of one.
#[derive(Debug, Clone)]
pub struct NormalizedPower<A> {
    direction: A,
    exp2: i64,
    k: u64,
}

impl<A: NormedAlgebra> NormalizedPower<A> {
    /// Starts at `x^1`.
    pub fn new(x: &A) -> Result<Self> {
        let mut p = NormalizedPower {
            direction: x.clone(),
            exp2: 0,
            k: 1,
        };
        p.renormalize()?;
        Ok(p)
    }

    /// Advances to `x^{k+1}`.
    pub fn step(&mut self, x: &A) -> Result<()> {
        self.direction = self.direction.mul(x);
        self.k += 1;
        self.renormalize()
    }

    fn renormalize(&mut self) -> Result<()> {
        let n = self.direction.norm();
        if n == 0.0 {
            if !self.direction.is_zero() {
                return Err(Error::NormAxiom);
            }
            return Ok(());
        }
        if !n.is_finite() {
            return Err(Error::InvalidInput(format!("power {} has non-finite norm", self.k)));
        }
        let e = Magnitude::from_f64(n).exp2();
        if e != 0 {
            self.direction = self.direction.scale(Scalar::new(pow2(-e), 0.0));
            self.exp2 += e;
        }
        Ok(())
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn direction(&self) -> &A {
        &self.direction
    }

    /// `||x^k||` as a log-scale magnitude.
    pub fn magnitude(&self) -> Magnitude {
        let m = Magnitude::from_f64(self.direction.norm());
        if m.is_zero() {
            return m;
        }
        m.shifted(self.exp2)
    }

    /// Natural log of `||x^k||`.
    pub fn log_norm(&self) -> f64 {
        self.magnitude().ln()
    }

    /// The unnormalized power; only meaningful while it is representable.
    pub fn reconstruct(&self) -> A {
        let mut out = self.direction.clone();
        let mut e = self.exp2;
        while e != 0 {
            let step = e.clamp(-1000, 1000);
            out = out.scale(Scalar::new(pow2(step), 0.0));
            e -= step;
        }
        out
    }
}

/// Table of `||x^k||^{1/k}` for `k = 1..=n`.
pub fn power_norms<A: NormedAlgebra>(x: &A, n: usize) -> Result<ConvergenceReport> {
    if n == 0 {
        return Err(Error::InvalidInput("power depth must be at least 1".into()));
    }
    let mut report = ConvergenceReport::default();
    let mut p = NormalizedPower::new(x)?;
    report.push_magnitude(p.magnitude());
    for _ in 1..n {
        p.step(x)?;
        report.push_magnitude(p.magnitude());
    }
    Ok(report)
}

/// `min_{k <= n} ||x^k||^{1/k}`: an upper bound on the spectral radius.
pub fn spectral_radius_upper<A: NormedAlgebra>(x: &A, n: usize) -> Result<f64> {
    Ok(power_norms(x, n)?.final_min().unwrap_or(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumannOptions {
    pub tol: f64,
    pub max_terms: usize,
    pub probe_depth: usize,
}

impl NeumannOptions {
    pub fn with_tol(tol: f64) -> Self {
        NeumannOptions {
            tol,
            ..Default::default()
        }
    }
}

impl Default for NeumannOptions {
    fn default() -> Self {
        NeumannOptions {
            tol: 1e-12,
            max_terms: DEFAULT_MAX_TERMS,
            probe_depth: DEFAULT_PROBE_DEPTH,
        }
    }
}

/// A truncated Neumann series `sum_{j<terms} x^j` with its certificate.
#[derive(Debug, Clone)]
pub struct NeumannSeries<A> {
    pub inverse: A,
    pub terms: usize,
    /// Smallest `k` with `||x^k|| < 1`.
    pub block: usize,
    /// `||x^block||`.
    pub contraction: f64,
    /// Bound on the norm of the omitted tail.
    pub tail_bound: f64,
    /// `||(e - x) y - e||`, measured.
    pub residual: f64,
}

/// `(e - x)^{-1}` as a truncated Neumann series.
///
/// A power `x^k` with `q = ||x^k|| < 1` is located first. The tail after
/// `t` terms equals `x^t * sum_i x^i`, whose norm is at most
/// `||x^t|| * (sum_{r<k} ||x^r||) / (1 - q)`; summation stops once that
/// falls below `tol`.
pub fn neumann_series<A: NormedAlgebra>(x: &A, opts: &NeumannOptions) -> Result<NeumannSeries<A>> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance {} must be positive", opts.tol)));
    }
    let e = x.identity_like();
    let mut sum = x.zero_like();
    let mut power = e.clone();
    let mut head_norms = 0.0;
    let mut best = f64::INFINITY;
    let mut found = None;
    for k in 1..=opts.probe_depth.max(1) {
        sum = sum.add(&power);
        head_norms += power.norm();
        power = power.mul(x);
        let q = power.norm();
        best = best.min(q);
        if q < 1.0 {
            found = Some((k, q));
            break;
        }
    }
    let (block, q) = found.ok_or(Error::NotConvergent {
        probe_depth: opts.probe_depth.max(1),
        best_norm: best,
    })?;

    let factor = head_norms / (1.0 - q);
    let mut terms = block;
    loop {
        let tail = power.norm() * factor;
        if tail <= opts.tol {
            let residual = e.sub(x).mul(&sum).sub(&e).norm();
            return Ok(NeumannSeries {
                inverse: sum,
                terms,
                block,
                contraction: q,
                tail_bound: tail,
                residual,
            });
        }
        if terms >= opts.max_terms {
            return Err(Error::Budget(format!(
                "{terms} Neumann terms leave a tail bound of {tail:e} above {:e}",
                opts.tol
            )));
        }
        sum = sum.add(&power);
        power = power.mul(x);
        terms += 1;
    }
}

/// `(e - x)^{-1}` with the default probe depth.
pub fn neumann_inverse<A: NormedAlgebra>(x: &A, tol: f64, max_terms: usize) -> Result<A> {
    let opts = NeumannOptions {
        tol,
        max_terms,
        probe_depth: DEFAULT_PROBE_DEPTH,
    };
    Ok(neumann_series(x, &opts)?.inverse)
}

/// Inverts `y` near an element `x` with known inverse `x_inv`.
///
/// Requires `||y - x|| < 1 / ||x_inv||`. Writing `y = x (e - z)` with
/// `z = -x_inv (y - x)` gives `y^{-1} = (e - z)^{-1} x_inv`. The returned
/// inverse satisfies `||y y^{-1} - e|| <= 10 tol`.
pub fn invert_near<A: NormedAlgebra>(x_inv: &A, x: &A, y: &A, tol: f64) -> Result<A> {
    let e = x.identity_like();
    let base_residual = x.mul(x_inv).sub(&e).norm();
    if base_residual > tol {
        return Err(Error::Precondition(format!(
            "supplied inverse has residual {base_residual:e} above {tol:e}"
        )));
    }
    let delta = y.sub(x);
    let inv_norm = x_inv.norm();
    let margin = delta.norm() * inv_norm;
    if margin.is_nan() || margin >= 1.0 {
        return Err(Error::Precondition(format!(
            "||y - x|| * ||x^-1|| = {margin} is not below 1"
        )));
    }
    let z = x_inv.mul(&delta).scale(Scalar::new(-1.0, 0.0));
    let inner_tol = tol / (x.norm() * inv_norm).max(1.0);
    let series = neumann_series(&z, &NeumannOptions::with_tol(inner_tol))?;
    let result = series.inverse.mul(x_inv);
    let residual = y.mul(&result).sub(&e).norm();
    if residual > 10.0 * tol {
        return Err(Error::Residual {
            residual,
            tol: 10.0 * tol,
        });
    }
    Ok(result)
}

/// `(lambda e - x)^{-1}`.
///
/// Uses the instance's direct solver when it has one. Otherwise the
/// Neumann series of `x / lambda` is used, which requires `|lambda|` to
/// exceed the certified radius bound over [`DEFAULT_PROBE_DEPTH`] powers.
pub fn resolvent<A: NormedAlgebra>(x: &A, lambda: Scalar, tol: f64) -> Result<A> {
    let e = x.identity_like();
    let shifted = e.scale(lambda).sub(x);
    if let Some(direct) = shifted.direct_inverse(tol) {
        return direct;
    }
    let bound = spectral_radius_upper(x, DEFAULT_PROBE_DEPTH)?;
    if lambda.norm().partial_cmp(&bound) != Some(std::cmp::Ordering::Greater) {
        let best_norm = if lambda.norm() == 0.0 {
            f64::INFINITY
        } else {
            let scaled = x.scale(lambda.inv());
            power_norms(&scaled, DEFAULT_PROBE_DEPTH)?
                .values()
                .into_iter()
                .fold(f64::INFINITY, f64::min)
        };
        return Err(Error::NotConvergent {
            probe_depth: DEFAULT_PROBE_DEPTH,
            best_norm,
        });
    }
    let series = neumann_series(&x.scale(lambda.inv()), &NeumannOptions::with_tol(tol))?;
    Ok(series.inverse.scale(lambda.inv()))
}

/// Defect of `(e - x) sum_{j<=n} x^j = sum_{j<=n} x^j (e - x) = e - x^{n+1}`,
/// the larger of the left- and right-factored forms.
pub fn telescope_check<A: NormedAlgebra>(x: &A, n: usize) -> f64 {
    let e = x.identity_like();
    let mut sum = x.zero_like();
    let mut power = e.clone();
    for _ in 0..=n {
        sum = sum.add(&power);
        power = power.mul(x);
    }
    let target = e.sub(&power);
    let one_minus = e.sub(x);
    let left = one_minus.mul(&sum).sub(&target).norm();
    let right = sum.mul(&one_minus).sub(&target).norm();
    left.max(right)
}
