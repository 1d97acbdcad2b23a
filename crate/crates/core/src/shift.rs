//! Weighted shift `(T x)_j = alpha_j x_{j+1}` on finitely supported
//! sequences with `l^p` norms.
//!
//! For nonincreasing weights `||T^l||_p = alpha_1 ... alpha_l` for every
//! `p`, and the `l`-th roots of these products decrease to `inf alpha_j`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::ConvergenceReport;
use crate::scale::Magnitude;

/// Nonincreasing weights `alpha_1 >= ... >= alpha_M >= 0`, continued by
/// `alpha_j = alpha_M` for `j > M`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedShift {
    weights: Vec<f64>,
}

impl WeightedShift {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("weight prefix is empty".into()));
        }
        if let Some((j, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidInput(format!(
                "weight alpha_{} = {w} is not a finite nonnegative number",
                j + 1
            )));
        }
        if let Some(j) = weights.windows(2).position(|p| p[1] > p[0]) {
            return Err(Error::InvalidInput(format!(
                "weights increase at j = {}: {} < {}",
                j + 1,
                weights[j],
                weights[j + 1]
            )));
        }
        Ok(WeightedShift { weights })
    }

    /// `alpha_j = c`.
    pub fn constant(c: f64, m: usize) -> Result<Self> {
        Self::new(vec![c; m.max(1)])
    }

    /// `alpha_j = r^j` for `0 <= r <= 1`.
    pub fn geometric(r: f64, m: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidInput(format!("geometric ratio {r} must lie in [0, 1]")));
        }
        Self::new((1..=m.max(1)).map(|j| r.powi(j as i32)).collect())
    }

    /// `alpha_j = a + b / j` for `b >= 0`.
    pub fn harmonic(a: f64, b: f64, m: usize) -> Result<Self> {
        if b < 0.0 {
            return Err(Error::InvalidInput(format!("harmonic slope {b} must be nonnegative")));
        }
        Self::new((1..=m.max(1)).map(|j| a + b / j as f64).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The constant continuation value, equal to `inf_j alpha_j`.
    pub fn tail(&self) -> f64 {
        *self.weights.last().expect("nonempty")
    }

    /// `alpha_j` for `j >= 1`.
    pub fn alpha(&self, j: usize) -> f64 {
        assert!(j >= 1, "weights are indexed from 1");
        self.weights[j.min(self.weights.len()) - 1]
    }

    /// `alpha_start * ... * alpha_{start+len-1}` in log scale.
    fn window_product(&self, start: usize, len: usize) -> Magnitude {
        let mut acc = Magnitude::ONE;
        for j in start..start + len {
            let a = self.alpha(j);
            if a == 0.0 {
                return Magnitude::ZERO;
            }
            acc = acc.mul_f64(a);
        }
        acc
    }
}

/// Norm exponent `p` in `[1, inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpExponent {
    Finite(f64),
    Infinity,
}

impl LpExponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(LpExponent::Finite(p))
        } else {
            Err(Error::InvalidInput(format!("norm exponent {p} must be in [1, inf)")))
        }
    }
}

/// Sequence with finitely many nonzero terms, indexed from 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiniteVector {
    entries: BTreeMap<usize, Complex64>,
}

impl FiniteVector {
    pub fn from_pairs<I: IntoIterator<Item = (usize, Complex64)>>(pairs: I) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (j, v) in pairs {
            if j == 0 {
                return Err(Error::InvalidInput("sequence indices start at 1".into()));
            }
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidInput(format!("entry {j} is not finite")));
            }
            if v != Complex64::new(0.0, 0.0) {
                entries.insert(j, v);
            }
        }
        Ok(FiniteVector { entries })
    }

    /// The unit vector `e_j`.
    pub fn basis(j: usize) -> Self {
        Self::from_pairs([(j, Complex64::new(1.0, 0.0))]).expect("valid basis index")
    }

    pub fn get(&self, j: usize) -> Complex64 {
        self.entries.get(&j).copied().unwrap_or_default()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self, p: LpExponent) -> f64 {
        let scale = self.entries.values().map(|v| v.norm()).fold(0.0, f64::max);
        match p {
            LpExponent::Infinity => scale,
            _ if scale == 0.0 => 0.0,
            LpExponent::Finite(p) => {
                let s: f64 = self.entries.values().map(|v| (v.norm() / scale).powf(p)).sum();
                scale * s.powf(1.0 / p)
            }
        }
    }
}

/// `(T^l x)_j = (alpha_j ... alpha_{j+l-1}) x_{j+l}`.
pub fn apply_power(t: &WeightedShift, x: &FiniteVector, l: usize) -> FiniteVector {
    let mut entries = BTreeMap::new();
    for (&idx, &v) in x.entries.range(l + 1..) {
        let j = idx - l;
        let w = t.window_product(j, l).to_f64();
        let y = v * w;
        if y != Complex64::new(0.0, 0.0) {
            entries.insert(j, y);
        }
    }
    FiniteVector { entries }
}

/// `a_l = alpha_1 ... alpha_l`, the operator norm of `T^l` on every `l^p`.
pub fn power_norm_formula(t: &WeightedShift, l: usize) -> f64 {
    t.window_product(1, l).to_f64()
}

/// Empirical operator norm of `T^l` on `l^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalNorm {
    /// `||T^l e_{l+1}||_p`, the extremal ratio.
    pub attained: f64,
    /// Largest `||T^l x||_p / ||x||_p` over random finitely supported `x`.
    pub max_random_ratio: f64,
}

/// Evaluates `T^l` on the extremal vector `e_{l+1}` and on `trials` random
/// complex vectors supported in `1..=l+16`.
pub fn op_norm_empirical(
    t: &WeightedShift,
    l: usize,
    p: LpExponent,
    trials: usize,
    seed: u64,
) -> Result<EmpiricalNorm> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    if l == 0 {
        return Err(Error::InvalidInput("power must be positive".into()));
    }
    let attained = apply_power(t, &FiniteVector::basis(l + 1), l).norm(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..trials {
        let len = rng.gen_range(1..=l + 16);
        let x = FiniteVector::from_pairs(
            (1..=len).map(|j| (j, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))),
        )?;
        let nx = x.norm(p);
        if nx > 0.0 {
            max_ratio = max_ratio.max(apply_power(t, &x, l).norm(p) / nx);
        }
    }
    Ok(EmpiricalNorm {
        attained,
        max_random_ratio: max_ratio,
    })
}

/// Table of `a_l^{1/l}` for `l = 1..=max_power`.
pub fn shift_limit_experiment(t: &WeightedShift, max_power: usize) -> Result<ConvergenceReport> {
    if max_power == 0 {
        return Err(Error::InvalidInput("maximum power must be positive".into()));
    }
    let mut report = ConvergenceReport::default();
    let mut acc = Magnitude::ONE;
    for l in 1..=max_power {
        acc = acc.mul_f64(t.alpha(l));
        report.push_magnitude(acc);
    }
    Ok(report)
}
