//! Submultiplicative sequences: consistency checks, root tables with a
//! certified upper bound on the limit, and the binomial convolution that
//! combines two such sequences.
//!
//! If `a_{j+l} <= a_j a_l` for all `j, l`, the roots `a_k^{1/k}` converge to
//! their infimum. Every root of a finite prefix is therefore an upper bound
//! for the limit; nothing in a prefix bounds it from below.

use crate::error::{Error, Result};
use crate::report::RootReport;
use crate::scale::Magnitude;

/// Default relative slack for `a_{j+l} <= a_j a_l (1 + tol)`.
pub const DEFAULT_TOL_REL: f64 = 1e-9;

/// Finite prefix `a_1..a_N` of a nonnegative sequence.
///
/// Index 1 is always the first stored value. `has_unit_head` records the
/// convention `a_0 = 1`, which is never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixSequence {
    values: Vec<f64>,
    has_unit_head: bool,
}

impl PrefixSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::build(values, false)
    }

    /// A prefix with the implicit head `a_0 = 1`.
    pub fn with_unit_head(values: Vec<f64>) -> Result<Self> {
        Self::build(values, true)
    }

    fn build(values: Vec<f64>, has_unit_head: bool) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidInput(format!(
                "term a_{} = {v} is not a finite nonnegative number",
                i + 1
            )));
        }
        Ok(PrefixSequence { values, has_unit_head })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn has_unit_head(&self) -> bool {
        self.has_unit_head
    }

    pub fn set_unit_head(&mut self, on: bool) {
        self.has_unit_head = on;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `a_k` for `1 <= k <= N`; `a_0` is 1 when the unit head is set.
    pub fn get(&self, k: usize) -> Option<f64> {
        match k {
            0 if self.has_unit_head => Some(1.0),
            0 => None,
            _ => self.values.get(k - 1).copied(),
        }
    }

    /// Truncates to the first `n` terms.
    pub fn truncated(&self, n: usize) -> PrefixSequence {
        PrefixSequence {
            values: self.values[..n.min(self.values.len())].to_vec(),
            has_unit_head: self.has_unit_head,
        }
    }
}

/// Every pair `(j, l)` with `j + l <= N` where `a_{j+l} > a_j a_l (1 + tol_rel)`.
///
/// The comparison runs in log space so that products of very large or very
/// small terms neither overflow nor flush to zero.
pub fn check_submultiplicative(seq: &PrefixSequence, tol_rel: f64) -> Vec<(usize, usize)> {
    let logs: Vec<f64> = seq.values.iter().map(|&v| v.ln()).collect();
    let slack = tol_rel.ln_1p();
    let n = logs.len();
    let mut violations = Vec::new();
    for j in 1..=n {
        for l in j..=n - j {
            let lhs = logs[j + l - 1];
            let rhs = logs[j - 1] + logs[l - 1];
            let bad = if rhs == f64::NEG_INFINITY {
                lhs > f64::NEG_INFINITY
            } else {
                lhs > rhs + slack
            };
            if bad {
                violations.push((j, l));
                if j != l {
                    violations.push((l, j));
                }
            }
        }
    }
    violations.sort_unstable();
    violations
}

/// Root table `a_k^{1/k}` with the running minimum.
pub fn root_report(seq: &PrefixSequence) -> RootReport {
    let mut report = RootReport::default();
    for &v in &seq.values {
        report.push_magnitude(Magnitude::from_f64(v));
    }
    report
}

/// Bracket for `lim a_k^{1/k}` drawn from a finite prefix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitBracket {
    /// `min_k a_k^{1/k}`, a rigorous upper bound for the limit.
    pub certified_upper: f64,
    /// The last root; a heuristic point estimate only.
    pub estimate: f64,
}

/// Upper bound and point estimate for the limit of the roots.
///
/// Fails when the prefix is empty or contradicts submultiplicativity.
pub fn limit_bracket(seq: &PrefixSequence, tol_rel: f64) -> Result<LimitBracket> {
    if seq.is_empty() {
        return Err(Error::InvalidInput("empty sequence".into()));
    }
    let violations = check_submultiplicative(seq, tol_rel);
    if let Some(&(j, l)) = violations.first() {
        return Err(Error::Precondition(format!(
            "sequence is not submultiplicative: a_{} > a_{} * a_{} ({} violating pairs)",
            j + l,
            j,
            l,
            violations.len()
        )));
    }
    let report = root_report(seq);
    Ok(LimitBracket {
        certified_upper: report.final_min().unwrap_or(0.0),
        estimate: report.last_root().unwrap_or(0.0),
    })
}

/// `c_n = sum_{j=0}^n C(n, j) a_j b_{n-j}` for `n = 1..=n_terms`, with
/// `a_0 = b_0 = 1`.
///
/// Each sum is evaluated as a log-sum-exp around its largest term, with
/// binomial coefficients taken from accumulated log-factorials.
pub fn binomial_convolve(a: &PrefixSequence, b: &PrefixSequence, n_terms: usize) -> Result<PrefixSequence> {
    if n_terms == 0 {
        return Err(Error::InvalidInput("convolution length must be positive".into()));
    }
    if !a.has_unit_head || !b.has_unit_head {
        return Err(Error::Precondition(
            "binomial convolution needs both sequences to carry a_0 = 1".into(),
        ));
    }
    if a.len() < n_terms || b.len() < n_terms {
        return Err(Error::InvalidInput(format!(
            "prefixes of length {} and {} are shorter than {n_terms}",
            a.len(),
            b.len()
        )));
    }

    let log_fact = log_factorials(n_terms);
    let log_term = |s: &PrefixSequence, k: usize| if k == 0 { 0.0 } else { s.values[k - 1].ln() };

    let mut out = Vec::with_capacity(n_terms);
    let mut logs = Vec::with_capacity(n_terms + 1);
    for n in 1..=n_terms {
        logs.clear();
        for j in 0..=n {
            let lt = log_term(a, j) + log_term(b, n - j);
            if lt > f64::NEG_INFINITY {
                logs.push(log_fact[n] - log_fact[j] - log_fact[n - j] + lt);
            }
        }
        out.push(log_sum_exp(&logs).exp());
    }
    PrefixSequence::with_unit_head(out)
}

/// `ln(k!)` for `k = 0..=n`.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `ln(sum exp(x_i))`, `-inf` for an empty slice.
pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let pivot = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if pivot == f64::NEG_INFINITY || pivot.is_infinite() {
        return pivot;
    }
    let s: f64 = xs.iter().map(|&x| (x - pivot).exp()).sum();
    pivot + s.ln()
}

/// Result of the elementary bound `max(t) <= sum(t) <= m * max(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxSumBound {
    pub max: f64,
    pub sum: f64,
    pub bound_ok: bool,
}

pub fn max_sum_bound(t: &[f64]) -> Result<MaxSumBound> {
    if t.is_empty() {
        return Err(Error::InvalidInput("empty list".into()));
    }
    if let Some(v) = t.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidInput(format!("{v} is not a finite nonnegative number")));
    }
    let max = t.iter().copied().fold(0.0, f64::max);
    let sum: f64 = t.iter().sum();
    let bound_ok = max <= sum && sum <= t.len() as f64 * max;
    Ok(MaxSumBound { max, sum, bound_ok })
}

/// `a_n <= a_k^p a_1^r` for `n = p k + r`, checked for every `k <= n <= N`.
/// Returns the first failing `(n, k)` pair, if any.
pub fn division_bound_violation(seq: &PrefixSequence, tol_rel: f64) -> Option<(usize, usize)> {
    let n_max = seq.len();
    let a1 = Magnitude::from_f64(seq.values.first().copied()?);
    for k in 1..=n_max {
        let ak = Magnitude::from_f64(seq.values[k - 1]);
        for n in k..=n_max {
            let (p, r) = (n / k, n % k);
            let mut bound = Magnitude::ONE;
            for _ in 0..p {
                bound = bound * ak;
            }
            for _ in 0..r {
                bound = bound * a1;
            }
            let an = Magnitude::from_f64(seq.values[n - 1]);
            let bad = if bound.is_zero() {
                !an.is_zero()
            } else {
                an.ln() > bound.ln() + tol_rel.ln_1p()
            };
            if bad {
                return Some((n, k));
            }
        }
    }
    None
}
