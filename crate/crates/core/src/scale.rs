//! Overflow-safe positive magnitudes.
//!
//! A [`Magnitude`] stores `mant * 2^exp2` with the mantissa kept near one.
//! Powers of two round-trip exactly, which keeps roots such as
//! `(2^k)^{1/k}` exact.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnitude {
    mant: f64,
    exp2: i64,
}

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude { mant: 0.0, exp2: 0 };
    pub const ONE: Magnitude = Magnitude { mant: 1.0, exp2: 0 };

    /// Splits a finite nonnegative value. Negative or non-finite input is a
    /// caller bug.
    pub fn from_f64(x: f64) -> Self {
        debug_assert!(x >= 0.0 && x.is_finite(), "magnitude of {x}");
        if x <= 0.0 {
            return Self::ZERO;
        }
        let e = x.log2().round() as i64;
        Magnitude {
            mant: x * pow2(-e),
            exp2: e,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub fn mant(&self) -> f64 {
        self.mant
    }

    pub fn exp2(&self) -> i64 {
        self.exp2
    }

    /// Multiplies by a finite nonnegative factor, renormalizing the mantissa.
    pub fn mul_f64(self, factor: f64) -> Self {
        self * Magnitude::from_f64(factor)
    }

    /// Natural logarithm; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mant.ln() + self.exp2 as f64 * std::f64::consts::LN_2
        }
    }

    /// The value as a plain float, saturating to `inf` or `0`.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp2.clamp(-2000, 2000) as i32;
        // Split the exponent so neither factor over/underflows on its own.
        let half = e / 2;
        self.mant * 2f64.powi(half) * 2f64.powi(e - half)
    }

    /// `self^{1/k}` for `k >= 1`.
    pub fn kth_root(&self, k: u64) -> f64 {
        assert!(k >= 1, "root index must be positive");
        if self.is_zero() {
            return 0.0;
        }
        let inv = 1.0 / k as f64;
        let mant_root = if self.mant == 1.0 { 1.0 } else { self.mant.powf(inv) };
        // exp2 = q k + r keeps integer shifts of the exponent exact in the root.
        let k = k as i64;
        let (q, r) = (self.exp2.div_euclid(k), self.exp2.rem_euclid(k));
        let frac = if r == 0 { 1.0 } else { (r as f64 / k as f64).exp2() };
        mant_root * frac * pow2(q)
    }

    /// Multiplies by `2^e`.
    pub fn shifted(self, e: i64) -> Self {
        if self.is_zero() {
            return self;
        }
        Magnitude {
            mant: self.mant,
            exp2: self.exp2 + e,
        }
    }
}

impl std::ops::Mul for Magnitude {
    type Output = Magnitude;

    fn mul(self, other: Magnitude) -> Magnitude {
        if self.is_zero() || other.is_zero() {
            return Magnitude::ZERO;
        }
        let m = Magnitude::from_f64(self.mant * other.mant);
        Magnitude {
            mant: m.mant,
            exp2: m.exp2 + self.exp2 + other.exp2,
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln().partial_cmp(&other.ln())
    }
}

/// Exact `2^e` for exponents in the normal range.
pub(crate) fn pow2(e: i64) -> f64 {
    2f64.powi(e.clamp(-1022, 1023) as i32)
}

/// `x^{1/k}` through the base-2 split, with `0 -> 0`.
pub fn kth_root(x: f64, k: u64) -> f64 {
    Magnitude::from_f64(x).kth_root(k)
}
