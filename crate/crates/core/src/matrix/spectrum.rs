use num_complex::Complex64;

use super::DenseMatrix;
use crate::algebra::{spectral_radius_upper, NormedAlgebra, DEFAULT_PROBE_DEPTH};
use crate::error::{Error, Result};
use crate::io::fmt_f64;

const MAX_CELLS: usize = 4_000_000;

/// Relative band above the radius bound that is still eliminated, since the
/// bound itself carries a few ulps of rounding.
const RADIUS_GUARD: f64 = 1e-12;

/// Rectangular grid of spectral parameters `lambda = re + i im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridParams {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub step: f64,
}

impl GridParams {
    pub fn square(half_width: f64, step: f64) -> Self {
        GridParams {
            re_min: -half_width,
            re_max: half_width,
            im_min: -half_width,
            im_max: half_width,
            step,
        }
    }

    fn axis(min: f64, max: f64, step: f64) -> Vec<f64> {
        let count = ((max - min) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| min + i as f64 * step).collect()
    }

    fn validate(&self) -> Result<()> {
        let all = [self.re_min, self.re_max, self.im_min, self.im_max, self.step];
        if all.iter().any(|v| !v.is_finite()) || self.step <= 0.0 {
            return Err(Error::InvalidInput(
                "grid bounds must be finite and step positive".into(),
            ));
        }
        if self.re_min > self.re_max || self.im_min > self.im_max {
            return Err(Error::InvalidInput("empty grid: min exceeds max".into()));
        }
        let cells = ((self.re_max - self.re_min) / self.step + 1.0) * ((self.im_max - self.im_min) / self.step + 1.0);
        if cells > MAX_CELLS as f64 {
            return Err(Error::Budget(format!("grid of {cells:.0} cells exceeds {MAX_CELLS}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumCell {
    pub lambda: Complex64,
    pub invertible: bool,
    /// Smallest elimination pivot of `lambda I - A`, or, for cells certified
    /// by the Neumann bound, the gap `|lambda| - r_upper`.
    pub margin: f64,
    pub neumann_certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    pub params: GridParams,
    /// Certified radius bound used to skip elimination.
    pub radius_upper: f64,
    /// Row-major: imaginary part outer, real part inner, both ascending.
    pub cells: Vec<SpectrumCell>,
}

impl SpectrumGrid {
    pub fn noninvertible(&self) -> impl Iterator<Item = &SpectrumCell> {
        self.cells.iter().filter(|c| !c.invertible)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,invertible,margin\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(c.lambda.re),
                fmt_f64(c.lambda.im),
                c.invertible,
                fmt_f64(c.margin)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                format!(
                    "{{\"re\":{},\"im\":{},\"invertible\":{},\"margin\":{}}}",
                    fmt_f64(c.lambda.re),
                    fmt_f64(c.lambda.im),
                    c.invertible,
                    crate::io::json_num(c.margin)
                )
            })
            .collect();
        format!("[{}]\n", rows.join(","))
    }
}

/// Marks each grid point as in the resolvent set or not.
///
/// Points outside the certified radius bound are invertible by the
/// Neumann series and skip elimination.
pub fn spectrum_scan(a: &DenseMatrix, params: &GridParams) -> Result<SpectrumGrid> {
    params.validate()?;
    let radius_upper = spectral_radius_upper(a, DEFAULT_PROBE_DEPTH)?;
    let res = GridParams::axis(params.re_min, params.re_max, params.step);
    let ims = GridParams::axis(params.im_min, params.im_max, params.step);
    let ident = a.identity_like();
    let mut cells = Vec::with_capacity(res.len() * ims.len());
    for &im in &ims {
        for &re in &res {
            let lambda = Complex64::new(re, im);
            let cell = if lambda.norm() > radius_upper * (1.0 + RADIUS_GUARD) {
                SpectrumCell {
                    lambda,
                    invertible: true,
                    margin: lambda.norm() - radius_upper,
                    neumann_certified: true,
                }
            } else {
                let (inv, pivot) = ident.scale(lambda).sub(a).eliminate();
                SpectrumCell {
                    lambda,
                    invertible: inv.is_some(),
                    margin: pivot,
                    neumann_certified: false,
                }
            };
            cells.push(cell);
        }
    }
    Ok(SpectrumGrid {
        params: *params,
        radius_upper,
        cells,
    })
}
