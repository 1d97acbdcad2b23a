//! Eigenvalue oracle for matrices of dimension at most four.
//!
//! Eigenvalues are roots of the characteristic polynomial: closed form up
//! to degree two, Laguerre iteration with deflation above that, and Newton
//! polishing against the undeflated polynomial. Tight clusters that pass a
//! backward-error test for an `m`-fold root are collapsed onto the nearby
//! simple root of the `(m-1)`-th derivative.

use num_complex::Complex64;

use super::DenseMatrix;
use crate::algebra::NormedAlgebra;
use crate::error::{Error, Result};

pub const ORACLE_MAX_DIM: usize = 4;

const MAX_LAGUERRE_ITERS: usize = 200;

/// Cluster radius relative to `max(1, max |root|)`.
const CLUSTER_REL: f64 = 1e-3;

/// Coefficients `c_0..c_n` of `det(lambda I - A)`, lowest degree first
/// (`c_n = 1`), by the Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(a: &DenseMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let ident = a.identity_like();
    let mut m = a.zero_like();
    for k in 1..=n {
        m = a.mul(&m).add(&ident.scale(coeffs[n - k + 1]));
        coeffs[n - k] = -a.mul(&m).trace() / k as f64;
    }
    coeffs
}

/// All eigenvalues with multiplicity, sorted by real then imaginary part.
pub fn eigen_oracle(a: &DenseMatrix) -> Result<Vec<Complex64>> {
    if a.dim() > ORACLE_MAX_DIM {
        return Err(Error::Unsupported(format!(
            "eigenvalue oracle handles n <= {ORACLE_MAX_DIM}, got {}",
            a.dim()
        )));
    }
    let poly = characteristic_polynomial(a);
    let mut roots = polynomial_roots(&poly);
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(roots)
}

/// `max |lambda|` over the oracle's eigenvalues.
pub fn oracle_spectral_radius(a: &DenseMatrix) -> Result<f64> {
    Ok(eigen_oracle(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Checks `lambda in sigma(A)  =>  lambda^n in sigma(A^n)` eigenvalue by
/// eigenvalue, with tolerance `1e-6 * max(1, |lambda|^n)`.
pub fn spectral_mapping_check(a: &DenseMatrix, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("power must be positive".into()));
    }
    let base = eigen_oracle(a)?;
    let powered = eigen_oracle(&a.pow(n))?;
    Ok(base.iter().all(|lam| {
        let target = lam.powu(n);
        let tol = 1e-6 * target.norm().max(1.0);
        powered.iter().any(|mu| (target - mu).norm() <= tol)
    }))
}

/// Roots of `sum c_i z^i` (lowest degree first, nonzero leading term).
pub(crate) fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut work: Vec<Complex64> = trim_leading_zeros(coeffs).to_vec();
    let lead = *work.last().expect("nonempty polynomial");
    for c in work.iter_mut() {
        *c /= lead;
    }
    let original = work.clone();
    let mut roots = Vec::with_capacity(work.len().saturating_sub(1));
    while work.len() > 3 {
        let r = laguerre(&work, Complex64::new(0.0, 0.0));
        let r = polish(&original, r);
        roots.push(r);
        work = deflate(&work, r);
    }
    match work.len() {
        3 => {
            let (r1, r2) = quadratic_roots(work[2], work[1], work[0]);
            roots.push(r1);
            roots.push(r2);
        }
        2 => roots.push(-work[0] / work[1]),
        _ => {}
    }
    if original.len() > 3 {
        for r in roots.iter_mut() {
            *r = polish(&original, *r);
        }
    }
    merge_clusters(&original, &mut roots);
    roots
}

fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `|p^(j)(z)|` is at rounding level for every `j < m`.
fn is_multiple_root(p: &[Complex64], z: Complex64, m: usize) -> bool {
    let slack = 64.0 * p.len() as f64 * f64::EPSILON;
    let mut d = p.to_vec();
    for _ in 0..m {
        let scale: f64 = d.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.norm());
        if horner(&d, z).norm() > slack * scale {
            return false;
        }
        d = derivative(&d);
    }
    true
}

fn merge_clusters(p: &[Complex64], roots: &mut [Complex64]) {
    let n = roots.len();
    let radius = CLUSTER_REL * roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut assigned = vec![false; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut members = vec![i];
        let mut next = 0;
        while next < members.len() {
            let anchor = roots[members[next]];
            for j in 0..n {
                if !assigned[j] && (roots[j] - anchor).norm() <= radius {
                    assigned[j] = true;
                    members.push(j);
                }
            }
            next += 1;
        }
        let m = members.len();
        if m < 2 {
            continue;
        }
        let centroid = members.iter().map(|&k| roots[k]).sum::<Complex64>() / m as f64;
        let mut dp = p.to_vec();
        for _ in 1..m {
            dp = derivative(&dp);
        }
        let z = polish(&dp, centroid);
        if (z - centroid).norm() <= radius && is_multiple_root(p, z, m) {
            for &k in &members {
                roots[k] = z;
            }
        }
    }
}

fn trim_leading_zeros(c: &[Complex64]) -> &[Complex64] {
    let mut end = c.len();
    while end > 1 && c[end - 1] == Complex64::new(0.0, 0.0) {
        end -= 1;
    }
    &c[..end]
}

/// Roots of `a z^2 + b z + c` avoiding cancellation.
fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = (b * b - a * c * 4.0).sqrt();
    let s = if (b.conj() * disc).re >= 0.0 {
        b + disc
    } else {
        b - disc
    };
    if s == Complex64::new(0.0, 0.0) {
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let q = -s / 2.0;
    (q / a, c / q)
}

/// `(p, p', p'')` at `z` by Horner.
fn eval_with_derivatives(p: &[Complex64], z: Complex64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut v, mut d1, mut d2) = (zero, zero, zero);
    for &c in p.iter().rev() {
        d2 = d2 * z + d1;
        d1 = d1 * z + v;
        v = v * z + c;
    }
    (v, d1, d2 * 2.0)
}

fn laguerre(p: &[Complex64], start: Complex64) -> Complex64 {
    // Fractional steps break rare limit cycles.
    const FRACTIONS: [f64; 8] = [0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0];
    let m = (p.len() - 1) as f64;
    let mut x = start;
    for iter in 1..=MAX_LAGUERRE_ITERS {
        let (v, d1, d2) = eval_with_derivatives(p, x);
        if v == Complex64::new(0.0, 0.0) {
            return x;
        }
        let g = d1 / v;
        let h = g * g - d2 / v;
        let sq = ((h * m - g * g) * (m - 1.0)).sqrt();
        let (gp, gm) = (g + sq, g - sq);
        let denom = if gp.norm() >= gm.norm() { gp } else { gm };
        let step = if denom.norm() > 0.0 {
            Complex64::new(m, 0.0) / denom
        } else {
            Complex64::from_polar(1.0 + x.norm(), iter as f64)
        };
        let next = if iter % 10 == 0 {
            x - step * FRACTIONS[(iter / 10) % FRACTIONS.len()]
        } else {
            x - step
        };
        if (next - x).norm() <= f64::EPSILON * next.norm() {
            return next;
        }
        x = next;
    }
    x
}

/// Newton steps on the full polynomial, kept only while they reduce `|p|`.
fn polish(p: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut pz = eval_with_derivatives(p, z).0.norm();
    for _ in 0..8 {
        if pz == 0.0 {
            break;
        }
        let (v, d1, _) = eval_with_derivatives(p, z);
        if d1 == Complex64::new(0.0, 0.0) {
            break;
        }
        let cand = z - v / d1;
        let pc = eval_with_derivatives(p, cand).0.norm();
        if pc.partial_cmp(&pz) != Some(std::cmp::Ordering::Less) {
            break;
        }
        z = cand;
        pz = pc;
    }
    z
}

/// Synthetic division by `(z - r)`, dropping the remainder.
fn deflate(p: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let deg = p.len() - 1;
    let mut q = vec![Complex64::new(0.0, 0.0); deg];
    let mut carry = p[deg];
    for i in (0..deg).rev() {
        q[i] = carry;
        carry = p[i] + carry * r;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::NormKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_real_rows(rows, NormKind::Inf).unwrap()
    }

    #[test]
    fn closed_form_cases() {
        assert_eq!(
            eigen_oracle(&real(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap(),
            vec![c(0.0, 0.0); 2]
        );
        assert_eq!(
            eigen_oracle(&real(&[&[0.0, 2.0], &[0.5, 0.0]])).unwrap(),
            vec![c(-1.0, 0.0), c(1.0, 0.0)]
        );
        let d = DenseMatrix::diagonal(&[c(3.0, 0.0), c(-1.0, 2.0)], NormKind::Inf);
        let ev = eigen_oracle(&d).unwrap();
        assert!((ev[0] - c(-1.0, 2.0)).norm() < 1e-12);
        assert!((ev[1] - c(3.0, 0.0)).norm() < 1e-12);
        assert_eq!(eigen_oracle(&real(&[&[5.0]])).unwrap(), vec![c(5.0, 0.0)]);
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        // Companion matrix of z^3 - 6z^2 + 11z - 6 = (z-1)(z-2)(z-3).
        let a = real(&[&[0.0, 0.0, 6.0], &[1.0, 0.0, -11.0], &[0.0, 1.0, 6.0]]);
        let p = characteristic_polynomial(&a);
        let expect = [-6.0, 11.0, -6.0, 1.0];
        for (x, y) in p.iter().zip(expect) {
            assert!((x - c(y, 0.0)).norm() < 1e-12);
        }
        let ev = eigen_oracle(&a).unwrap();
        for (x, y) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - c(y, 0.0)).norm() < 1e-10, "{ev:?}");
        }
    }

    #[test]
    fn four_by_four_diagonal_and_rotation() {
        let d = DenseMatrix::diagonal(&[c(0.5, 0.0), c(0.0, 1.0), c(-2.0, 0.0), c(1.0, -1.0)], NormKind::Inf);
        let ev = eigen_oracle(&d).unwrap();
        for want in [c(0.5, 0.0), c(0.0, 1.0), c(-2.0, 0.0), c(1.0, -1.0)] {
            assert!(ev.iter().any(|z| (z - want).norm() < 1e-9), "{ev:?}");
        }
        let rot = real(&[&[0.0, -1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 2.0]]);
        let ev = eigen_oracle(&rot).unwrap();
        for want in [c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)] {
            assert!(ev.iter().any(|z| (z - want).norm() < 1e-9), "{ev:?}");
        }
    }

    #[test]
    fn too_large_is_unsupported() {
        let a = DenseMatrix::identity(5, NormKind::Inf);
        assert!(matches!(eigen_oracle(&a), Err(Error::Unsupported(_))));
        assert!(spectral_mapping_check(&a, 2).is_err());
    }

    #[test]
    fn spectral_mapping_examples() {
        for n in 1..6 {
            assert!(spectral_mapping_check(&DenseMatrix::identity(3, NormKind::Inf), n).unwrap());
        }
        assert!(spectral_mapping_check(&real(&[&[0.0, 2.0], &[0.5, 0.0]]), 2).unwrap());
        let d = DenseMatrix::diagonal(&[c(0.0, 1.0), c(2.0, 0.0)], NormKind::Inf);
        assert!(spectral_mapping_check(&d, 4).unwrap());
    }

    #[test]
    fn quadratic_is_stable() {
        let (r1, r2) = quadratic_roots(c(1.0, 0.0), c(-1e8, 0.0), c(1.0, 0.0));
        let small = if r1.norm() < r2.norm() { r1 } else { r2 };
        assert!((small.re - 1e-8).abs() < 1e-20);
    }
}
