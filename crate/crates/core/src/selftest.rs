//! Seeded invariant suite behind the `selftest` subcommand.
//!
//! Each check draws its inputs from a ChaCha stream derived from the seed
//! and the check's position, so the outcome list is a pure function of the
//! seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    invert_near, neumann_series, power_norms, spectral_radius_upper, telescope_check, NeumannOptions, NormedAlgebra,
};
use crate::error::Result;
use crate::fekete::{
    binomial_convolve, check_submultiplicative, division_bound_violation, limit_bracket, DEFAULT_TOL_REL,
};
use crate::generators::SequenceGen;
use crate::matrix::{oracle_spectral_radius, spectral_mapping_check, DenseMatrix, NormKind};
use crate::sampling::{random_matrix, random_polynomial_in, random_subadd, random_trig_poly, unit_box};
use crate::shift::{apply_power, op_norm_empirical, power_norm_formula, FiniteVector, LpExponent, WeightedShift};
use crate::wiener::{wiener_spectral_radius, DEFAULT_COEFF_CAP};

const TRIALS: usize = 25;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&mut ChaCha8Rng) -> Result<Option<String>>;

const CHECKS: &[(&str, Check)] = &[
    ("fekete.generators_submultiplicative", generators_submultiplicative),
    ("fekete.division_bound", division_bound),
    ("fekete.convolution_submultiplicative", convolution_submultiplicative),
    ("algebra.unit_norm", unit_norm),
    ("algebra.norm_submultiplicative", norm_submultiplicative),
    ("algebra.power_norms_submultiplicative", power_norms_submultiplicative),
    ("algebra.telescope", telescope),
    ("algebra.neumann_residual", neumann_residual),
    ("algebra.invert_near_residual", invert_near_residual),
    ("matrix.oracle_below_gelfand", oracle_below_gelfand),
    ("matrix.spectral_mapping", spectral_mapping),
    ("matrix.commuting_triangle", commuting_triangle),
    ("wiener.l1_submultiplicative", wiener_submultiplicative),
    ("wiener.homomorphism_chain", homomorphism_chain),
    ("wiener.commutative", wiener_commutative),
    ("shift.exact_attainment", shift_attainment),
    ("shift.contraction", shift_contraction),
];

/// Runs every check; failures and errors are reported, never raised.
pub fn run(seed: u64) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1)));
            let (passed, detail) = match check(&mut rng) {
                Ok(None) => (true, String::new()),
                Ok(Some(why)) => (false, why),
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn fail(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    if cond {
        None
    } else {
        Some(msg())
    }
}

fn generators_submultiplicative(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let (c, d) = random_subadd(rng, 3.0);
        let g = SequenceGen::Subadd { c, d };
        let s = g.materialize(60)?;
        if !check_submultiplicative(&s, DEFAULT_TOL_REL).is_empty() {
            return Ok(Some(format!("{g} flagged")));
        }
        let b = limit_bracket(&s, DEFAULT_TOL_REL)?;
        if b.certified_upper < g.limit() * (1.0 - 1e-12) {
            return Ok(Some(format!(
                "{g}: upper {} below limit {}",
                b.certified_upper,
                g.limit()
            )));
        }
    }
    Ok(None)
}

fn division_bound(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let (c, d) = random_subadd(rng, 2.0);
        let s = SequenceGen::Subadd { c, d }.materialize(40)?;
        if let Some((n, k)) = division_bound_violation(&s, DEFAULT_TOL_REL) {
            return Ok(Some(format!("a_{n} exceeds the bound for k = {k}")));
        }
    }
    Ok(None)
}

fn convolution_submultiplicative(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let (ca, da) = random_subadd(rng, 1.0);
        let (cb, db) = random_subadd(rng, 1.0);
        let a = SequenceGen::Subadd { c: ca, d: da }.materialize(30)?;
        let b = SequenceGen::Subadd { c: cb, d: db }.materialize(30)?;
        let c = binomial_convolve(&a, &b, 30)?;
        if !check_submultiplicative(&c, DEFAULT_TOL_REL).is_empty() {
            return Ok(Some("convolution violates submultiplicativity".into()));
        }
    }
    Ok(None)
}

fn unit_norm(_: &mut ChaCha8Rng) -> Result<Option<String>> {
    for n in 1..=6 {
        for kind in [NormKind::Inf, NormKind::One] {
            let e = DenseMatrix::identity(n, kind);
            if e.norm() != 1.0 {
                return Ok(Some(format!("||I_{n}|| = {}", e.norm())));
            }
        }
    }
    Ok(fail(crate::wiener::WienerElement::identity().norm() == 1.0, || {
        "Wiener unit norm".into()
    }))
}

fn norm_submultiplicative(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=5);
        for kind in [NormKind::Inf, NormKind::One] {
            let x = random_matrix(rng, n, kind);
            let y = random_matrix(rng, n, kind);
            let alpha = unit_box(rng);
            if x.mul(&y).norm() > x.norm() * y.norm() * (1.0 + 1e-12) {
                return Ok(Some("||xy|| > ||x|| ||y||".into()));
            }
            if x.add(&y).norm() > (x.norm() + y.norm()) * (1.0 + 1e-12) {
                return Ok(Some("triangle inequality".into()));
            }
            if (x.scale(alpha).norm() - alpha.norm() * x.norm()).abs() > 1e-12 * x.norm() {
                return Ok(Some("homogeneity".into()));
            }
        }
    }
    Ok(None)
}

fn power_norms_submultiplicative(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=4);
        let x = random_matrix(rng, n, NormKind::Inf);
        let r = power_norms(&x, 48)?;
        let s = crate::fekete::PrefixSequence::new(r.values())?;
        if !check_submultiplicative(&s, DEFAULT_TOL_REL).is_empty() {
            return Ok(Some("power norms not submultiplicative".into()));
        }
    }
    Ok(None)
}

fn telescope(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let x = random_matrix(rng, 3, NormKind::Inf);
        let n = rng.gen_range(0..=8);
        let defect = telescope_check(&x, n);
        let scale = (0..=n as i32 + 1).map(|j| x.norm().powi(j)).sum::<f64>();
        if defect > 1e-14 * scale.max(1.0) * (n as f64 + 1.0) {
            return Ok(Some(format!("telescope defect {defect:e} at n = {n}")));
        }
    }
    Ok(None)
}

fn neumann_residual(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let x = random_matrix(rng, 3, NormKind::Inf);
        let x = x.scale(Complex64::new(rng.gen_range(0.1..0.95) / x.norm(), 0.0));
        let s = neumann_series(&x, &NeumannOptions::with_tol(1e-10))?;
        if s.residual > 1e-10 {
            return Ok(Some(format!("residual {:e}", s.residual)));
        }
    }
    Ok(None)
}

fn invert_near_residual(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=4);
        let x = random_matrix(rng, n, NormKind::Inf)
            .add(&DenseMatrix::identity(n, NormKind::Inf).scale(Complex64::new(3.0, 0.0)));
        let x_inv = x.inverse(1e-12)?;
        let d = random_matrix(rng, n, NormKind::Inf);
        let d = d.scale(Complex64::new(
            rng.gen_range(0.05..0.9) / (d.norm() * x_inv.norm()),
            0.0,
        ));
        let y = x.add(&d);
        let inv = invert_near(&x_inv, &x, &y, 1e-10)?;
        let res = y.mul(&inv).sub(&y.identity_like()).norm();
        if res > 1e-9 {
            return Ok(Some(format!("residual {res:e}")));
        }
    }
    Ok(None)
}

fn oracle_below_gelfand(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(rng, n, NormKind::Inf);
        let rho = oracle_spectral_radius(&a)?;
        let r = power_norms(&a, 64)?;
        if let Some(e) = r.entries.iter().find(|e| rho > e.running_min + 1e-9) {
            return Ok(Some(format!(
                "oracle radius {rho} above bound {} at k = {}",
                e.running_min, e.k
            )));
        }
    }
    Ok(None)
}

fn spectral_mapping(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(rng, n, NormKind::Inf);
        for p in [2, 3, 5] {
            if !spectral_mapping_check(&a, p)? {
                return Ok(Some(format!("mapping fails for power {p}")));
            }
        }
    }
    Ok(None)
}

fn commuting_triangle(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(rng, n, NormKind::Inf);
        let x = random_polynomial_in(rng, &m, 2);
        let y = random_polynomial_in(rng, &m, 2);
        let (rx, ry) = (spectral_radius_upper(&x, 32)?, spectral_radius_upper(&y, 32)?);
        if oracle_spectral_radius(&x.add(&y))? > rx + ry + 1e-9 {
            return Ok(Some("R(x + y) > R(x) + R(y)".into()));
        }
        if oracle_spectral_radius(&x.mul(&y))? > rx * ry + 1e-9 {
            return Ok(Some("R(xy) > R(x) R(y)".into()));
        }
    }
    Ok(None)
}

fn wiener_submultiplicative(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let (df, dg) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let f = random_trig_poly(rng, df);
        let g = random_trig_poly(rng, dg);
        if f.multiply(&g).l1_norm() > f.l1_norm() * g.l1_norm() * (1.0 + 1e-12) {
            return Ok(Some("||fg||_1 > ||f||_1 ||g||_1".into()));
        }
        if f.sup_norm(256)?.grid_max > f.l1_norm() {
            return Ok(Some("sup above l1".into()));
        }
    }
    Ok(None)
}

fn homomorphism_chain(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let degree = rng.gen_range(0..=4);
        let f = random_trig_poly(rng, degree);
        let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let r = wiener_spectral_radius(&f, 32, DEFAULT_COEFF_CAP)?
            .final_min()
            .unwrap_or(0.0);
        let phi = f.evaluate(theta).norm();
        if phi > r + 1e-9 || r > f.l1_norm() + 1e-9 {
            return Ok(Some(format!("|phi| = {phi}, R = {r}, ||f||_1 = {}", f.l1_norm())));
        }
    }
    Ok(None)
}

fn wiener_commutative(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let f = random_trig_poly(rng, 3);
        let g = random_trig_poly(rng, 2);
        if f.multiply(&g) != g.multiply(&f) {
            return Ok(Some("fg != gf".into()));
        }
    }
    Ok(None)
}

fn random_weights(rng: &mut ChaCha8Rng) -> Result<WeightedShift> {
    let mut w: Vec<f64> = (0..rng.gen_range(1..60)).map(|_| rng.gen_range(0.0..2.0)).collect();
    w.sort_by(|a, b| b.total_cmp(a));
    WeightedShift::new(w)
}

fn shift_attainment(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let t = random_weights(rng)?;
        let l = rng.gen_range(1..=50);
        let formula = power_norm_formula(&t, l);
        for p in [LpExponent::Finite(1.0), LpExponent::Finite(2.0), LpExponent::Infinity] {
            let e = op_norm_empirical(&t, l, p, 4, rng.gen())?;
            if (e.attained - formula).abs() > 1e-12 * formula {
                return Ok(Some(format!("attained {} vs formula {formula}", e.attained)));
            }
        }
    }
    Ok(None)
}

fn shift_contraction(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..TRIALS {
        let t = random_weights(rng)?;
        let l = rng.gen_range(1..=20);
        let p = LpExponent::Finite(rng.gen_range(1.0..4.0));
        let x = FiniteVector::from_pairs((1..=rng.gen_range(1..40)).map(|j| (j, unit_box(rng))))?;
        let lhs = apply_power(&t, &x, l).norm(p);
        let rhs = power_norm_formula(&t, l) * x.norm(p);
        if lhs > rhs * (1.0 + 1e-12) {
            return Ok(Some(format!("||T^l x|| = {lhs} > {rhs}")));
        }
    }
    Ok(None)
}
