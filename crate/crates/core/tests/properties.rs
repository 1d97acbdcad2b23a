use gelfand::algebra::{invert_near, neumann_inverse, power_norms, spectral_radius_upper};
use gelfand::fekete::{
    binomial_convolve, check_submultiplicative, division_bound_violation, limit_bracket, max_sum_bound, root_report,
    DEFAULT_TOL_REL,
};
use gelfand::generators::SequenceGen;
use gelfand::matrix::{eigen_oracle, oracle_spectral_radius, spectral_mapping_check, spectrum_scan, GridParams};
use gelfand::shift::{op_norm_empirical, power_norm_formula, LpExponent};
use gelfand::{DenseMatrix, NormKind, NormedAlgebra, PrefixSequence, Scalar, WeightedShift, WienerElement};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = f64> {
    -1.0..=1.0f64
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (unit(), unit()).prop_map(|(re, im)| Scalar::new(re, im))
}

fn matrix() -> impl Strategy<Value = DenseMatrix> {
    (1usize..=4, prop_oneof![Just(NormKind::Inf), Just(NormKind::One)]).prop_flat_map(|(n, kind)| {
        proptest::collection::vec(scalar(), n * n)
            .prop_map(move |data| DenseMatrix::from_row_major(n, data, kind).unwrap())
    })
}

fn subadd() -> impl Strategy<Value = SequenceGen> {
    (-2.0..2.0f64, 0.0..3.0f64).prop_map(|(c, d)| SequenceGen::Subadd { c, d })
}

fn trig_poly() -> impl Strategy<Value = WienerElement> {
    proptest::collection::vec((-6i64..=6, scalar()), 1..8).prop_map(|pairs| WienerElement::from_pairs(pairs).unwrap())
}

fn weights() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0..1.5f64, 1..60).prop_map(|mut w| {
        w.sort_by(|a, b| b.total_cmp(a));
        w
    })
}

fn poly_in(m: &DenseMatrix, coeffs: &[Scalar]) -> DenseMatrix {
    let mut acc = DenseMatrix::zeros(m.dim(), m.norm_kind());
    for c in coeffs.iter().rev() {
        acc = acc.mul(m).add(&m.identity_like().scale(*c));
    }
    acc
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_sequences_are_submultiplicative(g in subadd()) {
        let s = g.materialize(60).unwrap();
        prop_assert!(check_submultiplicative(&s, DEFAULT_TOL_REL).is_empty());
        for k in 1..=60usize {
            for p in 1..=60 / k {
                let lhs = s.get(p * k).unwrap().ln();
                let rhs = p as f64 * s.get(k).unwrap().ln();
                prop_assert!(lhs <= rhs + 1e-9 * rhs.abs().max(1.0));
            }
        }
        prop_assert_eq!(division_bound_violation(&s, DEFAULT_TOL_REL), None);
    }

    #[test]
    fn certified_upper_dominates_the_limit(g in subadd(), n in 1usize..200) {
        let s = g.materialize(n).unwrap();
        let b = limit_bracket(&s, DEFAULT_TOL_REL).unwrap();
        prop_assert!(b.certified_upper >= g.limit() * (1.0 - 1e-12));
        let r = root_report(&s);
        prop_assert!(r.entries.windows(2).all(|w| w[1].running_min <= w[0].running_min));
        prop_assert_eq!(r.final_min(), Some(b.certified_upper));
    }

    #[test]
    fn zero_entry_absorbs(g in subadd(), n in 2usize..80, z in 1usize..80) {
        let z = z.min(n);
        let mut values = g.materialize(n).unwrap().values().to_vec();
        for v in values.iter_mut().skip(z - 1) {
            *v = 0.0;
        }
        let s = PrefixSequence::with_unit_head(values).unwrap();
        prop_assert!(check_submultiplicative(&s, DEFAULT_TOL_REL).is_empty());
        prop_assert_eq!(limit_bracket(&s, DEFAULT_TOL_REL).unwrap().certified_upper, 0.0);
    }

    #[test]
    fn convolution_stays_submultiplicative(a in subadd(), b in subadd()) {
        let c = binomial_convolve(&a.materialize(30).unwrap(), &b.materialize(30).unwrap(), 30).unwrap();
        prop_assert!(check_submultiplicative(&c, DEFAULT_TOL_REL).is_empty());
        prop_assert!(c.has_unit_head());
    }

    #[test]
    fn convolution_and_bracket_follow_geometric_scaling(a in subadd(), b in subadd(), s in 0.05..20.0f64) {
        let n = 30;
        let scale = |g: &SequenceGen| {
            let seq = g.materialize(n).unwrap();
            PrefixSequence::with_unit_head(
                seq.values().iter().enumerate().map(|(i, v)| v * s.powi(i as i32 + 1)).collect(),
            )
            .unwrap()
        };
        let c = binomial_convolve(&a.materialize(n).unwrap(), &b.materialize(n).unwrap(), n).unwrap();
        let cs = binomial_convolve(&scale(&a), &scale(&b), n).unwrap();
        for k in 1..=n {
            prop_assert!(close(cs.get(k).unwrap(), s.powi(k as i32) * c.get(k).unwrap(), 1e-10));
        }
        let plain = limit_bracket(&a.materialize(n).unwrap(), DEFAULT_TOL_REL).unwrap().certified_upper;
        let scaled = limit_bracket(&scale(&a), DEFAULT_TOL_REL).unwrap().certified_upper;
        prop_assert!(close(scaled, s * plain, 1e-12));
    }

    #[test]
    fn max_sum_inequalities(t in proptest::collection::vec(0.0..1e6f64, 1..40)) {
        let m = max_sum_bound(&t).unwrap();
        prop_assert!(m.bound_ok);
        prop_assert!(m.max <= m.sum * (1.0 + 1e-15));
        prop_assert!(m.sum <= t.len() as f64 * m.max * (1.0 + 1e-12));
    }

    #[test]
    fn matrix_norm_axioms(x in matrix(), y_seed in matrix()) {
        let n = x.dim();
        let y = DenseMatrix::from_row_major(
            n,
            (0..n * n).map(|i| y_seed.get(i / n % y_seed.dim(), i % y_seed.dim())).collect(),
            x.norm_kind(),
        )
        .unwrap();
        prop_assert_eq!(x.identity_like().norm(), 1.0);
        prop_assert!(x.mul(&y).norm() <= x.norm() * y.norm() * (1.0 + 1e-12) + 1e-300);
        prop_assert!(x.add(&y).norm() <= (x.norm() + y.norm()) * (1.0 + 1e-12));
    }

    #[test]
    fn power_norm_values_are_submultiplicative(x in matrix()) {
        let r = power_norms(&x, 48).unwrap();
        let s = PrefixSequence::new(r.values()).unwrap();
        prop_assert!(check_submultiplicative(&s, 1e-9).is_empty());
    }

    #[test]
    fn radius_bound_is_homogeneous(x in matrix(), alpha in scalar(), e in -40i32..40) {
        let r = spectral_radius_upper(&x, 32).unwrap();
        let two = Scalar::new(2f64.powi(e), 0.0);
        prop_assert_eq!(spectral_radius_upper(&x.scale(two), 32).unwrap(), 2f64.powi(e) * r);
        let ra = spectral_radius_upper(&x.scale(alpha), 32).unwrap();
        prop_assert!((ra - alpha.norm() * r).abs() <= 1e-12 * r.max(1e-300) + 1e-300);
    }

    #[test]
    fn unit_has_radius_one(n in 1usize..6, depth in 1usize..80) {
        let e = DenseMatrix::identity(n, NormKind::Inf);
        prop_assert_eq!(spectral_radius_upper(&e, depth).unwrap(), 1.0);
    }

    #[test]
    fn oracle_never_exceeds_gelfand_bound(x in matrix()) {
        let rho = oracle_spectral_radius(&x).unwrap();
        let r = power_norms(&x, 64).unwrap();
        for e in &r.entries {
            prop_assert!(rho <= e.root + 1e-9, "k={} rho={} root={}", e.k, rho, e.root);
        }
    }

    #[test]
    fn commuting_triangle_and_product(
        m in matrix(),
        p in proptest::collection::vec(scalar(), 1..4),
        q in proptest::collection::vec(scalar(), 1..4),
    ) {
        let x = poly_in(&m, &p);
        let y = poly_in(&m, &q);
        let rx = spectral_radius_upper(&x, 32).unwrap();
        let ry = spectral_radius_upper(&y, 32).unwrap();
        prop_assert!(oracle_spectral_radius(&x.add(&y)).unwrap() <= rx + ry + 1e-9);
        prop_assert!(oracle_spectral_radius(&x.mul(&y)).unwrap() <= rx * ry + 1e-9);
    }

    #[test]
    fn spectral_mapping_holds(x in matrix(), n in prop_oneof![Just(2u32), Just(3), Just(5)]) {
        prop_assert!(spectral_mapping_check(&x, n).unwrap());
    }

    #[test]
    fn neumann_success_implies_eventual_contraction(x in matrix(), shrink in 0.1..1.2f64) {
        let x = x.scale(Scalar::new(shrink, 0.0));
        if let Ok(y) = neumann_inverse(&x, 1e-10, 100_000) {
            let e = x.identity_like();
            let residual = e.sub(&x).mul(&y).sub(&e).norm();
            prop_assert!(residual <= 1e-9, "residual {residual}");
            let r = power_norms(&x, 256).unwrap();
            prop_assert!(r.entries.last().unwrap().value < 1.0);
        }
    }

    #[test]
    fn invert_near_residual(x in matrix(), dir in matrix(), frac in 0.0..0.9f64) {
        let n = x.dim();
        let x = x.add(&x.identity_like().scale(Scalar::new(3.0, 0.0)));
        let x_inv = x.inverse(1e-13).unwrap();
        let d = DenseMatrix::from_row_major(
            n,
            (0..n * n).map(|i| dir.get(i / n % dir.dim(), i % dir.dim())).collect(),
            x.norm_kind(),
        )
        .unwrap();
        prop_assume!(d.norm() > 0.0);
        let radius = 1.0 / x_inv.norm();
        let y = x.add(&d.scale(Scalar::new(frac * radius / d.norm(), 0.0)));
        let tol = 1e-10;
        let got = invert_near(&x_inv, &x, &y, tol).unwrap();
        let e = x.identity_like();
        prop_assert!(y.mul(&got).sub(&e).norm() <= 10.0 * tol);
    }

    #[test]
    fn scan_flags_only_points_near_eigenvalues(x in matrix()) {
        let step = 0.25;
        let grid = spectrum_scan(&x, &GridParams::square(3.0, step)).unwrap();
        let eig = eigen_oracle(&x).unwrap();
        for cell in grid.noninvertible() {
            prop_assert!(eig.iter().any(|l| (l - cell.lambda).norm() <= step * std::f64::consts::SQRT_2));
        }
    }

    #[test]
    fn scan_finds_grid_eigenvalues(diag in proptest::collection::vec((-8i32..=8, -8i32..=8), 1..=4), upper in unit()) {
        let n = diag.len();
        let step = 0.25;
        let mut a = DenseMatrix::zeros(n, NormKind::Inf);
        for (i, (re, im)) in diag.iter().enumerate() {
            a.set(i, i, Scalar::new(*re as f64 * step, *im as f64 * step));
            for j in i + 1..n {
                a.set(i, j, Scalar::new(upper, 0.0));
            }
        }
        let grid = spectrum_scan(&a, &GridParams::square(2.0, step)).unwrap();
        let flagged: Vec<Scalar> = grid.noninvertible().map(|c| c.lambda).collect();
        for i in 0..n {
            let l = a.get(i, i);
            prop_assert!(flagged.iter().any(|z| (z - l).norm() < 1e-12), "missing {l}");
        }
        for z in &flagged {
            prop_assert!((0..n).any(|i| (a.get(i, i) - z).norm() <= step));
        }
    }

    #[test]
    fn wiener_l1_submultiplicative_and_commutative(f in trig_poly(), g in trig_poly()) {
        let fg = f.multiply(&g);
        prop_assert!(fg.l1_norm() <= f.l1_norm() * g.l1_norm() * (1.0 + 1e-12));
        prop_assert_eq!(fg, g.multiply(&f));
    }

    #[test]
    fn wiener_associative(f in trig_poly(), g in trig_poly(), h in trig_poly()) {
        let left = f.multiply(&g).multiply(&h);
        let right = f.multiply(&g.multiply(&h));
        prop_assert!(left.approx_eq(&right, 1e-12));
    }

    #[test]
    fn sup_is_dominated_by_l1(f in trig_poly()) {
        let s = f.sup_norm(512).unwrap();
        prop_assert!(s.grid_max <= f.l1_norm());
        prop_assert!(s.lower <= s.grid_max && s.grid_max <= s.upper);
    }

    #[test]
    fn sampled_sup_is_power_multiplicative(f in trig_poly(), n in 1i32..12) {
        let m = 256;
        let samples: Vec<f64> = (0..m)
            .map(|i| f.evaluate(2.0 * std::f64::consts::PI * i as f64 / m as f64).norm())
            .collect();
        let max = samples.iter().cloned().fold(0.0, f64::max);
        let max_pow = samples.iter().map(|v| v.powi(n)).fold(0.0, f64::max);
        prop_assert_eq!(max_pow, max.powi(n));
    }

    #[test]
    fn homomorphism_chain(f in trig_poly(), theta in 0.0..std::f64::consts::TAU) {
        let phi = f.evaluate(theta).norm();
        let r = gelfand::wiener::wiener_spectral_radius(&f, 32, gelfand::wiener::DEFAULT_COEFF_CAP).unwrap();
        let rmin = r.final_min().unwrap();
        prop_assert!(phi <= rmin + 1e-9);
        prop_assert!(rmin <= f.l1_norm() + 1e-9);
    }

    #[test]
    fn shift_norm_is_attained(w in weights(), l in 1usize..=50) {
        let t = WeightedShift::new(w).unwrap();
        let formula = power_norm_formula(&t, l);
        for p in [LpExponent::Finite(1.0), LpExponent::Finite(2.0), LpExponent::Infinity] {
            let e = op_norm_empirical(&t, l, p, 8, l as u64).unwrap();
            prop_assert!((e.attained - formula).abs() <= 1e-12 * formula);
            prop_assert!(e.max_random_ratio <= formula * (1.0 + 1e-12));
        }
    }

    #[test]
    fn shift_products_are_submultiplicative(w in weights()) {
        let t = WeightedShift::new(w).unwrap();
        let a: Vec<f64> = (1..=80).map(|l| power_norm_formula(&t, l)).collect();
        let s = PrefixSequence::new(a).unwrap();
        prop_assert!(check_submultiplicative(&s, 1e-12).is_empty());
        let b = limit_bracket(&s, 1e-12).unwrap();
        prop_assert!(b.certified_upper >= t.tail() * (1.0 - 1e-12));
    }
}
