use hwb_core::exactlin::*;
use hwb_core::genera::*;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn ctx(m: usize, order: u32, cap: u32) -> SeriesCtx {
    SeriesCtx::new(m, order, cap).unwrap()
}

#[test]
fn series_identities_through_q12() {
    for m in 1..=2 {
        let c = ctx(m, 3, 12);
        for e in [BundleRoots::generators(m), BundleRoots::generators(m).complexify(), BundleRoots::trivial(m, 2)] {
            let r = series_inverse_identities(&e, c).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}

#[test]
fn sum_and_difference_identities_through_q12() {
    let c = ctx(2, 3, 12);
    let e = BundleRoots::generators(2);
    let f = BundleRoots::from_roots(2, vec![vec![q(1), q(-1)]]).unwrap();
    let r = sum_identities(&e, &f, c).unwrap();
    assert!(r.holds(), "{r:?}");
    let r = sum_identities(&f, &e.complexify(), c).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn trivial_line_bundle_is_geometric() {
    let s = s_q(&BundleRoots::trivial(1, 1), &Rational::one(), ctx(1, 2, 12)).unwrap();
    assert!(s.scalar_part().iter().all(|c| c.is_one()));
    let l = lambda_q(&BundleRoots::trivial(1, 3), &Rational::one(), ctx(1, 2, 12)).unwrap();
    assert_eq!(l.scalar_part()[..5], [q(1), q(3), q(3), q(1), q(0)]);
}

#[test]
fn series_inverse_roundtrip() {
    let c = ctx(2, 4, 10);
    let s = s_q(&BundleRoots::generators(2).complexify(), &qf(2, 3), c).unwrap();
    assert_eq!(s.mul(&s.inverse().unwrap()), QSeries::one(c));
}

#[test]
fn todd_expansion() {
    assert_eq!(todd_coefficients(5), vec![q(1), qf(1, 2), qf(1, 12), q(0), qf(-1, 720)]);
    let td = todd(&BundleRoots::generators(1), 5).unwrap();
    assert_eq!(td.coeff(&[1]), qf(1, 2));
    assert_eq!(td.coeff(&[4]), qf(-1, 720));
    let tdd = todd_dual(&BundleRoots::generators(1), 5).unwrap();
    assert_eq!(tdd.coeff(&[1]), qf(-1, 2));
    assert_eq!(tdd.coeff(&[2]), qf(1, 12));
}

#[test]
fn todd_is_multiplicative() {
    let e = BundleRoots::generators(2);
    let (a, b) = (BundleRoots::from_roots(2, vec![e.roots[0].clone()]).unwrap(), BundleRoots::from_roots(2, vec![e.roots[1].clone()]).unwrap());
    assert_eq!(todd(&e, 5).unwrap(), todd(&a, 5).unwrap().mul(&todd(&b, 5).unwrap()));
    // Td(x) Td*(x) = 1 − x²/12 + O(x⁴).
    let p = todd(&a, 4).unwrap().mul(&todd_dual(&a, 4).unwrap());
    assert_eq!(p.coeff(&[1, 0]), q(0));
    assert_eq!(p.coeff(&[2, 0]), qf(-1, 12));
}

#[test]
fn todd_cap() {
    assert!(matches!(todd(&BundleRoots::generators(1), 7), Err(GeneraError::Cap(_))));
}

#[test]
fn u_theta_matches_direct_product() {
    for theta in [0.3, 1.0, 2.5, std::f64::consts::PI] {
        for m in 1..=2 {
            let r = u_theta_identity_residual(&BundleRoots::generators(m), theta, 5).unwrap();
            assert!(r < 1e-12, "θ={theta} residual {r}");
        }
    }
}

#[test]
fn u_theta_at_pi_is_rational() {
    // [(1 + e^{−x}) / 2]^{-1} exactly.
    let e = BundleRoots::generators(1);
    let u = u_theta(&e, std::f64::consts::PI, 5).unwrap();
    let f = RootPoly::one(1, 5).add(&exp_linear(1, 5, &[q(-1)])).scale(&qf(1, 2));
    let exact = f.inverse().unwrap();
    for k in 0..5u32 {
        let a = u.coeff(&[k]);
        let b = Complex64::from_q(&exact.coeff(&[k]));
        assert!((a - b).norm() < 1e-12, "x^{k}: {a} vs {b}");
    }
    assert_eq!(exact.coeff(&[1]), qf(1, 2));
}

#[test]
fn u_theta_pole() {
    assert_eq!(u_theta(&BundleRoots::generators(1), 2.0 * std::f64::consts::PI, 3), Err(GeneraError::Pole));
}

#[test]
fn chern_tower_cross_check() {
    for m in 1..=2 {
        let c = ctx(m, 3, 8);
        let e = BundleRoots::generators(m);
        assert_eq!(chern_tower(&e, c).unwrap(), chern_tower_via_characters(&e, c).unwrap());
    }
}

#[test]
fn chern_tower_at_zero_roots() {
    let c = ctx(1, 2, 10);
    let t = chern_tower(&BundleRoots::trivial(1, 1), c).unwrap();
    assert_eq!(t.scalar_part(), partition_squared(10));
    assert_eq!(t.scalar_part()[..6], [q(1), q(2), q(5), q(10), q(20), q(36)]);
}

fn zero_params() -> PrototypeParams {
    let z = Complex64::zero();
    PrototypeParams { sigma: z, lambda: z, xi: z, zeta: z }
}

#[test]
fn prototypes_trivial_at_zero_parameters() {
    let c = ctx(1, 3, 6);
    let e = BundleRoots::generators(1);
    for l in PROTOTYPE_LATTICES {
        let s = elliptic_prototype(zero_params(), &e, &e, l, c).unwrap();
        assert_eq!(s, QSeries::one(c.halved()));
    }
}

#[test]
fn prototype_positive_lattice_matches_tower() {
    let c = ctx(1, 3, 6);
    let e = BundleRoots::generators(1);
    let one = Complex64::one();
    let p = PrototypeParams { sigma: one, lambda: Complex64::zero(), xi: one, zeta: one };
    let s = elliptic_prototype(p, &e, &e, (Lattice::Positive, Lattice::Positive), c).unwrap();
    let t = chern_tower(&e, c).unwrap().refine(2).map(Complex64::from_q);
    assert!(s.max_abs_diff(&t) < 1e-12);
}

#[test]
fn half_lattice_contains_positive_lattice() {
    let c = ctx(1, 3, 5);
    let e = BundleRoots::generators(1);
    let p = PrototypeParams { sigma: Complex64::new(0.5, 0.25), lambda: Complex64::new(-0.3, 0.1), xi: Complex64::new(1.0, 0.5), zeta: Complex64::new(0.2, -1.0) };
    let pp = elliptic_prototype(p, &e, &e, (Lattice::Positive, Lattice::Positive), c).unwrap();
    let hh = elliptic_prototype(p, &e, &e, (Lattice::Half, Lattice::Half), c).unwrap();
    let quotient = hh.mul(&pp.inverse().unwrap());
    assert!(quotient.coeffs[1].constant_term().norm() > 0.0);
    let ph = elliptic_prototype(p, &e, &e, (Lattice::Positive, Lattice::Half), c).unwrap();
    let hp = elliptic_prototype(p, &e, &e, (Lattice::Half, Lattice::Positive), c).unwrap();
    assert!(ph.mul(&hp).max_abs_diff(&pp.mul(&hh)) < 1e-10);
    // Positive-lattice products live on integer powers.
    assert!(pp.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero()));
}

#[test]
fn selberg_converges() {
    let s = Complex64::new(1.0, 0.0);
    let z30 = patterson_selberg(s, 1.0, 0.0, 30).unwrap();
    let z60 = patterson_selberg(s, 1.0, 0.0, 60).unwrap();
    assert!((z30 - z60).norm() < 1e-3);
    assert!((z60.re - 0.3548).abs() < 1e-3, "{z60}");
    let mut prev = f64::INFINITY;
    for k in [5, 10, 15, 20, 30] {
        let err = (patterson_selberg(s, 1.0, 0.0, k).unwrap() - z60).norm();
        assert!(err <= prev, "K={k}");
        assert!(err <= patterson_selberg_tail(s, 1.0, k) * 1.01 + 1e-15);
        prev = err;
    }
}

#[test]
fn selberg_rejects_nonpositive_alpha() {
    assert!(matches!(patterson_selberg(Complex64::one(), 0.0, 0.0, 5), Err(GeneraError::Divergent(_))));
    assert!(matches!(patterson_selberg(Complex64::one(), -1.0, 0.0, 5), Err(GeneraError::Divergent(_))));
}

#[test]
fn probe_is_deterministic_and_complete() {
    for tau in [Complex64::new(0.0, 0.9), Complex64::new(0.1, 0.9)] {
        let p = SpectralParams::new(tau, 1, 0.0, 25).unwrap();
        let a = qproduct_probe(&p, &all_conventions()).unwrap();
        let b = qproduct_probe(&p, &all_conventions()).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.residual.is_finite()));
    }
}

#[test]
fn probe_lhs_value() {
    let p = SpectralParams::new(Complex64::new(0.0, 0.9), 1, 0.0, 25).unwrap();
    let lhs = qproduct_lhs(&p);
    assert!((lhs.re - (1.0 - 3.516e-3)).abs() < 1e-5, "{lhs}");
}

#[test]
fn leading_factor_agrees_under_default_convention() {
    for tau in [Complex64::new(0.0, 0.9), Complex64::new(0.1, 0.9)] {
        let p = SpectralParams::new(tau, 1, 0.25, 10).unwrap();
        let (a, b) = leading_factor_match(&p, AlphaBeta::TwoPi);
        assert!((a - b).norm() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn spectral_params_validated() {
    assert!(SpectralParams::new(Complex64::new(0.0, -1.0), 1, 0.0, 5).is_err());
    assert!(SpectralParams::new(Complex64::new(0.0, 1.0), 1, 1.0, 5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn random_bundle_identities(a in proptest::collection::vec(-2i64..=2, 6), z in -3i64..=3) {
        let roots = vec![vec![q(a[0]), q(a[1])], vec![q(a[2]), q(a[3])], vec![q(a[4]), q(a[5])]];
        let e = BundleRoots::from_roots(2, roots).unwrap();
        let c = ctx(2, 3, 6);
        prop_assert!(series_inverse_identities(&e, c).unwrap().holds());
        let zq = q(z);
        let s = s_q(&e, &zq, c).unwrap();
        let l = lambda_q(&e, &-zq, c).unwrap();
        prop_assert_eq!(s.mul(&l), QSeries::one(c));
    }
}
