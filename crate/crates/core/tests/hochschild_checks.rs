use hwb_core::combin::flat_index;
use hwb_core::exactlin::*;
use hwb_core::hochschild::*;
use hwb_core::structures::*;
use num_traits::Zero;
use proptest::prelude::*;

fn koszul_dg() -> DgAlgebra {
    // Basis 1, y, ξ, ξy with |y| = 0, |ξ| = −1, y² = ξ² = 0, Q(ξ) = y.
    let names = ["1", "y", "xi", "xiy"].map(String::from).to_vec();
    let bits = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let a = AssocAlgebra::new(
        names,
        |i, j| {
            let mut v = vec![q(0); 4];
            let (y, x) = (bits[i].0 + bits[j].0, bits[i].1 + bits[j].1);
            if y < 2 && x < 2 {
                v[bits.iter().position(|b| *b == (y, x)).unwrap()] = q(1);
            }
            v
        },
        vec![q(1), q(0), q(0), q(0)],
        Some(vec![0, 0, -1, -1]),
    )
    .unwrap();
    let mut qm = ExactMatrix::zeros(4, 4);
    qm.set(1, 2, q(1));
    DgAlgebra::new(a, qm).unwrap()
}

fn split_field() -> AssocAlgebra {
    // k × k with idempotents e, 1 − e.
    AssocAlgebra::new(
        vec!["1".into(), "e".into()],
        |i, j| if i == 1 && j == 1 { vec![q(0), q(1)] } else if i == 0 { let mut v = vec![q(0); 2]; v[j] = q(1); v } else { vec![q(0), q(1)] },
        vec![q(1), q(0)],
        None,
    )
    .unwrap()
}

fn small_algebras() -> Vec<AssocAlgebra> {
    vec![AssocAlgebra::base_field(), AssocAlgebra::dual_numbers(), split_field()]
}

#[test]
fn dg_total_squares_to_zero_with_koszul_signs() {
    let dg = koszul_dg();
    assert_eq!(dg_total_squares_to_zero(&dg, 2, QSign::Koszul, HochSign::Koszul), Ok(()));
    assert!(dg_total_squares_to_zero(&dg, 2, QSign::Literal, HochSign::Koszul).is_err());
    assert!(dg_total_squares_to_zero(&dg, 2, QSign::Literal, HochSign::Plain).is_err());
}

#[test]
fn dg_total_on_family() {
    let dg = koszul_dg();
    let f: Vec<Vec<Rational>> = (0..3).map(|n| (0..cochain_dim(&dg.algebra, n)).map(|i| q((i as i64 * 5 + n as i64) % 7 - 3)).collect()).collect();
    let once = dg_total_differential(&dg, &f, QSign::Koszul, HochSign::Koszul);
    let twice = dg_total_differential(&dg, &once[..3], QSign::Koszul, HochSign::Koszul);
    // Arity ≤ 2 components only see f_0..f_2 through two steps.
    for comp in &twice[..3] {
        assert!(comp.iter().all(Zero::is_zero));
    }
}

#[test]
fn dg_validation() {
    let a = AssocAlgebra::dual_numbers();
    // Degree forces Q = 0 on the graded dual numbers.
    assert!(DgAlgebra::new(a.clone(), ExactMatrix::zeros(2, 2)).is_ok());
    let mut bad = ExactMatrix::zeros(2, 2);
    bad.set(1, 1, q(1));
    assert!(DgAlgebra::new(a.clone(), bad).is_err());
    let mut deg = ExactMatrix::zeros(2, 2);
    deg.set(1, 0, q(1));
    assert!(DgAlgebra::new(a, deg).is_err());
    let dg = koszul_dg();
    let mut sq = dg.q.clone();
    sq.set(2, 1, q(1));
    assert!(DgAlgebra::new(dg.algebra.clone(), sq).is_err());
}

#[test]
fn hkr_two_variables() {
    let rows = hkr_compare(2, 2, -1..=2).unwrap();
    assert!(rows.iter().all(HkrRow::matches), "{rows:?}");
    assert!(rows.iter().any(|r| r.arity == 2 && r.hh > 0));
}

#[test]
fn graded_matches_dense_truncated() {
    let a = AssocAlgebra::truncated_poly(1, 2);
    let g = graded_hh(&a, 2, -4..=2, None, HochSign::Plain).unwrap();
    let dense = hh(&a, 2, DEFAULT_BUDGET_BYTES).unwrap().dims;
    for n in 0..=2 {
        assert_eq!(g.iter().filter(|c| c.arity == n).map(|c| c.dim).sum::<usize>(), dense[n]);
    }
}

#[test]
fn trace_cocycles_and_restriction() {
    for n in 1..=3 {
        for k in 1..=4 {
            assert!(trace_cochain_is_cocycle(n, k).unwrap(), "n={n} k={k}");
            if n >= 2 {
                assert!(trace_restriction_holds(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }
    assert!(trace_cochain(4, 1).is_err());
    assert!(trace_cochain(2, 5).is_err());
}

#[test]
fn bar_exact_for_small_algebras() {
    for a in small_algebras() {
        let bar = bar_complex(&a, 3, DEFAULT_BUDGET_BYTES).unwrap();
        assert!(bar.check_boundary_squared());
        let r = bar.report();
        assert!(r.augmented_homology.iter().all(|&h| h == 0));
        assert_eq!(r.h0, a.dim());
    }
}

fn vec_of(len: usize, seed: &[i64]) -> Vec<Rational> {
    (0..len).map(|i| q(seed[i % seed.len()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn signed_splitting_is_homotopy(which in 0usize..3, i in -1i64..=2, seed in proptest::collection::vec(-3i64..=3, 1..40)) {
        let a = small_algebras().swap_remove(which);
        let bar = bar_complex(&a, 3, DEFAULT_BUDGET_BYTES).unwrap();
        let x = vec_of(a.dim().pow((i + 2) as u32), &seed);
        prop_assert_eq!(bar_homotopy(&bar, &a, i, &x, true), x.clone());
        // Unsigned append-1: ∂σ − σ∂ = (−1)^{i+1}.
        let lhs = bar.apply(i + 1, &bar_splitting(&a, i, &x, false));
        let mut rhs: Vec<Rational> = x.iter().map(|v| if (i + 1) % 2 == 0 { v.clone() } else { -v.clone() }).collect();
        if i >= 0 {
            for (r, v) in rhs.iter_mut().zip(bar_splitting(&a, i - 1, &bar.apply(i, &x), false)) {
                *r += v;
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn deformation_criteria_agree(which in 0usize..3, coboundary in any::<bool>(), seed in proptest::collection::vec(-2i64..=2, 1..20)) {
        let a = small_algebras().swap_remove(which);
        let f = if coboundary {
            d_hoch(&a, 1, &vec_of(cochain_dim(&a, 1), &seed), HochSign::Plain).unwrap()
        } else {
            vec_of(cochain_dim(&a, 2), &seed)
        };
        let c = deformation_check(&a, &f).unwrap();
        prop_assert!(c.agree());
        if coboundary {
            prop_assert!(c.cocycle);
        }
    }

    #[test]
    fn phi_is_chain_map(which in 1usize..3, k in 0usize..=2, seed in proptest::collection::vec(-3i64..=3, 1..30)) {
        let a = small_algebras().swap_remove(which);
        let tau = vec_of(dual_hoch_dim(&a, k), &seed);
        let (l, r) = phi_chain_map_sides(&a, 2, k, &tau).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn phi_restricts(which in 0usize..3, k in 0usize..=2, seed in proptest::collection::vec(-3i64..=3, 1..30)) {
        let a = small_algebras().swap_remove(which);
        let tau = vec_of(dual_hoch_dim(&a, k), &seed);
        let big = phi_map(&a, 2, k, &tau).unwrap();
        prop_assert_eq!(phi_restrict(&a, 1, 2, k, &big), phi_map(&a, 1, k, &tau).unwrap());
    }

    #[test]
    fn d_hoch_squares_to_zero(which in 0usize..3, n in 0usize..3) {
        let a = small_algebras().swap_remove(which);
        let d0 = d_hoch_matrix(&a, n, HochSign::Plain);
        let d1 = d_hoch_matrix(&a, n + 1, HochSign::Plain);
        prop_assert!(d1.mul(&d0).is_zero());
    }
}

#[test]
fn flat_layout() {
    let a = AssocAlgebra::dual_numbers();
    // f(x, x) = 1 only.
    let mut f = vec![q(0); 8];
    f[flat_index(&[1, 1], 2) * 2] = q(1);
    let c = deformation_check(&a, &f).unwrap();
    assert!(c.cocycle && c.first_order_associative);
}
