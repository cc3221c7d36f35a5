use hwb_core::combin::permutations;
use hwb_core::exactlin::*;
use hwb_core::invariants::*;
use num_traits::Zero;

#[test]
fn weight_reduction_matches_brute_force() {
    for (n, k, l) in [(1, 1, 1), (1, 2, 1), (2, 1, 0), (2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 2, 2), (2, 3, 3)] {
        assert_eq!(
            invariant_dim(n, k, l, DEFAULT_TENSOR_CAP).unwrap(),
            invariant_dim_brute(n, k, l).unwrap(),
            "n={n} k={k} l={l}"
        );
    }
}

#[test]
fn module_axiom_for_tensor_spaces() {
    for (n, k, l) in [(2, 1, 1), (2, 2, 1), (3, 1, 1)] {
        assert!(TensorSpace::new(n, k, l).module().unwrap().validate().is_ok());
    }
}

#[test]
fn sparse_action_matches_explicit_module() {
    let ts = TensorSpace::new(2, 2, 1);
    let m = ts.module().unwrap();
    let v: Vec<Rational> = (0..ts.dim()).map(|i| q(i as i64 * 3 % 7 - 3)).collect();
    for x in 0..4 {
        assert_eq!(ts.act(x, &v), m.action(x).mul_vec(&v));
    }
}

#[test]
fn unequal_valence_has_no_invariants() {
    for (n, k, l) in [(2, 1, 0), (2, 0, 1), (2, 2, 1), (2, 3, 1), (3, 2, 1)] {
        assert_eq!(invariant_dim(n, k, l, DEFAULT_TENSOR_CAP).unwrap(), 0);
    }
}

#[test]
fn gl2_invariant_dims() {
    assert_eq!(invariant_dim(2, 1, 1, DEFAULT_TENSOR_CAP).unwrap(), 1);
    assert_eq!(invariant_dim(2, 2, 2, DEFAULT_TENSOR_CAP).unwrap(), 2);
    assert_eq!(invariant_dim(2, 3, 3, DEFAULT_TENSOR_CAP).unwrap(), 5);
}

#[test]
fn invariants_are_spanned_by_c_sigma() {
    for (n, k) in [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)] {
        assert_eq!(c_sigma_rank(n, k).unwrap(), invariant_dim(n, k, k, DEFAULT_TENSOR_CAP).unwrap(), "n={n} k={k}");
    }
}

#[test]
fn every_c_sigma_is_invariant() {
    for n in 1..=C_SIGMA_MAX_N {
        for k in 1..=C_SIGMA_MAX_K {
            let ts = TensorSpace::new(n, k, k);
            for s in permutations(k) {
                assert!(ts.is_invariant(&c_sigma(&s, n).unwrap()), "n={n} σ={s:?}");
            }
        }
    }
}

#[test]
fn c_sigma_n1_collapse() {
    assert_eq!(c_sigma(&[0, 1], 1).unwrap(), c_sigma(&[1, 0], 1).unwrap());
    assert_ne!(c_sigma(&[0, 1], 2).unwrap(), c_sigma(&[1, 0], 2).unwrap());
}

#[test]
fn relation_at_each_rank() {
    for n in 1..=3 {
        let r = relation_check(n).unwrap();
        assert!(r.holds(), "{r:?}");
    }
    assert_eq!(relation_check(2).unwrap().invariant_dim, Some(5));
}

#[test]
fn non_alternating_sum_is_nonzero() {
    // Control: the plain sum of c_σ over S_3 at n = 2 is not zero.
    let mut sum = vec![Rational::zero(); TensorSpace::new(2, 3, 3).dim()];
    for s in permutations(3) {
        for (a, b) in sum.iter_mut().zip(c_sigma(&s, 2).unwrap()) {
            *a += b;
        }
    }
    assert!(sum.iter().any(|x| !x.is_zero()));
}

#[test]
fn psi_invariance_and_symmetries() {
    for r in 1..=PSI_MAX_R {
        for n in 1..=PSI_MAX_N {
            let p = psi_r(r, n).unwrap();
            assert!(p.is_invariant(), "r={r} n={n}");
            assert!(p.beta_symmetric());
            assert!(p.alpha_alternating());
            assert!(p.groups_alternating());
        }
    }
    assert!(psi_r(2, 2).unwrap().is_nonzero());
    assert!(psi_r(1, 2).unwrap().is_nonzero());
}

#[test]
fn psi_two_vanishes_in_rank_one() {
    // Λ²V′ = 0 when n = 1.
    assert!(!psi_r(2, 1).unwrap().is_nonzero());
}

#[test]
fn symmetry_checks_detect_asymmetry() {
    let mut p = psi_r(2, 2).unwrap();
    let k = p.tensor.iter().position(|x| !x.is_zero()).unwrap();
    p.tensor[k] += q(1);
    assert!(!(p.beta_symmetric() && p.alpha_alternating() && p.groups_alternating()));
}
