use hwb_core::deformation::*;
use hwb_core::exactlin::*;
use hwb_core::hochschild::{cochain_dim, d_hoch_matrix, HochSign};
use hwb_core::structures::*;
use num_traits::Zero;
use proptest::prelude::*;

fn exterior(m: usize) -> GradedBracketAlgebra {
    schouten_extend(&LieAlgebra::abelian(m)).unwrap()
}

#[test]
fn exterior_algebra_with_zero_bracket() {
    let a = exterior(3);
    assert!(gerstenhaber_check(&a).passes());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            assert!(a.bracket(&a.basis_vector(i), &a.basis_vector(j)).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn schouten_instances_pass() {
    for g in [LieAlgebra::nonabelian2(), LieAlgebra::sl2(), LieAlgebra::heisenberg(), LieAlgebra::gl(2)] {
        let a = schouten_extend(&g).unwrap();
        let r = gerstenhaber_check(&a);
        assert!(r.passes(), "{:?}", r.failures);
        assert_eq!(r.checked_triples, a.dim().pow(3));
    }
}

#[test]
fn schouten_restricts_to_lie_bracket() {
    let g = LieAlgebra::sl2();
    let a = schouten_extend(&g).unwrap();
    // Degree-1 basis vectors sit at positions 1..=3.
    for i in 0..3 {
        for j in 0..3 {
            let b = a.bracket(&a.basis_vector(1 + i), &a.basis_vector(1 + j));
            let mut expect = vec![Rational::zero(); a.dim()];
            for (k, c) in g.bracket_basis(i, j) {
                expect[1 + k] = c.clone();
            }
            assert_eq!(b, expect);
        }
    }
}

#[test]
fn unshifted_leibniz_sign_fails() {
    let a = schouten_extend(&LieAlgebra::sl2()).unwrap();
    assert!(leibniz_witness(&a, 1).is_none());
    assert!(leibniz_witness(&a, 0).is_some());
}

#[test]
fn perturbed_bracket_reports_witness() {
    let mut a = schouten_extend(&LieAlgebra::sl2()).unwrap();
    a.perturb_bracket(1, 2, 3, &q(1));
    let r = gerstenhaber_check(&a);
    assert!(!r.passes());
    assert!(r.failures.contains_key(&Axiom::BracketSymmetry));
}

#[test]
fn schouten_cap() {
    assert!(schouten_extend(&LieAlgebra::abelian(5)).is_err());
}

#[test]
fn maurer_cartan_zero() {
    let a = toy_dgla(true);
    assert!(maurer_cartan_check(&a, &vec![Rational::zero(); a.dim()]).unwrap());
}

#[test]
fn toy_algebras_are_differential_gerstenhaber() {
    for p in [false, true] {
        let r = gerstenhaber_check(&toy_dgla(p));
        assert!(r.passes(), "{:?}", r.failures);
    }
}

#[test]
fn extension_solves_second_order() {
    let a = toy_dgla(true);
    let z1 = a.basis_vector(2);
    let Extension::Solved(z2) = perturbative_extend(&a, &z1).unwrap() else { panic!("expected a solution") };
    let mut lhs = a.apply_d(&z2).unwrap();
    for (l, b) in lhs.iter_mut().zip(a.bracket(&z1, &z1)) {
        *l += b * qf(1, 2);
    }
    assert!(lhs.iter().all(Zero::is_zero));
    assert_eq!(z2[4], qf(-1, 2));
}

#[test]
fn obstruction_is_closed_and_not_exact() {
    let a = toy_dgla(false);
    let Extension::Obstructed(o) = perturbative_extend(&a, &a.basis_vector(2)).unwrap() else { panic!("expected obstruction") };
    assert!(a.apply_d(&o).unwrap().iter().all(Zero::is_zero));
    assert!(!image(a.d.as_ref().unwrap()).contains(&o));
}

#[test]
fn abelian_bracket_extends_by_zero() {
    let n = 3;
    let mut d = ExactMatrix::zeros(n, n);
    d.set(1, 0, q(1));
    let a = GradedBracketAlgebra::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![1, 2, 2],
        |_, _| vec![Rational::zero(); n],
        |_, _| vec![Rational::zero(); n],
        Some(d),
    )
    .unwrap();
    assert_eq!(perturbative_extend(&a, &a.basis_vector(2)).unwrap(), Extension::Solved(vec![Rational::zero(); n]));
}

#[test]
fn extension_requires_closed_leading_term() {
    let a = toy_dgla(false);
    assert_eq!(perturbative_extend(&a, &a.basis_vector(0)), Err(DeformError::NotClosed));
}

#[test]
fn moyal_associative_low_degree() {
    let r = moyal_associativity(1, 2, 2).unwrap();
    assert_eq!(r.checked, 216);
    assert!(r.failures.is_empty());
    let r = moyal_associativity(2, 1, 2).unwrap();
    assert!(r.failures.is_empty());
}

#[test]
fn moyal_eps_zero_is_commutative_product() {
    let caps = WeylCaps { degree: 6, eps: 0 };
    for f in weyl_monomials(1, 2) {
        for g in weyl_monomials(1, 2) {
            assert_eq!(moyal(&f, &g, caps).unwrap(), f.mul(&g, 0));
            assert_eq!(moyal(&f, &g, caps).unwrap(), moyal(&g, &f, caps).unwrap());
        }
    }
}

#[test]
fn moyal_unit() {
    let caps = WeylCaps { degree: 6, eps: 3 };
    let one = PolyWeyl::constant(1, q(1));
    for f in weyl_monomials(1, 3) {
        assert_eq!(moyal(&one, &f, caps).unwrap(), f);
        assert_eq!(moyal(&f, &one, caps).unwrap(), f);
    }
}

#[test]
fn canonical_relations_two_variables() {
    let caps = WeylCaps { degree: 2, eps: 2 };
    for i in 0..2 {
        for j in 0..2 {
            let (p, qq) = (PolyWeyl::p(2, i), PolyWeyl::q(2, j));
            let c = moyal(&p, &qq, caps).unwrap().sub(&moyal(&qq, &p, caps).unwrap());
            let expect = if i == j { PolyWeyl::eps(2) } else { PolyWeyl::zero(2) };
            assert_eq!(c, expect);
        }
    }
}

fn poly(n: usize, coeffs: &[i64], max_deg: u32) -> PolyWeyl {
    weyl_monomials(n, max_deg)
        .iter()
        .zip(coeffs)
        .fold(PolyWeyl::zero(n), |acc, (m, &c)| acc.add(&m.scale(&q(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn first_order_commutator_is_poisson(a in proptest::collection::vec(-3i64..=3, 15), b in proptest::collection::vec(-3i64..=3, 15)) {
        let caps = WeylCaps { degree: 6, eps: 3 };
        let (f, g) = (poly(2, &a, 2), poly(2, &b, 2));
        let c = moyal(&f, &g, caps).unwrap().sub(&moyal(&g, &f, caps).unwrap());
        prop_assert_eq!(c.eps_coeff(0), PolyWeyl::zero(2));
        prop_assert_eq!(c.eps_coeff(1), poisson_bracket(&f, &g, caps).unwrap());
        prop_assert_eq!(moyal(&f, &g, caps).unwrap().eps_coeff(0), f.mul(&g, 0));
    }

    #[test]
    fn poisson_identities(a in proptest::collection::vec(-2i64..=2, 10), b in proptest::collection::vec(-2i64..=2, 10), c in proptest::collection::vec(-2i64..=2, 10)) {
        let caps = WeylCaps { degree: 12, eps: 0 };
        let (f, g, h) = (poly(1, &a, 3), poly(1, &b, 3), poly(1, &c, 3));
        let pb = |x: &PolyWeyl, y: &PolyWeyl| poisson_bracket(x, y, caps).unwrap();
        prop_assert_eq!(pb(&f, &g), pb(&g, &f).scale(&q(-1)));
        let jac = pb(&f, &pb(&g, &h)).add(&pb(&g, &pb(&h, &f))).add(&pb(&h, &pb(&f, &g)));
        prop_assert!(jac.is_zero());
        let lhs = pb(&f, &g.mul(&h, 0));
        let rhs = pb(&f, &g).mul(&h, 0).add(&g.mul(&pb(&f, &h), 0));
        prop_assert_eq!(lhs, rhs);
    }
}

fn deformation_pool() -> Vec<AssocAlgebra> {
    vec![AssocAlgebra::dual_numbers(), AssocAlgebra::truncated_poly(1, 2), AssocAlgebra::truncated_poly(2, 1), AssocAlgebra::base_field()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn order_one_iff_cocycle(which in 0usize..4, coeffs in proptest::collection::vec(-2i64..=2, 27), sparse in proptest::bool::ANY) {
        let a = deformation_pool().swap_remove(which);
        let n = cochain_dim(&a, 2);
        let f: Vec<Rational> = (0..n).map(|i| if sparse && i % 3 != 0 { q(0) } else { q(coeffs[i % 27]) }).collect();
        let r = first_order_deformation(&a, &f).unwrap();
        prop_assert_eq!(r.first_order_associative(), r.cocycle);
        if !r.cocycle {
            prop_assert!(r.witness.is_some());
        }
    }

    #[test]
    fn coboundaries_are_first_order_associative(which in 0usize..3, g in proptest::collection::vec(-3i64..=3, 9)) {
        let a = deformation_pool().swap_remove(which);
        let gv: Vec<Rational> = (0..cochain_dim(&a, 1)).map(|i| q(g[i % 9])).collect();
        let f = d_hoch_matrix(&a, 1, HochSign::Plain).mul_vec(&gv);
        let r = first_order_deformation(&a, &f).unwrap();
        prop_assert!(r.coboundary && r.cocycle);
        prop_assert!(r.first_order_associative());
    }
}

#[test]
fn zero_cochain_is_associative_to_all_orders() {
    let a = AssocAlgebra::dual_numbers();
    let r = first_order_deformation(&a, &vec![Rational::zero(); cochain_dim(&a, 2)]).unwrap();
    assert_eq!(r.order, AssocOrder::All);
    assert!(r.coboundary);
}

#[test]
fn non_cocycle_reports_order_zero() {
    let a = AssocAlgebra::dual_numbers();
    // f(1, ε) = 1 breaks the cocycle identity on (1, 1, ε).
    let mut f = vec![Rational::zero(); 8];
    f[2] = q(1);
    let r = first_order_deformation(&a, &f).unwrap();
    assert!(!r.cocycle);
    assert_eq!(r.order, AssocOrder::Through(0));
    assert!(r.witness.is_some());
}
