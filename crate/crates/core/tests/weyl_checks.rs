use hwb_core::ce::cohomology;
use hwb_core::exactlin::*;
use hwb_core::structures::*;
use hwb_core::weyl::*;

fn pool() -> Vec<LieAlgebra> {
    vec![LieAlgebra::abelian(1), LieAlgebra::abelian(2), LieAlgebra::sl2()]
}

#[test]
fn d_squared_and_acyclic() {
    for h in pool() {
        for cap in 0..=3 {
            let w = weyl(&h, cap).unwrap();
            assert_eq!(w.check_differentials(), Ok(()), "{} D={cap}", h.dim());
            assert!(w.complex().check_d_squared().is_ok());
            let a = acyclicity(&w);
            assert!(a.acyclic(), "{} D={cap}: {:?}", h.dim(), a.dims);
        }
    }
}

#[test]
fn d2_is_bijective_on_generators() {
    for h in pool() {
        let w = weyl(&h, 1).unwrap();
        assert_eq!(w.d2_on_generators(), ExactMatrix::identity(h.dim()));
    }
}

#[test]
fn leibniz_rule() {
    for h in [LieAlgebra::abelian(2), LieAlgebra::sl2(), LieAlgebra::nonabelian2()] {
        let w = weyl(&h, 2).unwrap();
        let n = w.check_leibniz(3).unwrap();
        assert!(n > 0);
    }
}

#[test]
fn leibniz_negative_control() {
    // Dropping the sign in the Leibniz rule fails on θ·θ.
    let w = weyl(&LieAlgebra::abelian(2), 2).unwrap();
    let e = |k: usize| {
        let mut v = vec![Rational::default(); w.dims[1]];
        v[k] = q(1);
        v
    };
    let (x, y) = (e(0), e(1));
    let lhs = w.d(2).mul_vec(&w.mul(1, &x, 1, &y));
    let plus: Vec<Rational> = w
        .mul(2, &w.d(1).mul_vec(&x), 1, &y)
        .iter()
        .zip(w.mul(1, &x, 2, &w.d(1).mul_vec(&y)))
        .map(|(a, b)| a + b)
        .collect();
    assert_ne!(lhs, plus);
}

#[test]
fn e1_is_ce_with_symmetric_coefficients() {
    for h in pool() {
        let w = weyl(&h, 3).unwrap();
        let pc = weyl_page_check(&w).unwrap();
        assert!(pc.agree(), "{}: {:?}", h.dim(), pc);
    }
    let w = weyl(&LieAlgebra::nonabelian2(), 2).unwrap();
    assert!(weyl_page_check(&w).unwrap().agree());
}

#[test]
fn sl2_e1_invariant_polynomials() {
    // E_1^{2j,0} = [S^j sl2*]^{sl2}: 1, 0, 1, 0.
    let w = weyl(&LieAlgebra::sl2(), 3).unwrap();
    let pc = weyl_page_check(&w).unwrap();
    let row: Vec<usize> = (0..=3).map(|j| pc.e1[&(2 * j, 0)].0).collect();
    assert_eq!(row, vec![1, 0, 1, 0]);
}

#[test]
fn relative_sl2_is_invariant_polynomials() {
    let g = LieAlgebra::sl2();
    let r = relative_weyl(&g, &Subspace::full(3), 4).unwrap();
    let even: Vec<usize> = (0..=4).map(|p| r.cohomology[2 * p]).collect();
    assert_eq!(even, vec![1, 0, 1, 0, 1]);
    assert!(r.cohomology.iter().skip(1).step_by(2).all(|&d| d == 0));
    assert!(relative_page_check(&r).unwrap().agree());
}

#[test]
fn relative_gl1_in_gl1() {
    let g = LieAlgebra::gl(1);
    let r = relative_weyl(&g, &Subspace::full(1), 3).unwrap();
    assert_eq!(r.cohomology, vec![1, 0, 1, 0, 1, 0, 1, 0]);
}

#[test]
fn relative_to_zero_is_absolute() {
    for h in pool() {
        let r = relative_weyl(&h, &Subspace::zero(h.dim()), 2).unwrap();
        let w = weyl(&h, 2).unwrap();
        assert_eq!(r.complex.dims, w.dims);
        assert_eq!(r.cohomology, w.complex().cohomology().dims);
    }
}

#[test]
fn relative_page_formula_proper_subalgebra() {
    // h = diagonal of gl2, a Cartan-type subalgebra.
    let g = LieAlgebra::gl(2);
    let h = Subspace::coordinate(4, &[0, 3]);
    let r = relative_weyl(&g, &h, 1).unwrap();
    assert!(relative_page_check(&r).unwrap().agree());
}

#[test]
fn relative_rejects_non_subalgebra() {
    let g = LieAlgebra::sl2();
    let h = Subspace::coordinate(3, &[1, 2]);
    assert!(relative_weyl(&g, &h, 1).is_err());
}

#[test]
fn truncated_gl1_matches_weight_zero_model() {
    let t = truncated_weyl(&LieAlgebra::gl(1), 1).unwrap();
    let m = w1_weight_zero_model();
    let hm = cohomology(&m, &LieModule::trivial(&m, 1), 3).unwrap().dims;
    assert_eq!(t.cohomology, hm);
    assert_eq!(hm, vec![1, 0, 0, 1]);
}

#[test]
fn truncated_gl2_d_squared() {
    let t = truncated_weyl(&LieAlgebra::gl(2), 2).unwrap();
    assert!(t.d_squared_zero);
    assert_eq!(t.cohomology[0], 1);
}

#[test]
fn w1_comparisons() {
    for gbar in 1..=2 {
        let l = w1_comparison(gbar, 4).unwrap();
        assert!(l.agree(), "{gbar}: {:?}", l.dims);
    }
}

#[test]
fn abutment_of_standard_filtration() {
    let w = weyl(&LieAlgebra::sl2(), 2).unwrap();
    assert!(weyl_abutment(&w).unwrap().holds());
}
