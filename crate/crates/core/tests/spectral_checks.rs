use std::collections::BTreeMap;

use hwb_core::ce::{ce_complex, cohomology, CochainComplex};
use hwb_core::exactlin::*;
use hwb_core::spectral::*;
use hwb_core::structures::*;
use proptest::prelude::*;

fn random_checks(fc: &FilteredComplex) -> Result<(), TestCaseError> {
    let r_inf = fc.stable_page();
    for r in 0..=r_inf {
        let pg = page(fc, r).unwrap();
        prop_assert_eq!(pg.check_d_squared(), Ok(()));
        prop_assert_eq!(check_well_defined(fc, &pg), Ok(()));
    }
    prop_assert!(check_page_recursion(fc, r_inf).unwrap().holds());
    prop_assert!(abutment(fc).unwrap().holds());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn random_filtered_complexes(seed in any::<u64>()) {
        random_checks(&random_filtered(seed, 3, 5, 3))?;
    }
}

#[test]
fn zero_differential_pages_are_equal() {
    let c = CochainComplex::new(vec![2, 3, 1], vec![ExactMatrix::zeros(3, 2), ExactMatrix::zeros(1, 3)]);
    let filt = vec![
        vec![Subspace::full(2), Subspace::coordinate(2, &[1]), Subspace::zero(2)],
        vec![Subspace::full(3), Subspace::coordinate(3, &[0, 2]), Subspace::zero(3)],
        vec![Subspace::full(1), Subspace::zero(1)],
    ];
    let fc = FilteredComplex::new(c, filt).unwrap();
    let e0 = page(&fc, 0).unwrap().dims();
    for r in 1..4 {
        assert_eq!(page(&fc, r).unwrap().dims(), e0);
    }
}

fn surj() -> CochainComplex {
    // Q² → Q surjective: H^0 = 1, H^1 = 0.
    CochainComplex::new(vec![2, 1], vec![ExactMatrix::from_i64(&[&[1, 1]])])
}

fn line(n: usize) -> CochainComplex {
    CochainComplex::new(vec![1; n], (0..n - 1).map(|_| ExactMatrix::zeros(1, 1)).collect())
}

#[test]
fn collapse_row_for_acyclic_columns() {
    let dc = DoubleComplex::tensor(&line(3), &surj()).unwrap();
    let f1 = dc.filtered(1).unwrap();
    assert_eq!(collapse_check(&f1, 2, Axis::Row(0)).unwrap(), Collapse::Holds);
}

#[test]
fn collapse_column_single_column() {
    let dc = DoubleComplex::tensor(&line(1), &surj()).unwrap();
    let f1 = dc.filtered(1).unwrap();
    assert_eq!(collapse_check(&f1, 1, Axis::Column(0)).unwrap(), Collapse::Holds);
}

#[test]
fn collapse_negative_control() {
    let dc = DoubleComplex::tensor(&line(2), &line(2)).unwrap();
    let f1 = dc.filtered(1).unwrap();
    assert_eq!(collapse_check(&f1, 2, Axis::Row(0)).unwrap(), Collapse::HypothesisNotMet);
}

#[test]
fn invertible_horizontal_kills_second_e1() {
    let iso = CochainComplex::new(vec![1, 1], vec![ExactMatrix::identity(1)]);
    let dc = DoubleComplex::tensor(&iso, &line(2)).unwrap();
    let rep = first_pages(&dc).unwrap();
    assert!(rep.agree(), "{rep:?}");
    assert!(rep.e1_second.values().all(|&(a, _)| a == 0));
    let total = FilteredComplex::trivial(dc.total());
    assert!(total.cohomology_dims().iter().all(|&d| d == 0));
}

#[test]
fn first_pages_agree_on_products() {
    let a = CochainComplex::new(vec![1, 2, 1], vec![ExactMatrix::from_i64(&[&[1], &[0]]), ExactMatrix::from_i64(&[&[0, 1]])]);
    for b in [surj(), line(2), a.clone()] {
        let rep = first_pages(&DoubleComplex::tensor(&a, &b).unwrap()).unwrap();
        assert!(rep.agree(), "{rep:?}");
    }
}

#[test]
fn zero_vertical_first_e1_is_bottom_row() {
    let a = CochainComplex::new(vec![1, 1], vec![ExactMatrix::zeros(1, 1)]);
    let dc = DoubleComplex::tensor(&a, &line(2)).unwrap();
    let rep = first_pages(&dc).unwrap();
    for (&(p, q), &(e, _)) in &rep.e1_first {
        assert_eq!(e, dc.dim(p as usize, q as usize));
    }
}

#[test]
fn anticommutation_violation_rejected() {
    let one = ExactMatrix::identity(1);
    let z = |r| ExactMatrix::zeros(r, 1);
    let h = vec![vec![one.clone(), one.clone()], vec![z(0), z(0)]];
    let v = vec![vec![one.clone(), z(0)], vec![one.clone(), z(0)]];
    assert!(matches!(DoubleComplex::new(vec![vec![1, 1], vec![1, 1]], h, v), Err(SpectralError::Double(_))));
}

#[test]
fn hs_whole_algebra_is_single_column() {
    let g = LieAlgebra::sl2();
    let r = hochschild_serre(&g, &Subspace::full(3), &LieModule::trivial(&g, 1), 2).unwrap();
    assert!(r.consistent(), "{r:?}");
    assert!(r.pages[1].keys().all(|&(p, _)| p == 0));
    assert_eq!(r.abutment.cohomology, vec![1, 0, 0, 1]);
    let r = hochschild_serre(&g, &Subspace::zero(3), &LieModule::trivial(&g, 1), 2).unwrap();
    assert!(r.consistent(), "{r:?}");
}

#[test]
fn hs_kunneth() {
    let g = LieAlgebra::sl2().direct_sum(&LieAlgebra::abelian(1));
    let h = Subspace::coordinate(4, &[0, 1, 2]);
    let r = hochschild_serre(&g, &h, &LieModule::trivial(&g, 1), 2).unwrap();
    assert!(r.consistent(), "{r:?}");
    let sl2 = [1, 0, 0, 1];
    let ab = [1, 1];
    let mut expected = BTreeMap::new();
    for (qq, &x) in sl2.iter().enumerate() {
        for (p, &y) in ab.iter().enumerate() {
            if x * y > 0 {
                expected.insert((p as i64, qq as i64), x * y);
            }
        }
    }
    assert_eq!(r.pages[2], expected);
    assert_eq!(r.abutment.cohomology, vec![1, 1, 0, 1, 1]);
}

#[test]
fn hs_with_coefficients_and_non_ideal() {
    let g = LieAlgebra::sl2();
    // Borel-free example: h = span(h) is a subalgebra, not an ideal.
    let h = Subspace::coordinate(3, &[0]);
    for a in [LieModule::trivial(&g, 1), LieModule::adjoint(&g), LieModule::sl2_irrep(2)] {
        let r = hochschild_serre(&g, &h, &a, 3).unwrap();
        assert!(r.e2_ideal.is_none());
        assert!(r.consistent(), "{r:?}");
    }
    let heis = LieAlgebra::heisenberg();
    let z = Subspace::coordinate(3, &[2]);
    let r = hochschild_serre(&heis, &z, &LieModule::adjoint(&heis), 3).unwrap();
    assert!(r.e2_ideal.is_some());
    assert!(r.consistent(), "{r:?}");
}

fn diag(entries: &[i64]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, q(e));
    }
    m
}

#[test]
fn brst_examples() {
    let g = LieAlgebra::abelian(1);
    let c = CochainComplex::new(vec![2], vec![]);
    let r = brst_double(&g, &c, &[vec![diag(&[0, 1])]]).unwrap();
    assert_eq!((r.h0_total, r.invariants_of_h0), (1, 1));

    let r = brst_double(&g, &c, &[vec![diag(&[0, 0])]]).unwrap();
    assert_eq!(r.h0_total, 2);

    let g2 = LieAlgebra::abelian(2);
    let c3 = CochainComplex::new(vec![3], vec![]);
    let r = brst_double(&g2, &c3, &[vec![diag(&[0, 1, 0]), diag(&[0, 0, 2])]]).unwrap();
    assert_eq!((r.h0_total, r.invariants_of_h0), (1, 1));

    // Acyclic resolution Q → Q² → Q with a commuting action.
    let c = CochainComplex::new(vec![1, 2, 1], vec![ExactMatrix::from_i64(&[&[1], &[0]]), ExactMatrix::from_i64(&[&[0, 1]])]);
    let acts = vec![vec![diag(&[0])], vec![diag(&[0, 1])], vec![diag(&[1])]];
    let r = brst_double(&g, &c, &acts).unwrap();
    assert!(!r.c_acyclic_positive || r.e1_concentrated);

    let bad = vec![vec![diag(&[1])], vec![diag(&[0, 0])], vec![diag(&[0])]];
    assert!(matches!(brst_double(&g, &c, &bad), Err(SpectralError::NotCommuting { x: 0, n: 0 })));
}

#[test]
fn brst_on_ce_complex_is_acyclic_in_positive_degree() {
    // C = Q → Q surjective-free: C^0 = Q², C^1 = Q, d surjective, trivial action.
    let g = LieAlgebra::abelian(1);
    let c = surj();
    let acts = vec![vec![ExactMatrix::zeros(2, 2)], vec![ExactMatrix::zeros(1, 1)]];
    let r = brst_double(&g, &c, &acts).unwrap();
    assert!(r.c_acyclic_positive && r.e1_concentrated);
    assert_eq!(r.h0_total, r.invariants_of_h0);
    let _ = ce_complex(&g, &LieModule::trivial(&g, 1), 1).unwrap();
    let _ = cohomology(&g, &LieModule::trivial(&g, 1), 1).unwrap();
}
