use hwb_core::ce::*;
use hwb_core::combin::{increasing_tuples, sort_sign};
use hwb_core::exactlin::*;
use hwb_core::structures::*;
use num_traits::Zero;
use proptest::prelude::*;

fn pool() -> Vec<(LieAlgebra, LieModule)> {
    let sl2 = LieAlgebra::sl2();
    let heis = LieAlgebra::heisenberg();
    let na = LieAlgebra::nonabelian2();
    let gl2 = LieAlgebra::gl(2);
    let na_sum = na.direct_sum(&LieAlgebra::abelian(1));
    vec![
        (sl2.clone(), LieModule::trivial(&sl2, 1)),
        (sl2.clone(), LieModule::adjoint(&sl2)),
        (sl2.clone(), LieModule::sl2_irrep(2)),
        (heis.clone(), LieModule::adjoint(&heis).dual()),
        (na.clone(), LieModule::adjoint(&na)),
        (gl2.clone(), LieModule::gl_standard(2)),
        (na_sum.clone(), LieModule::adjoint(&na_sum)),
    ]
}

// f evaluated on an arbitrary list of basis indices by alternation.
fn eval(f: &[Rational], g: &LieAlgebra, da: usize, args: &[usize]) -> Vec<Rational> {
    let n = args.len();
    let Some((sorted, sign)) = sort_sign(args) else { return vec![Rational::zero(); da] };
    let tuples = increasing_tuples(g.dim(), n);
    let t = tuples.iter().position(|t| *t == sorted).unwrap();
    f[t * da..(t + 1) * da].iter().map(|x| x * q(sign)).collect()
}

// Coboundary, 1-based: Σ(−1)^{i+1} π(x_i) f(..x̂_i..) + Σ_{i<j} (−1)^{i+j} f([x_i,x_j], ..).
fn oracle_delta(f: &[Rational], g: &LieAlgebra, a: &LieModule, n: usize) -> Vec<Rational> {
    let da = a.dim();
    let mut out = Vec::new();
    for u in increasing_tuples(g.dim(), n + 1) {
        let mut acc = vec![Rational::zero(); da];
        for i in 1..=n + 1 {
            let mut rest = u.clone();
            let x = rest.remove(i - 1);
            let v = a.action(x).mul_vec(&eval(f, g, da, &rest));
            let s = if (i + 1) % 2 == 0 { q(1) } else { q(-1) };
            for (o, y) in acc.iter_mut().zip(v) {
                *o += y * &s;
            }
        }
        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                let rest: Vec<usize> = u.iter().enumerate().filter(|(p, _)| *p != i - 1 && *p != j - 1).map(|(_, &e)| e).collect();
                for (k, c) in g.bracket_basis(u[i - 1], u[j - 1]) {
                    let mut args = vec![*k];
                    args.extend(&rest);
                    let v = eval(f, g, da, &args);
                    let s = if (i + j) % 2 == 0 { c.clone() } else { -c.clone() };
                    for (o, y) in acc.iter_mut().zip(v) {
                        *o += y * &s;
                    }
                }
            }
        }
        out.extend(acc);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn matrix_matches_formula(which in 0usize..7, n in 0usize..3, coeffs in proptest::collection::vec(-3i64..=3, 64)) {
        let (g, a) = pool().swap_remove(which);
        let n = n.min(g.dim() - 1);
        let c = ce_complex(&g, &a, n).unwrap();
        let f: Vec<Rational> = (0..c.complex.dims[n]).map(|i| q(coeffs[i % 64])).collect();
        prop_assert_eq!(c.complex.d[n].mul_vec(&f), oracle_delta(&f, &g, &a, n));
    }

    #[test]
    fn delta_squared(which in 0usize..7) {
        let (g, a) = pool().swap_remove(which);
        let c = ce_complex(&g, &a, g.dim()).unwrap();
        prop_assert_eq!(c.complex.check_d_squared(), Ok(()));
    }
}

#[test]
fn poincare_duality_for_unimodular() {
    for g in [LieAlgebra::sl2(), LieAlgebra::heisenberg(), LieAlgebra::abelian(3), LieAlgebra::gl(2)] {
        assert!(g.is_unimodular());
        let h = cohomology(&g, &LieModule::trivial(&g, 1), g.dim()).unwrap().dims;
        let rev: Vec<usize> = h.iter().rev().copied().collect();
        assert_eq!(h, rev);
    }
    // Non-unimodular control: duality fails.
    let g = LieAlgebra::nonabelian2();
    let h = cohomology(&g, &LieModule::trivial(&g, 1), 2).unwrap().dims;
    assert_eq!(h, vec![1, 1, 0]);
}

#[test]
fn euler_characteristic_matches() {
    for (g, a) in pool() {
        let h = cohomology(&g, &a, g.dim()).unwrap();
        assert!(h.complete);
        assert_eq!(h.euler_cochains, h.euler_cohomology);
    }
}

#[test]
fn witt_cocycle_identity_window() {
    let w = WittWindow::new(8);
    let br = |a: &i64, b: &i64| match w.bracket(*a, *b).ok()? {
        WittBracket::InWindow { coeff, index } => Some(vec![(q(coeff), index)]),
        WittBracket::OutOfWindow => None,
    };
    let om = |x: &[i64]| witt_cocycle(x[0], x[1]);
    let mut checked = 0;
    for a in -8..=8 {
        for b in -8..=8 {
            for c in -8..=8 {
                if let Some(v) = coboundary_at(&[a, b, c], &om, &br) {
                    assert!(v.is_zero(), "({a},{b},{c})");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn homology_trivial_equals_cohomology() {
    let g = LieAlgebra::heisenberg();
    let t = LieModule::trivial(&g, 1);
    assert_eq!(homology_via_duality(&g, &t, 3).unwrap(), cohomology(&g, &t, 3).unwrap().dims);
}
