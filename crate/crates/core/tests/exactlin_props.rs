use hwb_core::exactlin::*;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            ExactMatrix::from_rows(c, v.chunks(c).map(|row| row.iter().map(|&x| q(x)).collect()).collect())
        })
    })
}

fn subspace(n: usize, max_k: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=max_k)
        .prop_map(move |rows| Subspace::span(n, &rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect::<Vec<_>>()))
}

// Plain rational Gaussian elimination, independent of the library.
fn naive_rank(m: &ExactMatrix) -> usize {
    let mut a = m.row_vecs();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #[test]
    fn rank_matches_naive_and_transpose(m in matrix(5, 5)) {
        let r = rank(&m);
        prop_assert_eq!(r, naive_rank(&m));
        prop_assert_eq!(r, rank(&m.transpose()));
        prop_assert_eq!(kernel(&m).dim() + r, m.cols());
        prop_assert_eq!(image(&m).dim(), r);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(4, 6)) {
        for v in kernel(&m).basis_vecs() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn dimension_formula(u in subspace(4, 3), v in subspace(4, 3)) {
        let s = subspace_sum(&u, &v).unwrap();
        let i = subspace_intersect(&u, &v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
    }

    #[test]
    fn canonical_form(u in subspace(4, 3), seed in proptest::collection::vec(-2i64..=2, 9)) {
        // Recombine the basis with an arbitrary invertible-or-not mix plus the original rows.
        let b = u.basis_vecs();
        let mut mixed = Vec::new();
        for (k, row) in b.iter().enumerate().rev() {
            let mut v = row.clone();
            for (j, other) in b.iter().enumerate() {
                if j != k {
                    let c = q(seed[(j + 3 * k) % 9]);
                    for (x, y) in v.iter_mut().zip(other) { *x += &c * y; }
                }
            }
            mixed.push(v);
        }
        mixed.extend(b.iter().cloned());
        prop_assert_eq!(Subspace::span(4, &mixed), u);
    }

    #[test]
    fn preimage_characterized(m in matrix(3, 4), v in subspace(3, 2)) {
        let m = if m.rows() == 3 { m } else { return Ok(()) };
        let p = preimage(&m, &v).unwrap();
        for x in p.basis_vecs() {
            prop_assert!(v.contains(&m.mul_vec(&x)));
        }
        // dim preimage = dim ker + dim(im ∩ v)
        let iv = subspace_intersect(&image(&m), &v).unwrap();
        prop_assert_eq!(p.dim(), kernel(&m).dim() + iv.dim());
    }

    #[test]
    fn quotient_coords_respect_classes(z in subspace(4, 3), pick in 0usize..3) {
        let zb = z.basis_vecs();
        let d = Subspace::span(4, &zb[..pick.min(zb.len())]);
        let quo = Quotient::new(&z, &d).unwrap();
        prop_assert_eq!(quo.dim(), quotient_dim(&z, &d).unwrap());
        for (k, rep) in quo.reps().iter().enumerate() {
            let mut x = rep.clone();
            for dv in d.basis_vecs() {
                for (a, b) in x.iter_mut().zip(dv) { *a += b; }
            }
            let c = quo.coords(&x).unwrap();
            for (j, cj) in c.iter().enumerate() {
                prop_assert_eq!(cj.clone(), if j == k { q(1) } else { q(0) });
            }
        }
    }
}
