//! Chevalley–Eilenberg cochains and Lie algebra cohomology.
//!
//! `C^n(g; A)` has basis pairs `(t, α)` with `t` an increasing index tuple of
//! length `n` and `α` a basis index of `A`; the coordinate is `t_idx*dim A + α`.

use num_traits::Zero;
use thiserror::Error;

use crate::combin::{increasing_tuples, index_map};
use crate::exactlin::{image, kernel, q, ExactMatrix, Quotient, Rational, Subspace};
use crate::structures::{LieAlgebra, LieModule, StructError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CeError {
    #[error("degree {n} exceeds dim g = {dim}")]
    DegreeTooLarge { n: usize, dim: usize },
    #[error("module is over a different Lie algebra")]
    AlgebraMismatch,
    #[error("cochain has length {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Structure(#[from] StructError),
}

/// Cochain complex `C^0 → C^1 → …` with `d[n]: C^n → C^{n+1}`.
///
/// Cohomology is reported for degrees `0..=exact_top`; the complex may carry
/// one extra degree so that `ker d_top` is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<ExactMatrix>,
    pub exact_top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<Vec<Rational>>>,
    pub euler_cochains: i64,
    pub euler_cohomology: i64,
    /// Whether every degree of the complex was included.
    pub complete: bool,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, d: Vec<ExactMatrix>) -> Self {
        assert!(!dims.is_empty());
        assert_eq!(d.len() + 1, dims.len(), "one differential per consecutive pair");
        for (n, m) in d.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (dims[n + 1], dims[n]), "shape of d_{n}");
        }
        let exact_top = dims.len() - 1;
        CochainComplex { dims, d, exact_top }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// First `n` with `d_{n+1} d_n ≠ 0`.
    pub fn check_d_squared(&self) -> Result<(), usize> {
        for n in 0..self.d.len().saturating_sub(1) {
            if !self.d[n + 1].mul(&self.d[n]).is_zero() {
                return Err(n);
            }
        }
        Ok(())
    }

    pub fn cocycles(&self, n: usize) -> Subspace {
        match self.d.get(n) {
            Some(m) => kernel(m),
            None => Subspace::full(self.dims[n]),
        }
    }

    pub fn coboundaries(&self, n: usize) -> Subspace {
        if n == 0 {
            Subspace::zero(self.dims[0])
        } else {
            image(&self.d[n - 1])
        }
    }

    pub fn cohomology(&self) -> CohomologyReport {
        let mut dims = Vec::new();
        let mut reps = Vec::new();
        for n in 0..=self.exact_top {
            let z = self.cocycles(n);
            let b = self.coboundaries(n);
            let quo = Quotient::new(&z, &b).expect("coboundaries are cocycles");
            dims.push(quo.dim());
            reps.push(quo.reps().to_vec());
        }
        let complete = self.exact_top == self.top();
        let alt = |v: &[usize]| v.iter().enumerate().map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        CohomologyReport {
            euler_cochains: alt(&self.dims[..=self.exact_top]),
            euler_cohomology: alt(&dims),
            dims,
            representatives: reps,
            complete,
        }
    }

    /// Subcomplex on subspaces `S_n` with `d(S_n) ⊆ S_{n+1}`, in their canonical bases.
    pub fn restrict(&self, subs: &[Subspace]) -> CochainComplex {
        assert_eq!(subs.len(), self.dims.len());
        let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
        let d = (0..self.d.len())
            .map(|n| {
                let mut m = ExactMatrix::zeros(dims[n + 1], dims[n]);
                for (col, v) in subs[n].basis_vecs().iter().enumerate() {
                    let img = self.d[n].mul_vec(v);
                    let c = subs[n + 1].coordinates(&img).expect("subcomplex is d-stable");
                    for (row, x) in c.into_iter().enumerate() {
                        m.set(row, col, x);
                    }
                }
                m
            })
            .collect();
        CochainComplex {
            dims,
            d,
            exact_top: self.exact_top,
        }
    }
}

/// CE complex with its exterior bases.
#[derive(Clone, Debug)]
pub struct CeComplex {
    pub complex: CochainComplex,
    pub tuples: Vec<Vec<Vec<usize>>>,
    pub dim_a: usize,
}

/// Matrix of `δ_n: C^n(g;A) → C^{n+1}(g;A)`.
pub fn coboundary_matrix(g: &LieAlgebra, a: &LieModule, n: usize) -> ExactMatrix {
    let dg = g.dim();
    let da = a.dim();
    let src = increasing_tuples(dg, n);
    let dst = increasing_tuples(dg, n + 1);
    let src_idx = index_map(&src);
    let mut m = ExactMatrix::zeros(dst.len() * da, src.len() * da);
    for (ui, u) in dst.iter().enumerate() {
        for t in 0..=n {
            let mut rest = u.clone();
            let x = rest.remove(t);
            let s = src_idx[&rest];
            let sign = if t % 2 == 0 { q(1) } else { q(-1) };
            let pi = a.action(x);
            for alpha in 0..da {
                for beta in 0..da {
                    let c = pi.get(alpha, beta);
                    if !c.is_zero() {
                        m.add_at(ui * da + alpha, s * da + beta, &(c * &sign));
                    }
                }
            }
        }
        for t in 0..=n {
            for v in t + 1..=n {
                let rest: Vec<usize> = u.iter().enumerate().filter(|(p, _)| *p != t && *p != v).map(|(_, &e)| e).collect();
                for (k, c) in g.bracket_basis(u[t], u[v]) {
                    if rest.contains(k) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&e| e < *k).count();
                    let mut s = rest.clone();
                    s.insert(pos, *k);
                    let sidx = src_idx[&s];
                    let sign = if (t + v + pos) % 2 == 0 { c.clone() } else { -c.clone() };
                    for alpha in 0..da {
                        m.add_at(ui * da + alpha, sidx * da + alpha, &sign);
                    }
                }
            }
        }
    }
    m
}

/// CE complex through degree `max_degree` (one extra degree when available).
pub fn ce_complex(g: &LieAlgebra, a: &LieModule, max_degree: usize) -> Result<CeComplex, CeError> {
    if a.algebra() != g {
        return Err(CeError::AlgebraMismatch);
    }
    if max_degree > g.dim() {
        return Err(CeError::DegreeTooLarge { n: max_degree, dim: g.dim() });
    }
    let top = (max_degree + 1).min(g.dim());
    let tuples: Vec<Vec<Vec<usize>>> = (0..=top).map(|n| increasing_tuples(g.dim(), n)).collect();
    let dims = tuples.iter().map(|t| t.len() * a.dim()).collect();
    let d = (0..top).map(|n| coboundary_matrix(g, a, n)).collect();
    let mut complex = CochainComplex::new(dims, d);
    complex.exact_top = max_degree;
    Ok(CeComplex {
        complex,
        tuples,
        dim_a: a.dim(),
    })
}

pub fn cohomology(g: &LieAlgebra, a: &LieModule, max_degree: usize) -> Result<CohomologyReport, CeError> {
    let c = ce_complex(g, a, max_degree)?;
    let report = c.complex.cohomology();
    for (n, reps) in report.representatives.iter().enumerate() {
        for r in reps {
            debug_assert!(c.verify_cocycle(n, r).unwrap().is_none());
        }
    }
    Ok(report)
}

impl CeComplex {
    /// `None` if `f` is a cocycle, else a violating `(tuple, coefficient index)`.
    pub fn verify_cocycle(&self, n: usize, f: &[Rational]) -> Result<Option<(Vec<usize>, usize)>, CeError> {
        let expected = self.complex.dims[n];
        if f.len() != expected {
            return Err(CeError::DegreeMismatch { expected, found: f.len() });
        }
        let Some(d) = self.complex.d.get(n) else {
            return Ok(None);
        };
        let img = d.mul_vec(f);
        Ok(img
            .iter()
            .position(|x| !x.is_zero())
            .map(|p| (self.tuples[n + 1][p / self.dim_a].clone(), p % self.dim_a)))
    }

    /// Cochain coordinates of `f` given on increasing tuples.
    pub fn cochain(&self, n: usize, f: impl Fn(&[usize]) -> Vec<Rational>) -> Vec<Rational> {
        self.tuples[n].iter().flat_map(|t| f(t)).collect()
    }
}

/// Cochains vanishing whenever one argument lies in `h`.
fn vanishing_on(g: &LieAlgebra, h: &Subspace, da: usize, n: usize) -> Subspace {
    let tuples = increasing_tuples(g.dim(), n);
    let dim = tuples.len() * da;
    if n == 0 || h.dim() == 0 {
        return Subspace::full(dim);
    }
    let idx = index_map(&tuples);
    let mut rows = Vec::new();
    for y in h.basis_vecs() {
        for w in increasing_tuples(g.dim(), n - 1) {
            for alpha in 0..da {
                // f(y, e_w) = Σ_i y_i f(e_i, e_w)
                let mut row = vec![Rational::zero(); dim];
                for (i, yi) in y.iter().enumerate() {
                    if yi.is_zero() || w.contains(&i) {
                        continue;
                    }
                    let pos = w.iter().filter(|&&e| e < i).count();
                    let mut s = w.clone();
                    s.insert(pos, i);
                    let c = if pos % 2 == 0 { yi.clone() } else { -yi.clone() };
                    row[idx[&s] * da + alpha] += c;
                }
                rows.push(row);
            }
        }
    }
    kernel(&ExactMatrix::from_rows(dim, rows))
}

/// Relative complex `C^q(g, h; A)`: cochains that vanish on `h` and whose
/// coboundary also vanishes on `h`.
pub fn relative_complex(g: &LieAlgebra, h: &Subspace, a: &LieModule) -> Result<CochainComplex, CeError> {
    g.is_subalgebra(h)?;
    let full = ce_complex(g, a, g.dim())?.complex;
    let u: Vec<Subspace> = (0..=g.dim()).map(|n| vanishing_on(g, h, a.dim(), n)).collect();
    let subs: Vec<Subspace> = (0..=g.dim())
        .map(|n| {
            if n == g.dim() {
                u[n].clone()
            } else {
                let pre = crate::exactlin::preimage(&full.d[n], &u[n + 1]).expect("shapes agree");
                crate::exactlin::subspace_intersect(&u[n], &pre).expect("shapes agree")
            }
        })
        .collect();
    Ok(full.restrict(&subs))
}

/// `H^•(g/h; Inv_h A)` for an ideal `h`, used as an independent check of the
/// relative complex.
pub fn quotient_invariant_cohomology(g: &LieAlgebra, h: &Subspace, a: &LieModule) -> Result<CohomologyReport, CeError> {
    let (gh, quo) = g.quotient(h)?;
    let (sub, emb) = g.subalgebra(h)?;
    let inv = a.restrict(&sub, &emb)?.invariant_space();
    let action = quo
        .reps()
        .iter()
        .map(|w| {
            let pw = a.act_vec(w);
            let mut m = ExactMatrix::zeros(inv.dim(), inv.dim());
            for (col, v) in inv.basis_vecs().iter().enumerate() {
                let c = inv.coordinates(&pw.mul_vec(v)).expect("ideal preserves invariants");
                for (row, x) in c.into_iter().enumerate() {
                    m.set(row, col, x);
                }
            }
            m
        })
        .collect();
    let module = LieModule::new(gh.clone(), action)?;
    cohomology(&gh, &module, gh.dim())
}

/// `H^0(g; A) = A^g`.
pub fn invariants(a: &LieModule) -> Subspace {
    a.invariant_space()
}

/// `dim H_n(g; A)` computed as `dim H^n(g; A*)`.
pub fn homology_via_duality(g: &LieAlgebra, a: &LieModule, max_degree: usize) -> Result<Vec<usize>, CeError> {
    Ok(cohomology(g, &a.dual(), max_degree)?.dims)
}

/// Coboundary of a trivial-coefficient cochain evaluated on explicit
/// arguments; `None` when a bracket cannot be evaluated.
pub fn coboundary_at<X: Clone>(
    args: &[X],
    f: &dyn Fn(&[X]) -> Rational,
    bracket: &dyn Fn(&X, &X) -> Option<Vec<(Rational, X)>>,
) -> Option<Rational> {
    let mut acc = Rational::zero();
    for t in 0..args.len() {
        for v in t + 1..args.len() {
            let rest: Vec<X> = args
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != t && *p != v)
                .map(|(_, x)| x.clone())
                .collect();
            for (c, x) in bracket(&args[t], &args[v])? {
                let mut full = vec![x];
                full.extend(rest.iter().cloned());
                let val = f(&full) * c;
                if (t + v) % 2 == 0 {
                    acc += val;
                } else {
                    acc -= val;
                }
            }
        }
    }
    Some(acc)
}
