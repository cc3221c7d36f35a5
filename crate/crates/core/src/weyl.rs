//! Weyl DG-algebra `W(h) = Λh* ⊗ S^{≤D}h*`, its standard filtration, the
//! relative subalgebra `W(g, h)` and truncations `W / F^{2n+1}`.
//!
//! `θ^a` (degree 1) and `s^a` (degree 2) are the exterior and symmetric
//! generators. `d_1` is the CE differential with coefficients in `S^j h*`
//! (coadjoint), `d_2 θ^a = s^a`, `d_2 s^a = 0`. Components with symmetric
//! degree above `D` are dropped, so the complex is `W / F^{2D+2}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ce::{coboundary_matrix, cohomology, relative_complex, CeError, CochainComplex};
use crate::combin::{binomial, increasing_tuples, index_map, multisets, sort_sign};
use crate::exactlin::{preimage, q, subspace_intersect, ExactMatrix, LinError, Quotient, Rational, Subspace};
use crate::spectral::{abutment, page, FilteredComplex, SpectralError};
use crate::structures::{LieAlgebra, LieModule, StructError};

pub const WEYL_MAX_DIM: usize = 4;
pub const WEYL_MAX_D: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("relative subspace is not d-stable in degree {0}")]
    NotStable(usize),
    #[error(transparent)]
    Structure(#[from] StructError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// Block `Λ^i ⊗ S^j` inside a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub i: usize,
    pub j: usize,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct WeylAlgebra {
    pub h: LieAlgebra,
    pub cap: usize,
    pub blocks: Vec<Vec<Block>>,
    pub dims: Vec<usize>,
    pub d1: Vec<ExactMatrix>,
    pub d2: Vec<ExactMatrix>,
    ext: Vec<Vec<Vec<usize>>>,
    sym: Vec<Vec<Vec<usize>>>,
}

impl WeylAlgebra {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    fn sym_dim(&self, j: usize) -> usize {
        self.sym[j].len()
    }

    fn block_at(&self, n: usize, i: usize, j: usize) -> Option<&Block> {
        self.blocks.get(n)?.iter().find(|b| b.i == i && b.j == j)
    }

    /// Coordinate of `θ^t ⊗ s^m` in its total degree.
    pub fn index(&self, t: &[usize], m: &[usize]) -> Option<(usize, usize)> {
        let (i, j) = (t.len(), m.len());
        let n = i + 2 * j;
        let b = self.block_at(n, i, j)?;
        let ti = self.ext[i].iter().position(|x| x == t)?;
        let mi = self.sym[j].iter().position(|x| x == m)?;
        Some((n, b.offset + ti * self.sym_dim(j) + mi))
    }

    /// Basis element `(θ-tuple, s-monomial)` at a coordinate.
    pub fn basis_element(&self, n: usize, k: usize) -> (Vec<usize>, Vec<usize>) {
        let b = self.blocks[n].iter().rev().find(|b| b.offset <= k).expect("coordinate in range");
        let local = k - b.offset;
        let sd = self.sym_dim(b.j);
        (self.ext[b.i][local / sd].clone(), self.sym[b.j][local % sd].clone())
    }

    pub fn d(&self, n: usize) -> ExactMatrix {
        self.d1[n].add(&self.d2[n])
    }

    pub fn complex(&self) -> CochainComplex {
        CochainComplex::new(self.dims.clone(), (0..self.top()).map(|n| self.d(n)).collect())
    }

    /// `F^p = ⊕_{2j ≥ p}` as a filtered complex.
    pub fn filtered(&self) -> FilteredComplex {
        let filt = (0..=self.top())
            .map(|n| {
                (0..=2 * self.cap + 1)
                    .map(|p| {
                        let idx: Vec<usize> = self.blocks[n]
                            .iter()
                            .filter(|b| 2 * b.j >= p)
                            .flat_map(|b| b.offset..b.offset + binomial(self.h.dim(), b.i) * self.sym_dim(b.j))
                            .collect();
                        Subspace::coordinate(self.dims[n], &idx)
                    })
                    .collect()
            })
            .collect();
        FilteredComplex::new(self.complex(), filt).expect("standard filtration is d-stable")
    }

    /// Product of elements of degrees `n1`, `n2`; symmetric degree above the cap is dropped.
    pub fn mul(&self, n1: usize, x: &[Rational], n2: usize, y: &[Rational]) -> Vec<Rational> {
        let n = n1 + n2;
        let mut out = vec![Rational::default(); self.dims.get(n).copied().unwrap_or(0)];
        if out.is_empty() {
            return out;
        }
        for (a, ca) in x.iter().enumerate() {
            if ca == &Rational::default() {
                continue;
            }
            let (t1, m1) = self.basis_element(n1, a);
            for (b, cb) in y.iter().enumerate() {
                if cb == &Rational::default() {
                    continue;
                }
                let (t2, m2) = self.basis_element(n2, b);
                let mut t = t1.clone();
                t.extend(&t2);
                let Some((ts, sign)) = sort_sign(&t) else { continue };
                let mut m = m1.clone();
                m.extend(&m2);
                m.sort_unstable();
                if let Some((_, k)) = self.index(&ts, &m) {
                    out[k] += ca * cb * q(sign);
                }
            }
        }
        out
    }

    /// `d(xy) = (dx)y + (−1)^{|x|} x(dy)` on basis pairs whose product stays
    /// below the cap after one application of `d`. Returns the first failure.
    pub fn check_leibniz(&self, max_degree: usize) -> Result<usize, (usize, usize, usize, usize)> {
        let mut checked = 0;
        for n1 in 0..=max_degree {
            for n2 in 0..=max_degree - n1 {
                let n = n1 + n2;
                if n >= self.top() {
                    continue;
                }
                for a in 0..self.dims[n1] {
                    for b in 0..self.dims[n2] {
                        let (_, m1) = self.basis_element(n1, a);
                        let (_, m2) = self.basis_element(n2, b);
                        if m1.len() + m2.len() + 1 > self.cap {
                            continue;
                        }
                        let ea = unit(self.dims[n1], a);
                        let eb = unit(self.dims[n2], b);
                        let lhs = self.d(n).mul_vec(&self.mul(n1, &ea, n2, &eb));
                        let mut rhs = self.mul(n1 + 1, &self.d(n1).mul_vec(&ea), n2, &eb);
                        let s = if n1 % 2 == 0 { q(1) } else { q(-1) };
                        let right = self.mul(n1, &ea, n2 + 1, &self.d(n2).mul_vec(&eb));
                        for (r, v) in rhs.iter_mut().zip(right) {
                            *r += v * &s;
                        }
                        if lhs != rhs {
                            return Err((n1, a, n2, b));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(checked)
    }

    /// `d_1² = 0`, `d_2² = 0`, `d_1d_2 + d_2d_1 = 0` in every degree; first failing degree.
    pub fn check_differentials(&self) -> Result<(), usize> {
        for n in 0..self.top().saturating_sub(1) {
            let ok = self.d1[n + 1].mul(&self.d1[n]).is_zero()
                && self.d2[n + 1].mul(&self.d2[n]).is_zero()
                && self.d1[n + 1].mul(&self.d2[n]).add(&self.d2[n + 1].mul(&self.d1[n])).is_zero();
            if !ok {
                return Err(n);
            }
        }
        Ok(())
    }

    /// Matrix of `d_2: Λ^1 → S^1`.
    pub fn d2_on_generators(&self) -> ExactMatrix {
        let m = self.h.dim();
        let mut out = ExactMatrix::zeros(m, m);
        for a in 0..m {
            let (_, k) = self.index(&[a], &[]).expect("degree 1");
            let img = self.d2[1].column(k);
            for b in 0..m {
                let (_, kb) = self.index(&[], &[b]).expect("degree 2");
                out.set(b, a, img[kb].clone());
            }
        }
        out
    }
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::default(); n];
    v[k] = q(1);
    v
}

fn coadjoint_powers(h: &LieAlgebra, cap: usize) -> Vec<LieModule> {
    let coad = LieModule::adjoint(h).dual();
    (0..=cap).map(|j| coad.symmetric_power(j)).collect()
}

pub fn weyl(h: &LieAlgebra, cap: usize) -> Result<WeylAlgebra, WeylError> {
    if h.dim() > WEYL_MAX_DIM || cap > WEYL_MAX_D {
        return Err(WeylError::Cap(format!("dim h = {}, D = {cap}", h.dim())));
    }
    h.validate()?;
    let m = h.dim();
    let ext: Vec<Vec<Vec<usize>>> = (0..=m).map(|i| increasing_tuples(m, i)).collect();
    let sym: Vec<Vec<Vec<usize>>> = (0..=cap).map(|j| multisets(m, j)).collect();
    let top = m + 2 * cap;
    let mut blocks = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=top {
        let mut off = 0;
        let mut bs = Vec::new();
        for j in 0..=cap.min(n / 2) {
            let i = n - 2 * j;
            if i <= m {
                bs.push(Block { i, j, offset: off });
                off += ext[i].len() * sym[j].len();
            }
        }
        blocks.push(bs);
        dims.push(off);
    }
    let mods = coadjoint_powers(h, cap);
    let ce: Vec<Vec<ExactMatrix>> = mods.iter().map(|md| (0..m).map(|i| coboundary_matrix(h, md, i)).collect()).collect();
    let ext_idx: Vec<_> = ext.iter().map(|e| index_map(e)).collect();
    let sym_idx: Vec<_> = sym.iter().map(|s| index_map(s)).collect();
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for n in 0..top {
        let mut a = ExactMatrix::zeros(dims[n + 1], dims[n]);
        let mut b = ExactMatrix::zeros(dims[n + 1], dims[n]);
        for blk in &blocks[n] {
            let sd = sym[blk.j].len();
            if blk.i < m {
                let tgt = blocks[n + 1].iter().find(|x| x.i == blk.i + 1 && x.j == blk.j).expect("d_1 target");
                let c = &ce[blk.j][blk.i];
                for r in 0..c.rows() {
                    for col in 0..c.cols() {
                        let v = c.get(r, col);
                        if v != &Rational::default() {
                            a.set(tgt.offset + r, blk.offset + col, v.clone());
                        }
                    }
                }
            }
            if blk.i > 0 && blk.j < cap {
                let tgt = blocks[n + 1].iter().find(|x| x.i == blk.i - 1 && x.j == blk.j + 1).expect("d_2 target");
                let sd1 = sym[blk.j + 1].len();
                for (ti, t) in ext[blk.i].iter().enumerate() {
                    for (mi, mono) in sym[blk.j].iter().enumerate() {
                        for k in 0..blk.i {
                            let mut rest = t.clone();
                            let a_k = rest.remove(k);
                            let mut mm = mono.clone();
                            mm.push(a_k);
                            mm.sort_unstable();
                            let row = tgt.offset + ext_idx[blk.i - 1][&rest] * sd1 + sym_idx[blk.j + 1][&mm];
                            let s = if k % 2 == 0 { q(1) } else { q(-1) };
                            b.add_at(row, blk.offset + ti * sd + mi, &s);
                        }
                    }
                }
            }
        }
        d1.push(a);
        d2.push(b);
    }
    Ok(WeylAlgebra { h: h.clone(), cap, blocks, dims, d1, d2, ext, sym })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    /// `dim H^k` for `k = 0..=window`.
    pub dims: Vec<usize>,
    pub window: usize,
}

impl AcyclicityReport {
    pub fn acyclic(&self) -> bool {
        self.dims.first() == Some(&1) && self.dims.iter().skip(1).all(|&d| d == 0)
    }
}

/// Cohomology in the truncation-safe window `k ≤ D`.
pub fn acyclicity(w: &WeylAlgebra) -> AcyclicityReport {
    let h = w.complex().cohomology().dims;
    let window = w.cap.min(w.top());
    AcyclicityReport { dims: h[..=window].to_vec(), window }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageCheck {
    /// `(p, q) → (spectral E_1, direct)`; odd `p` compares against zero.
    pub e1: BTreeMap<(i64, i64), (usize, usize)>,
    pub e2_equals_e1: bool,
}

impl PageCheck {
    pub fn agree(&self) -> bool {
        self.e2_equals_e1 && self.e1.values().all(|(a, b)| a == b)
    }
}

fn compare_pages(fc: &FilteredComplex, cap: usize, qmax: usize, direct: &dyn Fn(usize, usize) -> Result<usize, WeylError>) -> Result<PageCheck, WeylError> {
    let e1 = page(fc, 1)?;
    let e2 = page(fc, 2)?;
    let mut out = BTreeMap::new();
    for p in 0..=2 * cap + 1 {
        for qq in 0..=qmax {
            let d = if p % 2 == 1 { 0 } else { direct(p / 2, qq)? };
            out.insert((p as i64, qq as i64), (e1.dim(p as i64, qq as i64), d));
        }
    }
    Ok(PageCheck { e1: out, e2_equals_e1: e1.dims() == e2.dims() })
}

/// `E_1^{p,q} = H^q(h; S^{p/2} h*)` for even `p`, zero for odd `p`.
pub fn weyl_page_check(w: &WeylAlgebra) -> Result<PageCheck, WeylError> {
    let mods = coadjoint_powers(&w.h, w.cap);
    let m = w.h.dim();
    let hs: Vec<Vec<usize>> = mods.iter().map(|md| cohomology(&w.h, md, m).map(|r| r.dims)).collect::<Result<_, _>>()?;
    compare_pages(&w.filtered(), w.cap, m, &|j, qq| Ok(hs[j][qq]))
}

#[derive(Clone, Debug)]
pub struct RelativeWeyl {
    /// Weyl algebra of `g` in a basis whose first `dim h` vectors span `h`.
    pub ambient: WeylAlgebra,
    pub h_dim: usize,
    pub subspaces: Vec<Subspace>,
    pub complex: CochainComplex,
    pub filtered: FilteredComplex,
    pub cohomology: Vec<usize>,
}

/// Cochains with no `θ` along `h` whose `d_1` also has none (equivalently,
/// `h`-basic elements), as a subcomplex of `W(g)`.
pub fn relative_weyl(g: &LieAlgebra, h: &Subspace, cap: usize) -> Result<RelativeWeyl, WeylError> {
    g.is_subalgebra(h)?;
    let dg = g.dim();
    let dh = h.dim();
    let comp = Quotient::new(&Subspace::full(dg), h)?;
    let mut rows = h.basis_vecs();
    rows.extend(comp.reps().iter().cloned());
    let basis = ExactMatrix::from_rows(dg, rows);
    let names = (0..dg).map(|i| if i < dh { format!("h{}", i + 1) } else { format!("c{}", i - dh + 1) }).collect();
    let ga = g.rebase(&basis, names)?;
    let w = weyl(&ga, cap)?;
    let u: Vec<Subspace> = (0..=w.top())
        .map(|n| {
            let idx: Vec<usize> = (0..w.dims[n]).filter(|&k| w.basis_element(n, k).0.iter().all(|&a| a >= dh)).collect();
            Subspace::coordinate(w.dims[n], &idx)
        })
        .collect();
    let subs: Vec<Subspace> = (0..=w.top())
        .map(|n| {
            if n == w.top() {
                Ok(u[n].clone())
            } else {
                Ok(subspace_intersect(&u[n], &preimage(&w.d1[n], &u[n + 1])?)?)
            }
        })
        .collect::<Result<_, WeylError>>()?;
    for n in 0..w.top() {
        if !subs[n + 1].contains_subspace(&subs[n].map(&w.d(n))?) {
            return Err(WeylError::NotStable(n));
        }
    }
    let full = w.complex();
    let complex = full.restrict(&subs);
    let wf = w.filtered();
    let filt = (0..=w.top())
        .map(|n| {
            (0..=2 * cap + 1)
                .map(|p| {
                    let inter = subspace_intersect(&wf.f(n, p as i64), &subs[n]).expect("shapes agree");
                    let coords: Vec<Vec<Rational>> = inter.basis_vecs().iter().map(|v| subs[n].coordinates(v).expect("inside")).collect();
                    Subspace::span(subs[n].dim(), &coords)
                })
                .collect()
        })
        .collect();
    let filtered = FilteredComplex::new(complex.clone(), filt)?;
    let cohomology = filtered.cohomology_dims();
    Ok(RelativeWeyl { ambient: w, h_dim: dh, subspaces: subs, complex, filtered, cohomology })
}

/// Relative page formula `E_1^{p,q} = H^q(g, h; S^{p/2} g*)`.
pub fn relative_page_check(r: &RelativeWeyl) -> Result<PageCheck, WeylError> {
    let g = &r.ambient.h;
    let h = Subspace::coordinate(g.dim(), &(0..r.h_dim).collect::<Vec<_>>());
    let mods = coadjoint_powers(g, r.ambient.cap);
    let hs: Vec<Vec<usize>> = mods
        .iter()
        .map(|md| relative_complex(g, &h, md).map(|c| c.cohomology().dims))
        .collect::<Result<_, _>>()?;
    compare_pages(&r.filtered, r.ambient.cap, g.dim(), &|j, qq| Ok(hs[j].get(qq).copied().unwrap_or(0)))
}

/// `W̃ = W(h) / F^{2n+1}`: symmetric degree at most `n`.
#[derive(Clone, Debug)]
pub struct TruncatedWeyl {
    pub algebra: WeylAlgebra,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub d_squared_zero: bool,
}

pub fn truncated_weyl(h: &LieAlgebra, n: usize) -> Result<TruncatedWeyl, WeylError> {
    let w = weyl(h, n)?;
    let c = w.complex();
    Ok(TruncatedWeyl {
        dims: w.dims.clone(),
        cohomology: c.cohomology().dims,
        d_squared_zero: c.check_d_squared().is_ok(),
        algebra: w,
    })
}

/// The span of `∂, x∂, x²∂`, which carries every weight-zero cochain of
/// formal vector fields on the line.
pub fn w1_weight_zero_model() -> LieAlgebra {
    LieAlgebra::from_fn(vec!["d".into(), "xd".into(), "x2d".into()], |a, b| {
        // [x^a∂, x^b∂] = (b − a) x^{a+b−1}∂.
        let mut v = vec![Rational::default(); 3];
        let k = a + b;
        if k >= 1 && k - 1 <= 2 {
            v[k - 1] = q(b as i64 - a as i64);
        }
        v
    })
    .expect("sl2 in disguise")
}

/// Number of weight-zero `q`-cochains of `W_1 ⋉ Ḡ⊗k[[x]]` vanishing on `x∂`,
/// for `Ḡ` abelian of dimension `gbar`.
pub fn w1_semidirect_relative_cochain_dims(gbar: usize, max_degree: usize) -> Vec<usize> {
    // Weights: x^{k+1}∂ has weight k (k ≥ −1, k ≠ 0 after removing x∂); g⊗x^k has weight k.
    let bound = max_degree as i64 + 1;
    let mut weights = vec![-1i64];
    for k in 1..=bound {
        weights.push(k);
    }
    for k in 0..=bound {
        for _ in 0..gbar {
            weights.push(k);
        }
    }
    (0..=max_degree)
        .map(|qq| increasing_tuples(weights.len(), qq).iter().filter(|t| t.iter().map(|&i| weights[i]).sum::<i64>() == 0).count())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Comparison {
    /// Per degree: `(relative truncated Weyl, weight-zero relative cochains)`.
    pub dims: Vec<(usize, usize)>,
}

impl W1Comparison {
    pub fn agree(&self) -> bool {
        self.dims.iter().all(|(a, b)| a == b)
    }
}

/// `W(gl_1 ⊕ Ḡ, gl_1) / F^3` against relative cochains of `W_1 ⋉ Ḡ⊗k[[x]]`, `Ḡ` abelian.
pub fn w1_comparison(gbar: usize, max_degree: usize) -> Result<W1Comparison, WeylError> {
    let g = LieAlgebra::abelian(1 + gbar);
    let r = relative_weyl(&g, &Subspace::coordinate(1 + gbar, &[0]), 1)?;
    let model = w1_semidirect_relative_cochain_dims(gbar, max_degree);
    Ok(W1Comparison {
        dims: (0..=max_degree).map(|n| (r.complex.dims.get(n).copied().unwrap_or(0), model[n])).collect(),
    })
}

/// Abutment of the standard filtration.
pub fn weyl_abutment(w: &WeylAlgebra) -> Result<crate::spectral::AbutmentReport, WeylError> {
    Ok(abutment(&w.filtered())?)
}
