//! Spectral sequences of filtered cochain complexes, computed page by page
//! from the `Z_r`/`B_r` subspace formulas.
//!
//! Cells are indexed `(p, q)` with `p` the filtration degree and `p + q` the
//! total degree.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ce::{ce_complex, CeError, CochainComplex};
use crate::combin::{index_map, sort_sign};
use crate::exactlin::{
    image, kernel, preimage, q, rank, subspace_intersect, subspace_sum, ExactMatrix, LinError, Quotient, Rational, Subspace,
};
use crate::structures::{LieAlgebra, LieModule, StructError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("filtration of degree {n} is not decreasing at p = {p}")]
    NotDecreasing { n: usize, p: usize },
    #[error("d does not preserve F_{p} in degree {n}")]
    NotStable { n: usize, p: usize },
    #[error("filtration of degree {0} is not exhaustive (F_0 ≠ C)")]
    NotExhaustive(usize),
    #[error("filtration of degree {0} is not regular (no F_p = 0)")]
    NotRegular(usize),
    #[error("filtration has {found} degrees, complex has {expected}")]
    Shape { expected: usize, found: usize },
    #[error("double complex: {0}")]
    Double(String),
    #[error("action does not commute with d_{n} for basis element {x}")]
    NotCommuting { x: usize, n: usize },
    #[error("dimension {dim} exceeds cap {cap}")]
    DimsExceeded { dim: usize, cap: usize },
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Structure(#[from] StructError),
}

/// Decreasing filtration `C^n = F_0 ⊇ F_1 ⊇ … ⊇ F_{L_n} = 0` compatible with `d`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub complex: CochainComplex,
    filt: Vec<Vec<Subspace>>,
}

impl FilteredComplex {
    /// `filt[n]` lists `F_0 C^n, F_1 C^n, …`, ending with the zero subspace.
    pub fn new(complex: CochainComplex, filt: Vec<Vec<Subspace>>) -> Result<Self, SpectralError> {
        if filt.len() != complex.dims.len() {
            return Err(SpectralError::Shape { expected: complex.dims.len(), found: filt.len() });
        }
        for (n, fs) in filt.iter().enumerate() {
            if fs.first().is_none_or(|f| f.dim() != complex.dims[n]) {
                return Err(SpectralError::NotExhaustive(n));
            }
            if fs.last().is_none_or(|f| f.dim() != 0) {
                return Err(SpectralError::NotRegular(n));
            }
            for p in 1..fs.len() {
                if !fs[p - 1].contains_subspace(&fs[p]) {
                    return Err(SpectralError::NotDecreasing { n, p });
                }
            }
        }
        let fc = FilteredComplex { complex, filt };
        for n in 0..fc.complex.d.len() {
            for p in 0..fc.filt[n].len() {
                let img = fc.filt[n][p].map(&fc.complex.d[n])?;
                if !fc.f(n + 1, p as i64).contains_subspace(&img) {
                    return Err(SpectralError::NotStable { n, p });
                }
            }
        }
        Ok(fc)
    }

    /// `F_0 = C`, `F_1 = 0` in every degree.
    pub fn trivial(complex: CochainComplex) -> Self {
        let filt = complex.dims.iter().map(|&d| vec![Subspace::full(d), Subspace::zero(d)]).collect();
        FilteredComplex { complex, filt }
    }

    pub fn top(&self) -> usize {
        self.complex.dims.len() - 1
    }

    /// `L_n`: first index with `F_{L_n} C^n = 0`.
    pub fn length(&self, n: usize) -> usize {
        self.filt[n].len() - 1
    }

    pub fn f(&self, n: usize, p: i64) -> Subspace {
        let fs = &self.filt[n];
        if p <= 0 {
            fs[0].clone()
        } else if p as usize >= fs.len() {
            Subspace::zero(self.complex.dims[n])
        } else {
            fs[p as usize].clone()
        }
    }

    fn d(&self, n: usize) -> Option<&ExactMatrix> {
        self.complex.d.get(n)
    }

    /// `Z_r^{p} = F_p C^n ∩ d^{-1}(F_{p+r} C^{n+1})`.
    pub fn z(&self, r: i64, p: i64, n: usize) -> Subspace {
        let fp = self.f(n, p);
        match self.d(n) {
            None => fp,
            Some(d) => {
                let pre = preimage(d, &self.f(n + 1, p + r)).expect("shapes agree");
                subspace_intersect(&fp, &pre).expect("shapes agree")
            }
        }
    }

    /// `B_r^{p} = d Z_r^{p−r}` inside `C^n`.
    pub fn b(&self, r: i64, p: i64, n: usize) -> Subspace {
        if n == 0 {
            return Subspace::zero(self.complex.dims[0]);
        }
        self.z(r, p - r, n - 1).map(&self.complex.d[n - 1]).expect("shapes agree")
    }

    /// `dim H^n` of the underlying complex, with `d_top = 0`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..=self.top())
            .map(|n| {
                let z = self.d(n).map_or(self.complex.dims[n], |d| kernel(d).dim());
                let b = if n == 0 { 0 } else { rank(&self.complex.d[n - 1]) };
                z - b
            })
            .collect()
    }

    fn max_length(&self) -> usize {
        (0..=self.top()).map(|n| self.length(n)).max().unwrap_or(0)
    }

    /// Page index after which every `d_r` vanishes.
    pub fn stable_page(&self) -> i64 {
        self.max_length() as i64 + 1
    }
}

#[derive(Clone, Debug)]
pub struct PageCell {
    pub dim: usize,
    pub numerator: Subspace,
    pub denominator: Subspace,
    pub quotient: Quotient,
}

#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: i64,
    pub cells: BTreeMap<(i64, i64), PageCell>,
    /// `d_r^{p,q}: E_r^{p,q} → E_r^{p+r,q−r+1}`.
    pub differentials: BTreeMap<(i64, i64), ExactMatrix>,
}

impl SpectralPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, |c| c.dim)
    }

    /// Nonzero cells.
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.cells.iter().filter(|(_, c)| c.dim > 0).map(|(k, c)| (*k, c.dim)).collect()
    }

    /// `d_r ∘ d_r = 0`; returns the first failing source cell.
    pub fn check_d_squared(&self) -> Result<(), (i64, i64)> {
        for (&(p, qq), d1) in &self.differentials {
            if let Some(d2) = self.differentials.get(&(p + self.r, qq - self.r + 1)) {
                if d1.rows() > 0 && !d2.mul(d1).is_zero() {
                    return Err((p, qq));
                }
            }
        }
        Ok(())
    }
}

fn cell(fc: &FilteredComplex, r: i64, p: i64, n: usize) -> Result<PageCell, SpectralError> {
    let numerator = fc.z(r, p, n);
    let denominator = subspace_sum(&fc.b(r - 1, p, n), &fc.z(r - 1, p + 1, n))?;
    let quotient = Quotient::new(&numerator, &denominator)?;
    Ok(PageCell { dim: quotient.dim(), numerator, denominator, quotient })
}

/// `E_r` for `r ≥ 0` with its differentials.
pub fn page(fc: &FilteredComplex, r: i64) -> Result<SpectralPage, SpectralError> {
    let mut cells = BTreeMap::new();
    for n in 0..=fc.top() {
        for p in 0..fc.length(n) as i64 {
            cells.insert((p, n as i64 - p), cell(fc, r, p, n)?);
        }
    }
    let mut differentials = BTreeMap::new();
    for (&(p, qq), c) in &cells {
        let n = (p + qq) as usize;
        let target = cells.get(&(p + r, qq - r + 1));
        let rows = target.map_or(0, |t| t.dim);
        let mut m = ExactMatrix::zeros(rows, c.dim);
        if let (Some(t), Some(d)) = (target, fc.d(n)) {
            for (col, v) in c.quotient.reps().iter().enumerate() {
                let coords = t.quotient.coords(&d.mul_vec(v)).ok_or(LinError::NotContained)?;
                for (row, x) in coords.into_iter().enumerate() {
                    m.set(row, col, x);
                }
            }
        }
        differentials.insert((p, qq), m);
    }
    Ok(SpectralPage { r, cells, differentials })
}

/// `d` maps the denominator of each cell into the denominator of its target,
/// so `d_r` does not depend on the chosen lifts.
pub fn check_well_defined(fc: &FilteredComplex, pg: &SpectralPage) -> Result<(), (i64, i64)> {
    for (&(p, qq), c) in &pg.cells {
        let n = (p + qq) as usize;
        let Some(d) = fc.d(n) else { continue };
        let img = c.denominator.map(d).expect("shapes agree");
        let target = match pg.cells.get(&(p + pg.r, qq - pg.r + 1)) {
            Some(t) => t.denominator.clone(),
            None => {
                // Outside the stored range the target cell is zero: image must lie in Z_{r-1}^{p+r+1}.
                let nz = fc.z(pg.r - 1, p + pg.r + 1, n + 1);
                subspace_sum(&nz, &fc.b(pg.r - 1, p + pg.r, n + 1)).expect("shapes agree")
            }
        };
        let numerator_image = c.numerator.map(d).expect("shapes agree");
        let tnum = fc.z(pg.r, p + pg.r, n + 1);
        if !target.contains_subspace(&img) || !tnum.contains_subspace(&numerator_image) {
            return Err((p, qq));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionReport {
    pub cells_checked: usize,
    /// `(r, p, q)` where `ker d_r / im d_r ≄ E_{r+1}`.
    pub failures: Vec<(i64, i64, i64)>,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `H(E_r, d_r) ≅ E_{r+1}` cellwise for `r < r_max`, realizing the
/// isomorphism on representatives: the classes of `E_{r+1}` representatives
/// lie in `ker d_r` and form a basis of `ker d_r / im d_r`.
pub fn check_page_recursion(fc: &FilteredComplex, r_max: i64) -> Result<RecursionReport, SpectralError> {
    let mut report = RecursionReport::default();
    let mut cur = page(fc, 0)?;
    for r in 0..r_max {
        let next = page(fc, r + 1)?;
        for (&(p, qq), c) in &cur.cells {
            report.cells_checked += 1;
            let out = &cur.differentials[&(p, qq)];
            let ker = kernel(out);
            let im = match cur.differentials.get(&(p - r, qq + r - 1)) {
                Some(m) => image(m),
                None => Subspace::zero(c.dim),
            };
            let ok = match next.cells.get(&(p, qq)) {
                None => ker.dim() == im.dim(),
                Some(nc) => {
                    let mut classes = Vec::new();
                    let mut inside = true;
                    for v in nc.quotient.reps() {
                        match c.quotient.coords(v) {
                            Some(x) if ker.contains(&x) => classes.push(x),
                            _ => inside = false,
                        }
                    }
                    let span = Subspace::span(c.dim, &classes);
                    let total = subspace_sum(&span, &im)?;
                    inside && span.dim() == classes.len() && total.dim() == im.dim() + classes.len() && total.dim() == ker.dim()
                }
            };
            if !ok {
                report.failures.push((r, p, qq));
            }
        }
        cur = next;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbutmentReport {
    pub r_infinity: i64,
    /// `Σ_p dim E_∞^{p,n−p}` per total degree.
    pub e_infinity: Vec<usize>,
    pub cohomology: Vec<usize>,
}

impl AbutmentReport {
    pub fn holds(&self) -> bool {
        self.e_infinity == self.cohomology
    }
}

pub fn abutment(fc: &FilteredComplex) -> Result<AbutmentReport, SpectralError> {
    let r = fc.stable_page();
    let pg = page(fc, r)?;
    let mut e = vec![0; fc.top() + 1];
    for (&(p, qq), c) in &pg.cells {
        e[(p + qq) as usize] += c.dim;
    }
    Ok(AbutmentReport { r_infinity: r, e_infinity: e, cohomology: fc.cohomology_dims() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Row(i64),
    Column(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Collapse {
    /// `H^n ≅` the single row or column cell in every degree.
    Holds,
    HypothesisNotMet,
    /// Dimension mismatch in total degree `n`.
    Fails(usize),
}

pub fn collapse_check(fc: &FilteredComplex, r: i64, axis: Axis) -> Result<Collapse, SpectralError> {
    let pg = page(fc, r)?;
    let off_axis = pg.dims().keys().any(|&(p, qq)| match axis {
        Axis::Row(q0) => qq != q0,
        Axis::Column(p0) => p != p0,
    });
    if off_axis {
        return Ok(Collapse::HypothesisNotMet);
    }
    for (n, h) in fc.cohomology_dims().into_iter().enumerate() {
        let e = match axis {
            Axis::Row(q0) => pg.dim(n as i64 - q0, q0),
            Axis::Column(p0) => pg.dim(p0, n as i64 - p0),
        };
        if e != h {
            return Ok(Collapse::Fails(n));
        }
    }
    Ok(Collapse::Holds)
}

/// Double complex on a finite grid `C^{p,q}`, `0 ≤ p < P`, `0 ≤ q < Q`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub dims: Vec<Vec<usize>>,
    /// `h[p][q]: C^{p,q} → C^{p+1,q}` (zero rows past the grid).
    pub h: Vec<Vec<ExactMatrix>>,
    /// `v[p][q]: C^{p,q} → C^{p,q+1}`.
    pub v: Vec<Vec<ExactMatrix>>,
}

impl DoubleComplex {
    pub fn new(dims: Vec<Vec<usize>>, h: Vec<Vec<ExactMatrix>>, v: Vec<Vec<ExactMatrix>>) -> Result<Self, SpectralError> {
        let dc = DoubleComplex { dims, h, v };
        let (pn, qn) = dc.grid();
        let err = |s: String| Err(SpectralError::Double(s));
        if dc.dims.iter().any(|r| r.len() != qn) || dc.h.len() != pn || dc.v.len() != pn {
            return err("ragged grid".into());
        }
        for p in 0..pn {
            for qq in 0..qn {
                let src = dc.dims[p][qq];
                let (hm, vm) = (&dc.h[p][qq], &dc.v[p][qq]);
                if (hm.rows(), hm.cols()) != (dc.dim(p + 1, qq), src) || (vm.rows(), vm.cols()) != (dc.dim(p, qq + 1), src) {
                    return err(format!("shape at ({p},{qq})"));
                }
            }
        }
        for p in 0..pn {
            for qq in 0..qn {
                if p + 1 < pn && !dc.h[p + 1][qq].mul(&dc.h[p][qq]).is_zero() {
                    return err(format!("∂∂ ≠ 0 at ({p},{qq})"));
                }
                if qq + 1 < qn && !dc.v[p][qq + 1].mul(&dc.v[p][qq]).is_zero() {
                    return err(format!("∂̄∂̄ ≠ 0 at ({p},{qq})"));
                }
                if p + 1 < pn && qq + 1 < qn {
                    let s = dc.v[p + 1][qq].mul(&dc.h[p][qq]).add(&dc.h[p][qq + 1].mul(&dc.v[p][qq]));
                    if !s.is_zero() {
                        return err(format!("∂∂̄ + ∂̄∂ ≠ 0 at ({p},{qq})"));
                    }
                }
            }
        }
        Ok(dc)
    }

    /// `A ⊗ B` with `∂ = d_A ⊗ 1` and `∂̄ = (−1)^p 1 ⊗ d_B`.
    pub fn tensor(a: &CochainComplex, b: &CochainComplex) -> Result<Self, SpectralError> {
        let (pn, qn) = (a.dims.len(), b.dims.len());
        let dims = (0..pn).map(|p| (0..qn).map(|qq| a.dims[p] * b.dims[qq]).collect()).collect();
        let da = |p: usize| a.d.get(p).cloned().unwrap_or_else(|| ExactMatrix::zeros(0, a.dims[p]));
        let db = |qq: usize| b.d.get(qq).cloned().unwrap_or_else(|| ExactMatrix::zeros(0, b.dims[qq]));
        let h = (0..pn).map(|p| (0..qn).map(|qq| da(p).kron(&ExactMatrix::identity(b.dims[qq]))).collect()).collect();
        let v = (0..pn)
            .map(|p| {
                let s = if p % 2 == 0 { q(1) } else { q(-1) };
                (0..qn).map(|qq| ExactMatrix::identity(a.dims[p]).kron(&db(qq)).scale(&s)).collect()
            })
            .collect();
        Self::new(dims, h, v)
    }

    pub fn grid(&self) -> (usize, usize) {
        (self.dims.len(), self.dims.first().map_or(0, Vec::len))
    }

    pub fn dim(&self, p: usize, qq: usize) -> usize {
        self.dims.get(p).and_then(|r| r.get(qq)).copied().unwrap_or(0)
    }

    /// Components of total degree `n` as `(p, q, offset)`, `p` ascending.
    fn components(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let (pn, qn) = self.grid();
        let mut off = 0;
        let mut out = Vec::new();
        for p in 0..pn.min(n + 1) {
            let qq = n - p;
            if qq < qn {
                out.push((p, qq, off));
                off += self.dims[p][qq];
            }
        }
        out
    }

    pub fn total(&self) -> CochainComplex {
        let (pn, qn) = self.grid();
        let top = (pn + qn).saturating_sub(2);
        let dims: Vec<usize> = (0..=top).map(|n| self.components(n).iter().map(|&(p, qq, _)| self.dims[p][qq]).sum()).collect();
        let d = (0..top)
            .map(|n| {
                let mut m = ExactMatrix::zeros(dims[n + 1], dims[n]);
                let tgt: BTreeMap<(usize, usize), usize> = self.components(n + 1).into_iter().map(|(p, qq, o)| ((p, qq), o)).collect();
                for (p, qq, o) in self.components(n) {
                    for (blk, to) in [(&self.h[p][qq], (p + 1, qq)), (&self.v[p][qq], (p, qq + 1))] {
                        if let Some(&t) = tgt.get(&to) {
                            for i in 0..blk.rows() {
                                for j in 0..blk.cols() {
                                    m.set(t + i, o + j, blk.get(i, j).clone());
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        CochainComplex::new(dims, d)
    }

    /// Filtration by columns (`which = 1`, `p' ≥ p`) or rows (`which = 2`, `q' ≥ p`).
    pub fn filtered(&self, which: u8) -> Result<FilteredComplex, SpectralError> {
        let total = self.total();
        let filt = (0..total.dims.len())
            .map(|n| {
                let comps = self.components(n);
                (0..=n + 1)
                    .map(|s| {
                        let idx: Vec<usize> = comps
                            .iter()
                            .filter(|&&(p, qq, _)| if which == 1 { p >= s } else { qq >= s })
                            .flat_map(|&(p, qq, o)| o..o + self.dims[p][qq])
                            .collect();
                        Subspace::coordinate(total.dims[n], &idx)
                    })
                    .collect()
            })
            .collect();
        FilteredComplex::new(total, filt)
    }

    fn hmap(&self, p: usize, qq: usize) -> ExactMatrix {
        self.h[p][qq].clone()
    }

    fn vmap(&self, p: usize, qq: usize) -> ExactMatrix {
        self.v[p][qq].clone()
    }
}

/// Cohomology of a line of maps `m_k: V_k → V_{k+1}` at position `k`.
fn line_cohomology(maps: &dyn Fn(usize) -> ExactMatrix, k: usize) -> usize {
    let z = kernel(&maps(k)).dim();
    let b = if k == 0 { 0 } else { rank(&maps(k - 1)) };
    z - b
}

/// `H(V_k)` quotients of a line of maps.
fn line_quotients(dims: &[usize], maps: &dyn Fn(usize) -> ExactMatrix) -> Vec<Quotient> {
    (0..dims.len())
        .map(|k| {
            let z = kernel(&maps(k));
            let b = if k == 0 { Subspace::zero(dims[0]) } else { image(&maps(k - 1)) };
            Quotient::new(&z, &b).expect("image inside kernel")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstPagesReport {
    /// `(p, q) → (spectral, direct)` for `⁽¹⁾E_1`, `⁽²⁾E_1`, `⁽¹⁾E_2`, `⁽²⁾E_2`.
    pub e1_first: BTreeMap<(i64, i64), (usize, usize)>,
    pub e1_second: BTreeMap<(i64, i64), (usize, usize)>,
    pub e2_first: BTreeMap<(i64, i64), (usize, usize)>,
    pub e2_second: BTreeMap<(i64, i64), (usize, usize)>,
}

impl FirstPagesReport {
    pub fn agree(&self) -> bool {
        [&self.e1_first, &self.e1_second, &self.e2_first, &self.e2_second]
            .iter()
            .all(|m| m.values().all(|(a, b)| a == b))
    }
}

/// Iterated cohomology `H^p_{outer}(H^q_{inner})` on the grid, with
/// `inner(p, q): C^{p,q} → C^{p,q+1}` and `outer(p, q): C^{p,q} → C^{p+1,q}`.
fn iterated(
    pn: usize,
    qn: usize,
    dims: &dyn Fn(usize, usize) -> usize,
    inner: &dyn Fn(usize, usize) -> ExactMatrix,
    outer: &dyn Fn(usize, usize) -> ExactMatrix,
) -> BTreeMap<(usize, usize), usize> {
    let quots: Vec<Vec<Quotient>> = (0..pn)
        .map(|p| {
            let ds: Vec<usize> = (0..qn).map(|qq| dims(p, qq)).collect();
            line_quotients(&ds, &|qq| inner(p, qq))
        })
        .collect();
    let induced = |p: usize, qq: usize| -> ExactMatrix {
        let src = &quots[p][qq];
        let rows = if p + 1 < pn { quots[p + 1][qq].dim() } else { 0 };
        let mut m = ExactMatrix::zeros(rows, src.dim());
        if p + 1 < pn {
            let om = outer(p, qq);
            for (col, v) in src.reps().iter().enumerate() {
                let c = quots[p + 1][qq].coords(&om.mul_vec(v)).expect("outer map preserves inner cocycles");
                for (row, x) in c.into_iter().enumerate() {
                    m.set(row, col, x);
                }
            }
        }
        m
    };
    let mut out = BTreeMap::new();
    for qq in 0..qn {
        for p in 0..pn {
            out.insert((p, qq), line_cohomology(&|k| induced(k, qq), p));
        }
    }
    out
}

/// `E_1` and `E_2` of both filtrations, against direct vertical/horizontal cohomology.
pub fn first_pages(dc: &DoubleComplex) -> Result<FirstPagesReport, SpectralError> {
    let (pn, qn) = dc.grid();
    let dims = |p: usize, qq: usize| dc.dim(p, qq);
    let mut report = FirstPagesReport {
        e1_first: BTreeMap::new(),
        e1_second: BTreeMap::new(),
        e2_first: BTreeMap::new(),
        e2_second: BTreeMap::new(),
    };
    let f1 = dc.filtered(1)?;
    let f2 = dc.filtered(2)?;
    let (p1e1, p1e2) = (page(&f1, 1)?, page(&f1, 2)?);
    let (p2e1, p2e2) = (page(&f2, 1)?, page(&f2, 2)?);
    // ⁽¹⁾E_1^{p,q} = H^q(C^{p,•}, ∂̄); ⁽²⁾E_1^{p,q} = H^q(C^{•,p}, ∂).
    for p in 0..pn {
        for qq in 0..qn {
            let direct = line_cohomology(&|k| dc.vmap(p, k), qq);
            report.e1_first.insert((p as i64, qq as i64), (p1e1.dim(p as i64, qq as i64), direct));
            let direct = line_cohomology(&|k| dc.hmap(k, qq), p);
            report.e1_second.insert((qq as i64, p as i64), (p2e1.dim(qq as i64, p as i64), direct));
        }
    }
    let e2a = iterated(pn, qn, &dims, &|p, qq| dc.vmap(p, qq), &|p, qq| dc.hmap(p, qq));
    for ((p, qq), d) in e2a {
        report.e2_first.insert((p as i64, qq as i64), (p1e2.dim(p as i64, qq as i64), d));
    }
    // Transposed grid: rows become columns.
    let tdims = |a: usize, b: usize| dc.dim(b, a);
    let e2b = iterated(qn, pn, &tdims, &|a, b| dc.hmap(b, a), &|a, b| dc.vmap(b, a));
    for ((s, t), d) in e2b {
        report.e2_second.insert((s as i64, t as i64), (p2e2.dim(s as i64, t as i64), d));
    }
    Ok(report)
}

/// Largest Lie algebra dimension accepted by `hochschild_serre`.
pub const HS_MAX_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct HochschildSerreReport {
    pub filtered: FilteredComplex,
    /// Nonzero cells of `E_r`, `r = 0..=r_max`.
    pub pages: Vec<BTreeMap<(i64, i64), usize>>,
    /// `(p, q) → (E_1 spectral, H^q(h; Hom(Λ^p(g/h), A)))`.
    pub e1: BTreeMap<(i64, i64), (usize, usize)>,
    /// `p → (E_2^{p,0}, H^p(g, h; A))`.
    pub e2_bottom_row: BTreeMap<i64, (usize, usize)>,
    /// For an ideal: `(p, q) → (E_2, H^p(g/h, H^q(h; A)))`.
    pub e2_ideal: Option<BTreeMap<(i64, i64), (usize, usize)>>,
    pub abutment: AbutmentReport,
    /// `q → (rank of H^q(g;A) → H^q(h;A), dim E_∞^{0,q})`.
    pub restriction_edge: BTreeMap<i64, (usize, usize)>,
    /// `p → (rank of H^p(g,h;A) → H^p(g;A), dim E_∞^{p,0})`.
    pub relative_edge: BTreeMap<i64, (usize, usize)>,
}

impl HochschildSerreReport {
    pub fn consistent(&self) -> bool {
        let eq = |(a, b): &(usize, usize)| a == b;
        self.e1.values().all(eq)
            && self.e2_bottom_row.values().all(eq)
            && self.e2_ideal.as_ref().is_none_or(|m| m.values().all(eq))
            && self.abutment.holds()
            && self.restriction_edge.values().all(eq)
            && self.relative_edge.values().all(eq)
    }
}

/// Hochschild–Serre filtration: `F^p C^n` = cochains vanishing whenever
/// `n − p + 1` arguments lie in `h`, built in a basis adapted to `h`.
pub fn hochschild_serre(g: &LieAlgebra, h: &Subspace, a: &LieModule, r_max: i64) -> Result<HochschildSerreReport, SpectralError> {
    if g.dim() > HS_MAX_DIM {
        return Err(SpectralError::DimsExceeded { dim: g.dim(), cap: HS_MAX_DIM });
    }
    g.is_subalgebra(h)?;
    let dg = g.dim();
    let dh = h.dim();
    let comp = Quotient::new(&Subspace::full(dg), h)?;
    let mut rows = h.basis_vecs();
    rows.extend(comp.reps().iter().cloned());
    let basis = ExactMatrix::from_rows(dg, rows);
    let names = (0..dg).map(|i| if i < dh { format!("h{}", i + 1) } else { format!("c{}", i - dh + 1) }).collect();
    let ga = g.rebase(&basis, names)?;
    let aa = a.rebase(&ga, &basis)?;
    let da = aa.dim();
    let ce = ce_complex(&ga, &aa, dg)?;
    let complex = ce.complex.clone();
    let filt: Vec<Vec<Subspace>> = (0..=dg)
        .map(|n| {
            (0..=n + 1)
                .map(|p| {
                    let idx: Vec<usize> = ce.tuples[n]
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| t.iter().filter(|&&i| i >= dh).count() >= p)
                        .flat_map(|(ti, _)| ti * da..(ti + 1) * da)
                        .collect();
                    Subspace::coordinate(complex.dims[n], &idx)
                })
                .collect()
        })
        .collect();
    let fc = FilteredComplex::new(complex, filt)?;
    let mut pages = Vec::new();
    let mut e1_page = None;
    let mut e2_page = None;
    for r in 0..=r_max.max(2) {
        let pg = page(&fc, r)?;
        if r <= r_max {
            pages.push(pg.dims());
        }
        if r == 1 {
            e1_page = Some(pg);
        } else if r == 2 {
            e2_page = Some(pg);
        }
    }
    let (e1_page, e2_page) = (e1_page.expect("r ≥ 1"), e2_page.expect("r ≥ 2"));

    // Direct E_1 from the h-modules Hom(Λ^p(g/h), A).
    let hsub_space = Subspace::coordinate(dg, &(0..dh).collect::<Vec<_>>());
    let (hsub, emb) = ga.subalgebra(&hsub_space)?;
    let a_h = aa.restrict(&hsub, &emb)?;
    let gh_action: Vec<ExactMatrix> = (0..dh)
        .map(|i| {
            let mut m = ExactMatrix::zeros(dg - dh, dg - dh);
            for j in 0..dg - dh {
                for (k, c) in ga.bracket_basis(i, dh + j) {
                    if *k >= dh {
                        m.set(k - dh, j, c.clone());
                    }
                }
            }
            m
        })
        .collect();
    let g_mod_h = LieModule::new(hsub.clone(), gh_action)?;
    let mut e1 = BTreeMap::new();
    for p in 0..=dg - dh {
        let hq = if dh == 0 {
            vec![crate::combin::binomial(dg, p) * da]
        } else {
            let m = g_mod_h.exterior_power(p).dual().tensor(&a_h)?;
            crate::ce::cohomology(&hsub, &m, dh)?.dims
        };
        for (qq, d) in hq.into_iter().enumerate() {
            e1.insert((p as i64, qq as i64), (e1_page.dim(p as i64, qq as i64), d));
        }
    }

    // Bottom row of E_2 against relative cohomology (computed in the original basis).
    let rel = crate::ce::relative_complex(g, h, a)?.cohomology().dims;
    let e2_bottom_row = rel.iter().enumerate().map(|(p, &d)| (p as i64, (e2_page.dim(p as i64, 0), d))).collect();

    let e2_ideal = if g.is_ideal(h).is_ok() && dh > 0 {
        Some(ideal_e2(&ga, &aa, dh, &hsub, &a_h, &e2_page)?)
    } else {
        None
    };

    let ab = abutment(&fc)?;
    let e_inf = page(&fc, fc.stable_page())?;
    let full = fc.complex.cohomology();

    // Edge maps.
    let h_tuple_idx: Vec<BTreeMap<Vec<usize>, usize>> = (0..=dh).map(|n| index_map(&crate::combin::increasing_tuples(dh, n)).into_iter().collect()).collect();
    let mut restriction_edge = BTreeMap::new();
    let hce = if dh > 0 { Some(ce_complex(&hsub, &a_h, dh)?) } else { None };
    for n in 0..=dg {
        let e_inf_dim = e_inf.dim(0, n as i64);
        let rk = match (&hce, n <= dh) {
            (Some(hc), true) => {
                let quo = Quotient::new(&hc.complex.cocycles(n), &hc.complex.coboundaries(n))?;
                let classes: Vec<Vec<Rational>> = full.representatives[n]
                    .iter()
                    .map(|rep| {
                        let mut res = vec![Rational::default(); hc.complex.dims[n]];
                        for (ti, t) in ce.tuples[n].iter().enumerate() {
                            if let Some(&hi) = h_tuple_idx[n].get(t) {
                                res[hi * da..(hi + 1) * da].clone_from_slice(&rep[ti * da..(ti + 1) * da]);
                            }
                        }
                        quo.coords(&res).expect("restriction of a cocycle is a cocycle")
                    })
                    .collect();
                Subspace::span(quo.dim(), &classes).dim()
            }
            // h = 0: restriction to H^0(0; A) = A is the inclusion of invariants.
            (None, true) => full.dims[0],
            _ => 0,
        };
        restriction_edge.insert(n as i64, (rk, e_inf_dim));
    }
    let mut relative_edge = BTreeMap::new();
    for n in 0..=dg {
        let u = fc.f(n, n as i64);
        let rsub = match fc.complex.d.get(n) {
            Some(d) => subspace_intersect(&u, &preimage(d, &fc.f(n + 1, n as i64 + 1))?)?,
            None => u,
        };
        let rz = subspace_intersect(&rsub, &fc.complex.cocycles(n))?;
        let hq = Quotient::new(&fc.complex.cocycles(n), &fc.complex.coboundaries(n))?;
        let classes: Vec<Vec<Rational>> = rz.basis_vecs().iter().map(|v| hq.coords(v).expect("cocycle")).collect();
        relative_edge.insert(n as i64, (Subspace::span(hq.dim(), &classes).dim(), e_inf.dim(n as i64, 0)));
    }

    Ok(HochschildSerreReport {
        filtered: fc,
        pages,
        e1,
        e2_bottom_row,
        e2_ideal,
        abutment: ab,
        restriction_edge,
        relative_edge,
    })
}

/// `H^p(g/h, H^q(h; A))` for an ideal `h` spanned by the first `dh` basis vectors of `ga`.
fn ideal_e2(
    ga: &LieAlgebra,
    aa: &LieModule,
    dh: usize,
    hsub: &LieAlgebra,
    a_h: &LieModule,
    e2: &SpectralPage,
) -> Result<BTreeMap<(i64, i64), (usize, usize)>, SpectralError> {
    let dg = ga.dim();
    let dc = dg - dh;
    let quot = LieAlgebra::from_fn((0..dc).map(|i| format!("c{}", i + 1)).collect(), |i, j| {
        let mut v = vec![Rational::default(); dc];
        for (k, c) in ga.bracket_basis(dh + i, dh + j) {
            if *k >= dh {
                v[k - dh] += c;
            }
        }
        v
    })?;
    let hce = ce_complex(hsub, a_h, dh)?;
    let da = aa.dim();
    let mut out = BTreeMap::new();
    for qq in 0..=dh {
        let tuples = &hce.tuples[qq];
        let tidx = index_map(tuples);
        let quo = Quotient::new(&hce.complex.cocycles(qq), &hce.complex.coboundaries(qq))?;
        // (x·f)(h_1..h_q) = x·f(h_1..h_q) − Σ_i f(.., [x, h_i], ..).
        let act_on = |x: usize, f: &[Rational]| -> Vec<Rational> {
            let px = aa.action(x);
            let mut res = vec![Rational::default(); f.len()];
            for (ti, t) in tuples.iter().enumerate() {
                let val = px.mul_vec(&f[ti * da..(ti + 1) * da]);
                for (o, v) in res[ti * da..(ti + 1) * da].iter_mut().zip(val) {
                    *o += v;
                }
                for i in 0..qq {
                    for (k, c) in ga.bracket_basis(x, t[i]) {
                        let mut s = t.clone();
                        s[i] = *k;
                        if let Some((sorted, sign)) = sort_sign(&s) {
                            let si = tidx[&sorted];
                            for al in 0..da {
                                res[ti * da + al] -= c * &f[si * da + al] * q(sign);
                            }
                        }
                    }
                }
            }
            res
        };
        let action: Vec<ExactMatrix> = (0..dc)
            .map(|j| {
                let mut m = ExactMatrix::zeros(quo.dim(), quo.dim());
                for (col, rep) in quo.reps().iter().enumerate() {
                    let c = quo.coords(&act_on(dh + j, rep)).expect("g preserves h-cocycles");
                    for (row, x) in c.into_iter().enumerate() {
                        m.set(row, col, x);
                    }
                }
                m
            })
            .collect();
        let hp = if dc == 0 {
            vec![quo.dim()]
        } else {
            crate::ce::cohomology(&quot, &LieModule::new(quot.clone(), action)?, dc)?.dims
        };
        for (p, d) in hp.into_iter().enumerate() {
            out.insert((p as i64, qq as i64), (e2.dim(p as i64, qq as i64), d));
        }
    }
    Ok(out)
}

/// `C^{p,q} = C^p ⊗ Λ^q g*` with `∂ = d_p ⊗ 1` and `∂̄ = (−1)^p 1 ⊗ δ_q`.
#[derive(Clone, Debug)]
pub struct BrstReport {
    pub double: DoubleComplex,
    pub h0_total: usize,
    pub invariants_of_h0: usize,
    pub c_acyclic_positive: bool,
    /// `⁽²⁾E_1^{p,q}` vanishes for `q ≠ 0` (meaningful when `C` is acyclic in positive degrees).
    pub e1_concentrated: bool,
}

/// `actions[n][x]`: action of basis element `x` on `C^n`.
pub fn brst_double(g: &LieAlgebra, c: &CochainComplex, actions: &[Vec<ExactMatrix>]) -> Result<BrstReport, SpectralError> {
    let top = c.dims.len() - 1;
    if actions.len() != c.dims.len() || actions.iter().any(|a| a.len() != g.dim()) {
        return Err(SpectralError::Double("one action per degree and basis element".into()));
    }
    let modules: Vec<LieModule> = actions.iter().map(|a| LieModule::new(g.clone(), a.clone())).collect::<Result<_, _>>()?;
    for n in 0..top {
        for x in 0..g.dim() {
            if c.d[n].mul(&actions[n][x]) != actions[n + 1][x].mul(&c.d[n]) {
                return Err(SpectralError::NotCommuting { x, n });
            }
        }
    }
    let ces: Vec<_> = modules.iter().map(|m| ce_complex(g, m, g.dim())).collect::<Result<_, _>>()?;
    let qn = g.dim() + 1;
    let dims: Vec<Vec<usize>> = (0..=top).map(|p| (0..qn).map(|qq| ces[p].complex.dims[qq]).collect()).collect();
    let ntuples = |qq: usize| ces[0].tuples[qq].len();
    let h = (0..=top)
        .map(|p| {
            (0..qn)
                .map(|qq| match c.d.get(p) {
                    Some(d) => ExactMatrix::identity(ntuples(qq)).kron(d),
                    None => ExactMatrix::zeros(0, dims[p][qq]),
                })
                .collect()
        })
        .collect();
    let v = (0..=top)
        .map(|p| {
            let s = if p % 2 == 0 { q(1) } else { q(-1) };
            (0..qn)
                .map(|qq| match ces[p].complex.d.get(qq) {
                    Some(d) => d.scale(&s),
                    None => ExactMatrix::zeros(0, dims[p][qq]),
                })
                .collect()
        })
        .collect();
    let dc = DoubleComplex::new(dims, h, v)?;
    let total = dc.total();
    let h0_total = FilteredComplex::trivial(total).cohomology_dims()[0];
    let fc = FilteredComplex::trivial(c.clone());
    let hc = fc.cohomology_dims();
    // (H^0 C)^g = Z^0 ∩ ⋂ ker π(x).
    let mut inv = fc.complex.cocycles(0);
    for x in 0..g.dim() {
        inv = subspace_intersect(&inv, &kernel(&actions[0][x]))?;
    }
    let f2 = dc.filtered(2)?;
    let e1 = page(&f2, 1)?;
    let e1_concentrated = e1.dims().keys().all(|&(_, t)| t == 0);
    Ok(BrstReport {
        double: dc,
        h0_total,
        invariants_of_h0: inv.dim(),
        c_acyclic_positive: hc.iter().skip(1).all(|&d| d == 0),
        e1_concentrated,
    })
}

/// Seeded random filtered complex in degrees `0..=top` with `dim C^n ≤ max_dim`
/// and filtration length `levels`.
///
/// A matching complex whose arrows never lower the level is conjugated by
/// random filtration-preserving unitriangular automorphisms.
pub fn random_filtered(seed: u64, top: usize, max_dim: usize, levels: usize) -> FilteredComplex {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(1..=max_dim)).collect();
    let lv: Vec<Vec<usize>> = dims.iter().map(|&d| (0..d).map(|_| rng.gen_range(0..levels)).collect()).collect();
    let mut used_as_target: Vec<Vec<bool>> = dims.iter().map(|&d| vec![false; d]).collect();
    let mut std_d = Vec::new();
    for n in 0..top {
        let mut m = ExactMatrix::zeros(dims[n + 1], dims[n]);
        for j in 0..dims[n] {
            if used_as_target[n][j] || rng.gen_bool(0.4) {
                continue;
            }
            let free: Vec<usize> = (0..dims[n + 1]).filter(|&i| !used_as_target[n + 1][i] && lv[n + 1][i] >= lv[n][j]).collect();
            if free.is_empty() {
                continue;
            }
            let i = free[rng.gen_range(0..free.len())];
            used_as_target[n + 1][i] = true;
            m.set(i, j, q(1));
        }
        std_d.push(m);
    }
    // Unitriangular in the order (level, index): entries (i, j) with (lv_i, i) > (lv_j, j).
    let autos: Vec<ExactMatrix> = (0..=top)
        .map(|n| {
            let mut g = ExactMatrix::identity(dims[n]);
            for i in 0..dims[n] {
                for j in 0..dims[n] {
                    if (lv[n][i], i) > (lv[n][j], j) && rng.gen_bool(0.5) {
                        g.set(i, j, q(rng.gen_range(-2..=2)));
                    }
                }
            }
            g
        })
        .collect();
    let d = (0..top)
        .map(|n| {
            let inv = crate::exactlin::invert(&autos[n]).expect("unitriangular");
            autos[n + 1].mul(&std_d[n]).mul(&inv)
        })
        .collect();
    let complex = CochainComplex::new(dims.clone(), d);
    let filt = (0..=top)
        .map(|n| {
            (0..=levels)
                .map(|p| {
                    let idx: Vec<usize> = (0..dims[n]).filter(|&i| lv[n][i] >= p).collect();
                    Subspace::coordinate(dims[n], &idx)
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(complex, filt).expect("construction preserves the filtration")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact3() -> CochainComplex {
        // Q → Q² → Q, exact.
        CochainComplex::new(
            vec![1, 2, 1],
            vec![ExactMatrix::from_i64(&[&[1], &[1]]), ExactMatrix::from_i64(&[&[1, -1]])],
        )
    }

    #[test]
    fn trivial_filtration_single_column() {
        let c = exact3();
        let fc = FilteredComplex::trivial(c);
        let e1 = page(&fc, 1).unwrap();
        assert!(e1.dims().is_empty());
        let ab = abutment(&fc).unwrap();
        assert!(ab.holds());
    }

    #[test]
    fn two_step_filtration_of_exact_complex() {
        let c = exact3();
        let filt = vec![
            vec![Subspace::full(1), Subspace::full(1), Subspace::zero(1)],
            vec![Subspace::full(2), Subspace::span(2, &[vec![q(1), q(1)]]), Subspace::zero(2)],
            vec![Subspace::full(1), Subspace::full(1), Subspace::zero(1)],
        ];
        let fc = FilteredComplex::new(c, filt).unwrap();
        let ab = abutment(&fc).unwrap();
        assert_eq!(ab.e_infinity, vec![0, 0, 0]);
        assert!(check_page_recursion(&fc, 3).unwrap().holds());
    }

    #[test]
    fn unstable_filtration_rejected() {
        let c = exact3();
        let filt = vec![
            vec![Subspace::full(1), Subspace::full(1), Subspace::zero(1)],
            vec![Subspace::full(2), Subspace::zero(2)],
            vec![Subspace::full(1), Subspace::zero(1)],
        ];
        assert!(matches!(FilteredComplex::new(c, filt), Err(SpectralError::NotStable { n: 0, p: 1 })));
    }

    #[test]
    fn nonabelian_hs_example() {
        let g = LieAlgebra::nonabelian2();
        let h = Subspace::coordinate(2, &[1]);
        let r = hochschild_serre(&g, &h, &LieModule::trivial(&g, 1), 3).unwrap();
        let e2 = &r.pages[2];
        assert_eq!(e2.get(&(0, 0)), Some(&1));
        assert_eq!(e2.get(&(1, 0)), Some(&1));
        assert_eq!(e2.get(&(0, 1)), None);
        assert_eq!(e2.get(&(1, 1)), None);
        assert_eq!(r.abutment.cohomology, vec![1, 1, 0]);
        assert!(r.consistent(), "{r:?}");
    }
}
