//! Hochschild cochains, bar complex, graded HKR comparison, DG total
//! differential, trace cocycles and the chain maps into Lie cochains.
//!
//! A cochain `f ∈ C^n(A) = Hom(A^{⊗n}, A)` is stored densely: the coordinate
//! of `f(e_{t_1},…,e_{t_n})` along `e_b` is `flat(t)*dim A + b`.

use num_traits::Zero;
use thiserror::Error;

use crate::ce::{ce_complex, CeError, CochainComplex};
use crate::combin::{all_tuples, binomial, flat_index, increasing_tuples, permutations, perm_sign};
use crate::exactlin::{kernel, q, rank, ExactMatrix, Rational, Subspace};
use crate::structures::{AssocAlgebra, LieAlgebra, LieModule, StructError};

/// Default coefficient budget for dense cochain matrices.
pub const DEFAULT_BUDGET_BYTES: usize = 256 << 20;
const BYTES_PER_ENTRY: usize = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochError {
    #[error("budget exceeded: {required} bytes required, {budget} allowed")]
    Budget { required: usize, budget: usize },
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("algebra has no grading")]
    Ungraded,
    #[error("invalid DG algebra: {0}")]
    InvalidDg(String),
    #[error("cochain length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Structure(#[from] StructError),
    #[error(transparent)]
    Ce(#[from] CeError),
}

/// Sign convention for the left-multiplication term of `d_Hoch`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HochSign {
    /// `a_1 f(a_2,…)` with sign `+1`.
    Plain,
    /// `(−1)^{|a_1|·p} a_1 f(a_2,…)` for `f` of internal degree `p`.
    Koszul,
}

pub fn cochain_dim(a: &AssocAlgebra, n: usize) -> usize {
    a.dim().pow(n as u32 + 1)
}

fn check_budget(entries: usize, budget: usize) -> Result<(), HochError> {
    let required = entries.saturating_mul(BYTES_PER_ENTRY);
    if required > budget {
        return Err(HochError::Budget { required, budget });
    }
    Ok(())
}

fn neg_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Internal degree of the basis cochain `(t, b)`.
fn internal_degree(a: &AssocAlgebra, t: &[usize], b: usize) -> i64 {
    a.degree(b) - t.iter().map(|&i| a.degree(i)).sum::<i64>()
}

/// Matrix of `d_Hoch: C^n(A) → C^{n+1}(A)`.
pub fn d_hoch_matrix(a: &AssocAlgebra, n: usize, sign: HochSign) -> ExactMatrix {
    let d = a.dim();
    let mut m = ExactMatrix::zeros(cochain_dim(a, n + 1), cochain_dim(a, n));
    for u in all_tuples(d, n + 1) {
        let ui = flat_index(&u, d);
        let head = &u[1..];
        let hs = flat_index(head, d);
        for b in 0..d {
            let s0 = match sign {
                HochSign::Plain => q(1),
                HochSign::Koszul => neg_pow(a.degree(u[0]) * internal_degree(a, head, b)),
            };
            for (k, c) in a.product_basis(u[0], b) {
                m.add_at(ui * d + k, hs * d + b, &(c * &s0));
            }
        }
        for j in 1..=n {
            let sj = neg_pow(j as i64);
            for (mm, c) in a.product_basis(u[j - 1], u[j]) {
                let mut s = u[..j - 1].to_vec();
                s.push(*mm);
                s.extend_from_slice(&u[j + 1..]);
                let si = flat_index(&s, d);
                let coef = c * &sj;
                for b in 0..d {
                    m.add_at(ui * d + b, si * d + b, &coef);
                }
            }
        }
        let tail = &u[..n];
        let ts = flat_index(tail, d);
        let sl = neg_pow(n as i64 + 1);
        for b in 0..d {
            for (k, c) in a.product_basis(b, u[n]) {
                m.add_at(ui * d + k, ts * d + b, &(c * &sl));
            }
        }
    }
    m
}

pub fn d_hoch(a: &AssocAlgebra, n: usize, f: &[Rational], sign: HochSign) -> Result<Vec<Rational>, HochError> {
    let expected = cochain_dim(a, n);
    if f.len() != expected {
        return Err(HochError::Length { expected, found: f.len() });
    }
    Ok(d_hoch_matrix(a, n, sign).mul_vec(f))
}

/// Dense Hochschild complex through arity `max_arity` (plus one for kernels).
pub fn hochschild_complex(a: &AssocAlgebra, max_arity: usize, sign: HochSign, budget: usize) -> Result<CochainComplex, HochError> {
    check_budget(cochain_dim(a, max_arity + 1) * cochain_dim(a, max_arity), budget)?;
    let dims = (0..=max_arity + 1).map(|n| cochain_dim(a, n)).collect();
    let d = (0..=max_arity).map(|n| d_hoch_matrix(a, n, sign)).collect();
    let mut c = CochainComplex::new(dims, d);
    c.exact_top = max_arity;
    Ok(c)
}

/// `dim HH^n(A)` for `n ≤ max_arity` with representatives.
pub fn hh(a: &AssocAlgebra, max_arity: usize, budget: usize) -> Result<crate::ce::CohomologyReport, HochError> {
    Ok(hochschild_complex(a, max_arity, HochSign::Plain, budget)?.cohomology())
}

/// Normalized cochains of one internal degree on argument weight `≤ weight_cap`.
struct GradedSlice {
    tuples: Vec<Vec<usize>>,
    cells: Vec<(usize, usize)>,
    index: std::collections::HashMap<(usize, usize), usize>,
}

fn positive_tuples(a: &AssocAlgebra, n: usize, cap: Option<i64>) -> Vec<Vec<usize>> {
    let pos: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) > 0).collect();
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            let w: i64 = t.iter().map(|&i| a.degree(i)).sum();
            for &i in &pos {
                if cap.is_none_or(|c| w + a.degree(i) <= c) {
                    let mut nt = t.clone();
                    nt.push(i);
                    next.push(nt);
                }
            }
        }
        out = next;
    }
    out
}

fn graded_slice(a: &AssocAlgebra, n: usize, p: i64, cap: Option<i64>) -> GradedSlice {
    let tuples = positive_tuples(a, n, cap);
    let mut cells = Vec::new();
    for (ti, t) in tuples.iter().enumerate() {
        let w: i64 = t.iter().map(|&i| a.degree(i)).sum();
        for b in 0..a.dim() {
            if a.degree(b) == p + w {
                cells.push((ti, b));
            }
        }
    }
    let index = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    GradedSlice { tuples, cells, index }
}

fn graded_d(a: &AssocAlgebra, src: &GradedSlice, dst: &GradedSlice, n: usize, p: i64, sign: HochSign) -> ExactMatrix {
    let tpos: std::collections::HashMap<&[usize], usize> = src.tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut m = ExactMatrix::zeros(dst.cells.len(), src.cells.len());
    let mut put = |row_t: usize, row_b: usize, s: &[usize], b: usize, c: &Rational| {
        if let (Some(&r), Some(&st)) = (dst.index.get(&(row_t, row_b)), tpos.get(s)) {
            if let Some(&col) = src.index.get(&(st, b)) {
                m.add_at(r, col, c);
            }
        }
    };
    for (ut, u) in dst.tuples.iter().enumerate() {
        let s0 = match sign {
            HochSign::Plain => q(1),
            HochSign::Koszul => neg_pow(a.degree(u[0]) * p),
        };
        for b in 0..a.dim() {
            for (k, c) in a.product_basis(u[0], b) {
                put(ut, *k, &u[1..], b, &(c * &s0));
            }
        }
        for j in 1..=n {
            let sj = neg_pow(j as i64);
            for (mm, c) in a.product_basis(u[j - 1], u[j]) {
                let mut s = u[..j - 1].to_vec();
                s.push(*mm);
                s.extend_from_slice(&u[j + 1..]);
                for b in 0..a.dim() {
                    put(ut, b, &s, b, &(c * &sj));
                }
            }
        }
        let sl = neg_pow(n as i64 + 1);
        for b in 0..a.dim() {
            for (k, c) in a.product_basis(b, u[n]) {
                put(ut, *k, &u[..n], b, &(c * &sl));
            }
        }
    }
    m
}

/// One row of a graded Hochschild table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCell {
    pub arity: usize,
    pub degree: i64,
    pub dim: usize,
}

/// `dim HH^n_p` per internal degree from normalized cochains restricted to
/// argument weight `≤ weight_cap` (`None`: no restriction).
pub fn graded_hh(
    a: &AssocAlgebra,
    max_arity: usize,
    degrees: std::ops::RangeInclusive<i64>,
    weight_cap: Option<i64>,
    sign: HochSign,
) -> Result<Vec<GradedCell>, HochError> {
    if a.grading().is_none() {
        return Err(HochError::Ungraded);
    }
    let mut out = Vec::new();
    for p in degrees {
        let slices: Vec<GradedSlice> = (0..=max_arity + 1).map(|n| graded_slice(a, n, p, weight_cap)).collect();
        let ds: Vec<ExactMatrix> = (0..=max_arity).map(|n| graded_d(a, &slices[n], &slices[n + 1], n, p, sign)).collect();
        for n in 0..=max_arity {
            let z = slices[n].cells.len() - rank(&ds[n]);
            let b = if n == 0 { 0 } else { rank(&ds[n - 1]) };
            out.push(GradedCell { arity: n, degree: p, dim: z - b });
        }
    }
    Ok(out)
}

/// Dimension of degree-`p` derivations of the polynomial algebra in `vars`
/// variables, solved as a linear system on a truncation that cannot interfere.
pub fn derivation_dim(vars: usize, p: i64) -> usize {
    let k = 2usize;
    let top = (k as i64 + p.max(0)) as usize + 1;
    let a = AssocAlgebra::truncated_poly(vars, top);
    let src: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) as usize <= k).collect();
    // Unknowns: D(e_s) component along e_t with deg t = deg s + p.
    let mut unknowns = Vec::new();
    for &s in &src {
        for t in 0..a.dim() {
            if a.degree(t) == a.degree(s) + p {
                unknowns.push((s, t));
            }
        }
    }
    let uidx: std::collections::HashMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(i, u)| (*u, i)).collect();
    let mut rows = Vec::new();
    for &x in &src {
        for &y in &src {
            if a.degree(x) + a.degree(y) > k as i64 {
                continue;
            }
            // D(xy) − D(x)y − xD(y) = 0, component-wise.
            let mut eqs = vec![vec![Rational::zero(); unknowns.len()]; a.dim()];
            for (m, c) in a.product_basis(x, y) {
                for t in 0..a.dim() {
                    if let Some(&u) = uidx.get(&(*m, t)) {
                        eqs[t][u] += c;
                    }
                }
            }
            for t in 0..a.dim() {
                if let Some(&u) = uidx.get(&(x, t)) {
                    for (r, c) in a.product_basis(t, y) {
                        eqs[*r][u] -= c;
                    }
                }
                if let Some(&u) = uidx.get(&(y, t)) {
                    for (r, c) in a.product_basis(x, t) {
                        eqs[*r][u] -= c;
                    }
                }
            }
            rows.extend(eqs);
        }
    }
    kernel(&ExactMatrix::from_rows(unknowns.len(), rows)).dim()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrRow {
    pub arity: usize,
    pub degree: i64,
    pub hh: usize,
    pub polyvector: usize,
}

impl HkrRow {
    pub fn matches(&self) -> bool {
        self.hh == self.polyvector
    }
}

/// Graded HH of `k[x_1..x_vars]` against `Λ^i Der` per internal degree.
pub fn hkr_compare(vars: usize, max_arity: usize, degrees: std::ops::RangeInclusive<i64>) -> Result<Vec<HkrRow>, HochError> {
    if vars == 0 || vars > 2 {
        return Err(HochError::Cap(format!("vars = {vars} (1..=2 supported)")));
    }
    let weight_cap = max_arity as i64 + 1;
    let top = *degrees.end() + weight_cap;
    let a = AssocAlgebra::truncated_poly(vars, top.max(1) as usize);
    let table = graded_hh(&a, max_arity, degrees, Some(weight_cap), HochSign::Plain)?;
    // Der is free on the degree −1 derivations.
    let rank_der = derivation_dim(vars, -1);
    let poly_dim = |d: i64| -> usize { if d < 0 { 0 } else { binomial(d as usize + vars - 1, vars - 1) } };
    Ok(table
        .into_iter()
        .map(|c| HkrRow {
            arity: c.arity,
            degree: c.degree,
            hh: c.dim,
            polyvector: binomial(rank_der, c.arity) * poly_dim(c.degree + c.arity as i64),
        })
        .collect())
}

/// Graded algebra with a degree `+1` square-zero derivation.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    pub algebra: AssocAlgebra,
    pub q: ExactMatrix,
}

impl DgAlgebra {
    pub fn new(algebra: AssocAlgebra, q_op: ExactMatrix) -> Result<Self, HochError> {
        let d = algebra.dim();
        if algebra.grading().is_none() {
            return Err(HochError::Ungraded);
        }
        if q_op.rows() != d || q_op.cols() != d {
            return Err(HochError::InvalidDg("Q has the wrong shape".into()));
        }
        if !q_op.mul(&q_op).is_zero() {
            return Err(HochError::InvalidDg("Q² ≠ 0".into()));
        }
        for s in 0..d {
            for t in 0..d {
                if !q_op.get(t, s).is_zero() && algebra.degree(t) != algebra.degree(s) + 1 {
                    return Err(HochError::InvalidDg(format!("Q does not raise degree on e{s}")));
                }
            }
        }
        for x in 0..d {
            for y in 0..d {
                let (ex, ey) = (algebra.basis_vector(x), algebra.basis_vector(y));
                let lhs = q_op.mul_vec(&algebra.mul(&ex, &ey));
                let r1 = algebra.mul(&q_op.mul_vec(&ex), &ey);
                let s = neg_pow(algebra.degree(x));
                let r2 = algebra.mul(&ex, &q_op.mul_vec(&ey));
                if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (a, b))| *l != a + &s * b) {
                    return Err(HochError::InvalidDg(format!("Leibniz fails on (e{x}, e{y})")));
                }
            }
        }
        Ok(DgAlgebra { algebra, q: q_op })
    }
}

/// Sign reading for the argument term of `Q` acting on cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSign {
    /// Exponent `v_1+…+v_{j−1}+f+n−1` exactly as printed.
    Literal,
    /// Exponent `v_1+…+v_{j−1}+f`.
    Koszul,
}

/// Matrix of `f ↦ Qf` on `C^n(A)`:
/// `(Qf)(a) = Q(f(a)) − Σ_j (−1)^{ε_j} f(…, Q a_j, …)`.
pub fn q_on_cochains(dg: &DgAlgebra, n: usize, sign: QSign) -> ExactMatrix {
    let a = &dg.algebra;
    let d = a.dim();
    let dim = cochain_dim(a, n);
    let mut m = ExactMatrix::zeros(dim, dim);
    for u in all_tuples(d, n) {
        let ui = flat_index(&u, d);
        for b in 0..d {
            for k in 0..d {
                let c = dg.q.get(k, b);
                if !c.is_zero() {
                    m.add_at(ui * d + k, ui * d + b, c);
                }
            }
        }
        for j in 0..n {
            let prefix: i64 = u[..j].iter().map(|&i| a.degree(i)).sum();
            for mm in 0..d {
                let c = dg.q.get(mm, u[j]);
                if c.is_zero() {
                    continue;
                }
                let mut s = u.clone();
                s[j] = mm;
                let si = flat_index(&s, d);
                for b in 0..d {
                    let f = internal_degree(a, &s, b);
                    let e = match sign {
                        QSign::Literal => prefix + f + n as i64 - 1,
                        QSign::Koszul => prefix + f,
                    };
                    m.add_at(ui * d + b, si * d + b, &(-(c * neg_pow(e))));
                }
            }
        }
    }
    m
}

/// Matrix of `(−1)^n Q + d_Hoch: C^n → C^n ⊕ C^{n+1}`, returned as the two blocks.
pub fn dg_total_blocks(dg: &DgAlgebra, n: usize, qsign: QSign, dsign: HochSign) -> (ExactMatrix, ExactMatrix) {
    let qn = q_on_cochains(dg, n, qsign).scale(&neg_pow(n as i64));
    (qn, d_hoch_matrix(&dg.algebra, n, dsign))
}

/// Applies the total differential to a family `(f_n)` of cochains of arities `0..`.
pub fn dg_total_differential(dg: &DgAlgebra, f: &[Vec<Rational>], qsign: QSign, dsign: HochSign) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..=f.len()).map(|n| vec![Rational::zero(); cochain_dim(&dg.algebra, n)]).collect();
    for (n, fn_) in f.iter().enumerate() {
        let (qn, dn) = dg_total_blocks(dg, n, qsign, dsign);
        for (o, x) in out[n].iter_mut().zip(qn.mul_vec(fn_)) {
            *o += x;
        }
        for (o, x) in out[n + 1].iter_mut().zip(dn.mul_vec(fn_)) {
            *o += x;
        }
    }
    out
}

/// Checks `total² = 0` on `C^0..C^max_arity` blockwise: `Q² = 0`,
/// `d² = 0` and the mixed term `(−1)^{n+1} Q d + (−1)^n d Q = 0`.
pub fn dg_total_squares_to_zero(dg: &DgAlgebra, max_arity: usize, qsign: QSign, dsign: HochSign) -> Result<(), String> {
    for n in 0..=max_arity {
        let (qn, dn) = dg_total_blocks(dg, n, qsign, dsign);
        let (qn1, dn1) = dg_total_blocks(dg, n + 1, qsign, dsign);
        if !qn.mul(&qn).is_zero() {
            return Err(format!("Q² ≠ 0 on arity {n}"));
        }
        if !dn1.mul(&dn).is_zero() {
            return Err(format!("d² ≠ 0 on arity {n}"));
        }
        if !qn1.mul(&dn).add(&dn.mul(&qn)).is_zero() {
            return Err(format!("mixed term ≠ 0 on arity {n}"));
        }
    }
    Ok(())
}

/// Coefficients of `(a∘b)∘c − a∘(b∘c)` in `t^0, t^1, t^2` for
/// `a∘b = ab + t f(a,b)`, on every basis triple.
pub fn deformed_associator(a: &AssocAlgebra, f: &[Rational]) -> Result<[Vec<Rational>; 3], HochError> {
    let d = a.dim();
    let expected = cochain_dim(a, 2);
    if f.len() != expected {
        return Err(HochError::Length { expected, found: f.len() });
    }
    // Product of t-polynomials with vector coefficients, truncated after t².
    type TVec = [Vec<Rational>; 3];
    let zero = || vec![Rational::zero(); d];
    let fmul = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let base = (i * d + j) * d;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &f[base + k];
                    if !c.is_zero() {
                        *o += xi * yj * c;
                    }
                }
            }
        }
        out
    };
    let star = |x: &TVec, y: &TVec| -> TVec {
        let mut out = [zero(), zero(), zero()];
        for i in 0..3 {
            for j in 0..3 - i {
                let ab = a.mul(&x[i], &y[j]);
                for (o, v) in out[i + j].iter_mut().zip(ab) {
                    *o += v;
                }
                if i + j + 1 < 3 {
                    let fab = fmul(&x[i], &y[j]);
                    for (o, v) in out[i + j + 1].iter_mut().zip(fab) {
                        *o += v;
                    }
                }
            }
        }
        out
    };
    let lift = |i: usize| -> TVec { [a.basis_vector(i), zero(), zero()] };
    let mut res: [Vec<Rational>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let l = star(&star(&lift(x), &lift(y)), &lift(z));
                let r = star(&lift(x), &star(&lift(y), &lift(z)));
                for k in 0..3 {
                    res[k].extend(l[k].iter().zip(&r[k]).map(|(p, q)| p - q));
                }
            }
        }
    }
    Ok(res)
}

/// Both criteria for `a∘b = ab + t f(a,b)` being associative to first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCheck {
    pub cocycle: bool,
    pub first_order_associative: bool,
}

impl DeformationCheck {
    pub fn agree(&self) -> bool {
        self.cocycle == self.first_order_associative
    }
}

pub fn deformation_check(a: &AssocAlgebra, f: &[Rational]) -> Result<DeformationCheck, HochError> {
    let df = d_hoch(a, 2, f, HochSign::Plain)?;
    let assoc = deformed_associator(a, f)?;
    Ok(DeformationCheck {
        cocycle: df.iter().all(Zero::is_zero),
        first_order_associative: assoc[1].iter().all(Zero::is_zero),
    })
}

/// Caps for the trace cochain.
pub const TRACE_MAX_N: usize = 3;
pub const TRACE_MAX_K: usize = 4;

/// `Φ(g_1,…,g_k) = Σ_σ sgn σ Tr(g_σ(1)⋯g_σ(k))` as a CE cochain on `gl(n)`
/// with trivial coefficients, in increasing-tuple coordinates.
pub fn trace_cochain(n: usize, k: usize) -> Result<Vec<Rational>, HochError> {
    if n == 0 || n > TRACE_MAX_N || k > TRACE_MAX_K {
        return Err(HochError::Cap(format!("n = {n}, k = {k}")));
    }
    let mats = AssocAlgebra::matrix_algebra(n);
    let trace = |v: &[Rational]| -> Rational { (0..n).map(|i| v[i * n + i].clone()).sum() };
    let perms = permutations(k);
    Ok(increasing_tuples(n * n, k)
        .into_iter()
        .map(|t| {
            let mut acc = Rational::zero();
            for p in &perms {
                let mut prod = mats.unit().to_vec();
                for &i in p {
                    prod = mats.mul(&prod, &mats.basis_vector(t[i]));
                }
                acc += trace(&prod) * q(perm_sign(p));
            }
            acc
        })
        .collect())
}

/// `δΦ = 0` on `gl(n)`.
pub fn trace_cochain_is_cocycle(n: usize, k: usize) -> Result<bool, HochError> {
    let g = LieAlgebra::gl(n);
    if k > g.dim() {
        return Ok(true);
    }
    let c = ce_complex(&g, &LieModule::trivial(&g, 1), k)?;
    let phi = trace_cochain(n, k)?;
    Ok(c.verify_cocycle(k, &phi)?.is_none())
}

/// Pullback of `Φ^n` along `gl(n−1) → gl(n)` equals `Φ^{n−1}`.
pub fn trace_restriction_holds(n: usize, k: usize) -> Result<bool, HochError> {
    if n < 2 {
        return Err(HochError::Cap("restriction needs n ≥ 2".into()));
    }
    let big = trace_cochain(n, k)?;
    let small = trace_cochain(n - 1, k)?;
    let m = n - 1;
    let embed = |e: usize| (e / m) * n + e % m;
    let big_tuples = crate::combin::index_map(&increasing_tuples(n * n, k));
    let pulled: Vec<Rational> = increasing_tuples(m * m, k)
        .into_iter()
        .map(|t| {
            let img: Vec<usize> = t.iter().map(|&e| embed(e)).collect();
            let (sorted, sign) = crate::combin::sort_sign(&img).expect("embedding is injective");
            &big[big_tuples[&sorted]] * q(sign)
        })
        .collect();
    Ok(pulled == small)
}

/// `τ ∈ C^k(A; A*)` stored as `τ(a_0; a_1,…,a_k)` at `flat(a_0,…,a_k)`.
pub fn dual_hoch_dim(a: &AssocAlgebra, k: usize) -> usize {
    a.dim().pow(k as u32 + 1)
}

/// `(dτ)(a_0; a_1..a_{k+1}) = τ(a_0a_1; a_2..) + Σ_j (−1)^j τ(a_0; ..a_ja_{j+1}..) + (−1)^{k+1} τ(a_{k+1}a_0; a_1..a_k)`.
pub fn d_hoch_dual(a: &AssocAlgebra, k: usize, tau: &[Rational]) -> Vec<Rational> {
    let d = a.dim();
    let mut out = vec![Rational::zero(); dual_hoch_dim(a, k + 1)];
    for (ui, u) in all_tuples(d, k + 2).into_iter().enumerate() {
        let mut acc = Rational::zero();
        for (m, c) in a.product_basis(u[0], u[1]) {
            let mut s = vec![*m];
            s.extend_from_slice(&u[2..]);
            acc += c * &tau[flat_index(&s, d)];
        }
        for j in 1..=k {
            for (m, c) in a.product_basis(u[j], u[j + 1]) {
                let mut s = u[..j].to_vec();
                s.push(*m);
                s.extend_from_slice(&u[j + 2..]);
                acc += c * &tau[flat_index(&s, d)] * neg_pow(j as i64);
            }
        }
        for (m, c) in a.product_basis(u[k + 1], u[0]) {
            let mut s = vec![*m];
            s.extend_from_slice(&u[1..=k]);
            acc += c * &tau[flat_index(&s, d)] * neg_pow(k as i64 + 1);
        }
        out[ui] = acc;
    }
    out
}

/// Caps for `φ^n`.
pub const PHI_MAX_N: usize = 2;
pub const PHI_MAX_K: usize = 3;
pub const PHI_MAX_DIM_A: usize = 2;

/// `φ^n(τ)` as a CE cochain on `gl_n(A)` valued in `gl_n(A)*`:
/// `φ(τ)(M_1⊗a_1,…)(M_0⊗a_0) = Σ_σ sgn σ τ(a_0; a_σ(1),…) Tr(M_0 M_σ(1)⋯)`.
pub fn phi_map(a: &AssocAlgebra, n: usize, k: usize, tau: &[Rational]) -> Result<Vec<Rational>, HochError> {
    if n == 0 || n > PHI_MAX_N || k > PHI_MAX_K || a.dim() > PHI_MAX_DIM_A {
        return Err(HochError::Cap(format!("n = {n}, k = {k}, dim A = {}", a.dim())));
    }
    let expected = dual_hoch_dim(a, k);
    if tau.len() != expected {
        return Err(HochError::Length { expected, found: tau.len() });
    }
    let da = a.dim();
    let dg = n * n * da;
    let mats = AssocAlgebra::matrix_algebra(n);
    let split = |x: usize| (x / da, x % da);
    let perms = permutations(k);
    let mut out = Vec::new();
    for t in increasing_tuples(dg, k) {
        for x0 in 0..dg {
            let (m0, a0) = split(x0);
            let mut acc = Rational::zero();
            for p in &perms {
                let mut prod = mats.basis_vector(m0);
                let mut args = vec![a0];
                for &i in p {
                    let (mi, ai) = split(t[i]);
                    prod = mats.mul(&prod, &mats.basis_vector(mi));
                    args.push(ai);
                }
                let tr: Rational = (0..n).map(|i| prod[i * n + i].clone()).sum();
                if tr.is_zero() {
                    continue;
                }
                acc += tr * &tau[flat_index(&args, da)] * q(perm_sign(p));
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// Compares `δ φ(τ)` with `φ(dτ)`; returns the pair of cochains.
pub fn phi_chain_map_sides(a: &AssocAlgebra, n: usize, k: usize, tau: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>), HochError> {
    let g = a.gl_n_over(n);
    if k >= g.dim() {
        return Ok((Vec::new(), Vec::new()));
    }
    let coad = LieModule::adjoint(&g).dual();
    let c = ce_complex(&g, &coad, (k + 1).min(g.dim()))?;
    let lhs = c.complex.d[k].mul_vec(&phi_map(a, n, k, tau)?);
    let rhs = phi_map(a, n, k + 1, &d_hoch_dual(a, k, tau))?;
    Ok((lhs, rhs))
}

/// Pullback of `φ^{n'}(τ)` along `gl_n(A) → gl_{n'}(A)` (top-left block),
/// restricting both arguments and the coefficient functional.
pub fn phi_restrict(a: &AssocAlgebra, n: usize, n_big: usize, k: usize, phi_big: &[Rational]) -> Vec<Rational> {
    let da = a.dim();
    let embed = |x: usize| {
        let (m, b) = (x / da, x % da);
        ((m / n) * n_big + m % n) * da + b
    };
    let dg_big = n_big * n_big * da;
    let big_idx = crate::combin::index_map(&increasing_tuples(dg_big, k));
    let mut out = Vec::new();
    for t in increasing_tuples(n * n * da, k) {
        let img: Vec<usize> = t.iter().map(|&x| embed(x)).collect();
        let (sorted, sign) = crate::combin::sort_sign(&img).expect("injective");
        let ti = big_idx[&sorted];
        for x0 in 0..n * n * da {
            out.push(&phi_big[ti * dg_big + embed(x0)] * q(sign));
        }
    }
    out
}

/// Augmented bar complex `A^{⊗(i+2)} → … → A ⊗ A → A`, `i = −1..=max`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub dim_a: usize,
    /// `boundary[i+1]`: `B_i → B_{i−1}` for `i = 0..=max`.
    pub boundary: Vec<ExactMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarReport {
    /// `dim H_i` of the augmented complex for `i = −1..=max−1`.
    pub augmented_homology: Vec<usize>,
    /// `dim H_0` of the unaugmented complex.
    pub h0: usize,
}

fn bar_dim(d: usize, i: i64) -> usize {
    d.pow((i + 2) as u32)
}

/// `∂(a_0⊗…⊗a_{i+1}) = Σ_{j=0}^{i} (−1)^j a_0⊗…⊗a_ja_{j+1}⊗…`.
fn bar_boundary(a: &AssocAlgebra, i: i64) -> ExactMatrix {
    let d = a.dim();
    let len = (i + 2) as usize;
    let mut m = ExactMatrix::zeros(bar_dim(d, i - 1), bar_dim(d, i));
    for (col, t) in all_tuples(d, len).into_iter().enumerate() {
        for j in 0..len - 1 {
            for (mm, c) in a.product_basis(t[j], t[j + 1]) {
                let mut s = t[..j].to_vec();
                s.push(*mm);
                s.extend_from_slice(&t[j + 2..]);
                m.add_at(flat_index(&s, d), col, &(c * neg_pow(j as i64)));
            }
        }
    }
    m
}

pub fn bar_complex(a: &AssocAlgebra, max: usize, budget: usize) -> Result<BarComplex, HochError> {
    check_budget(bar_dim(a.dim(), max as i64) * bar_dim(a.dim(), max as i64 - 1), budget)?;
    let boundary = (0..=max as i64).map(|i| bar_boundary(a, i)).collect();
    Ok(BarComplex { dim_a: a.dim(), boundary })
}

impl BarComplex {
    pub fn check_boundary_squared(&self) -> bool {
        self.boundary.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    pub fn report(&self) -> BarReport {
        let max = self.boundary.len() as i64 - 1;
        let mut hom = Vec::new();
        for i in -1..max {
            let cycles = if i == -1 { bar_dim(self.dim_a, -1) } else { kernel(&self.boundary[i as usize]).dim() };
            let bounds = rank(&self.boundary[(i + 1) as usize]);
            hom.push(cycles - bounds);
        }
        let h0 = bar_dim(self.dim_a, 0) - if max >= 1 { rank(&self.boundary[1]) } else { 0 };
        BarReport { augmented_homology: hom, h0 }
    }

    /// Applies `∂` to a chain in `B_i`.
    pub fn apply(&self, i: i64, x: &[Rational]) -> Vec<Rational> {
        if i == -1 {
            return Vec::new();
        }
        self.boundary[i as usize].mul_vec(x)
    }
}

/// `σ(a_0⊗…⊗a_{i+1}) = a_0⊗…⊗a_{i+1}⊗1` with optional sign `(−1)^{i+1}`.
pub fn bar_splitting(a: &AssocAlgebra, i: i64, x: &[Rational], signed: bool) -> Vec<Rational> {
    let d = a.dim();
    let s = if signed { neg_pow(i + 1) } else { q(1) };
    let mut out = vec![Rational::zero(); bar_dim(d, i + 1)];
    for (xi, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (u, e) in a.unit().iter().enumerate() {
            if !e.is_zero() {
                out[xi * d + u] += c * e * &s;
            }
        }
    }
    out
}

/// `∂σx + σ∂x` for `x ∈ B_i` (`i ≥ −1`).
pub fn bar_homotopy(bar: &BarComplex, a: &AssocAlgebra, i: i64, x: &[Rational], signed: bool) -> Vec<Rational> {
    let mut out = bar.apply(i + 1, &bar_splitting(a, i, x, signed));
    if i >= 0 {
        let dx = bar.apply(i, x);
        for (o, v) in out.iter_mut().zip(bar_splitting(a, i - 1, &dx, signed)) {
            *o += v;
        }
    }
    out
}

/// Graded subspace of cochains of internal degree `p` in `C^n(A)`.
pub fn internal_degree_subspace(a: &AssocAlgebra, n: usize, p: i64) -> Subspace {
    let d = a.dim();
    let idx: Vec<usize> = all_tuples(d, n)
        .iter()
        .enumerate()
        .flat_map(|(ti, t)| (0..d).filter(move |&b| internal_degree(a, t, b) == p).map(move |b| ti * d + b))
        .collect();
    Subspace::coordinate(cochain_dim(a, n), &idx)
}
