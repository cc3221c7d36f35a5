//! Exact rational linear algebra.
//!
//! Matrices act on column vectors: an `m x n` matrix maps `Q^n -> Q^m`.
//! Subspaces are stored as the nonzero rows of their reduced row echelon
//! form, so two spans of the same space compare equal structurally.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (no decimals).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        ExactMatrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        let e = &mut self.data[i * self.cols + j];
        *e += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack height");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn kron(&self, other: &ExactMatrix) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(self.cols, idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn commutator(&self, other: &ExactMatrix) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    row.iter().map(|x| (x.numer() * &l) / x.denom()).collect()
}

/// Fraction-free forward elimination: returns the echelon rows (integers)
/// and their pivot columns.
fn bareiss_echelon(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let n = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pr = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &pr[c] * &row[j] - &f * &pr[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rref_rows(rows: &[Vec<Rational>], cols: usize) -> Rref {
    let (ech, pivots) = bareiss_echelon(rows, cols);
    let mut out: Vec<Vec<Rational>> = ech
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let pv = row[p].clone();
            row.into_iter().map(|x| Rational::new(x, pv.clone())).collect()
        })
        .collect();
    for k in (0..out.len()).rev() {
        let p = pivots[k];
        let (above, rest) = out.split_at_mut(k);
        let pr = &rest[0];
        for row in above.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for j in p..cols {
                if !pr[j].is_zero() {
                    let t = &f * &pr[j];
                    row[j] -= t;
                }
            }
        }
    }
    Rref { rows: out, pivots }
}

pub fn rref(m: &ExactMatrix) -> Rref {
    rref_rows(&m.row_vecs(), m.cols())
}

pub fn rank(m: &ExactMatrix) -> usize {
    bareiss_echelon(&m.row_vecs(), m.cols()).1.len()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: ExactMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: ExactMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
        }
        let r = rref_rows(vectors, ambient);
        Subspace {
            ambient,
            basis: ExactMatrix::from_rows(ambient, r.rows),
            pivots: r.pivots,
        }
    }

    pub fn row_space(m: &ExactMatrix) -> Self {
        Self::span(m.cols(), &m.row_vecs())
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let vs: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() {
                    r[j] -= &f * b;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Rational::zero(); self.ambient];
        for (k, ck) in c.iter().enumerate() {
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() {
                    recon[j] += ck * b;
                }
            }
        }
        (recon == v).then_some(c)
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &ExactMatrix) -> Result<Subspace, LinError> {
        check_dim(m.cols(), self.ambient)?;
        let vs: Vec<Vec<Rational>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Ok(Subspace::span(m.rows(), &vs))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), LinError> {
    if expected != found {
        Err(LinError::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

pub fn kernel(m: &ExactMatrix) -> Subspace {
    let n = m.cols();
    let r = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let vs: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vs)
}

pub fn image(m: &ExactMatrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace, LinError> {
    check_dim(u.ambient, v.ambient)?;
    Ok(Subspace::row_space(&u.basis.vstack(&v.basis)))
}

/// Solves `a·U = b·V` through the kernel of the stacked system.
pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinError> {
    check_dim(u.ambient, v.ambient)?;
    if u.dim() == 0 || v.dim() == 0 {
        return Ok(Subspace::zero(u.ambient));
    }
    let stacked = u.basis.vstack(&v.basis.scale(&q(-1)));
    let ker = kernel(&stacked.transpose());
    let du = u.dim();
    let vs: Vec<Vec<Rational>> = ker
        .basis_vecs()
        .into_iter()
        .map(|ab| {
            let mut x = vec![Rational::zero(); u.ambient];
            for (k, a) in ab[..du].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in u.basis.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        x[j] += a * b;
                    }
                }
            }
            x
        })
        .collect();
    Ok(Subspace::span(u.ambient, &vs))
}

/// Annihilator of `v` as a matrix whose kernel is exactly `v`.
pub fn annihilator(v: &Subspace) -> ExactMatrix {
    let perp = kernel(&v.basis);
    perp.basis.clone()
}

/// `{x : m·x ∈ v}`.
pub fn preimage(m: &ExactMatrix, v: &Subspace) -> Result<Subspace, LinError> {
    check_dim(m.rows(), v.ambient)?;
    let a = annihilator(v);
    if a.rows() == 0 {
        return Ok(Subspace::full(m.cols()));
    }
    Ok(kernel(&a.mul(m)))
}

pub fn quotient_dim(u: &Subspace, v: &Subspace) -> Result<usize, LinError> {
    check_dim(u.ambient, v.ambient)?;
    if !u.contains_subspace(v) {
        return Err(LinError::NotContained);
    }
    Ok(u.dim() - v.dim())
}

/// Incremental echelon basis for greedy independence tests.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon {
    ambient: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl IncrementalEchelon {
    pub fn new(ambient: usize) -> Self {
        IncrementalEchelon {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (j, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    r[j] -= &f * b;
                }
            }
        }
        r
    }

    pub fn is_independent(&self, v: &[Rational]) -> bool {
        self.residual(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let r = self.residual(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &r[p];
        let r: Vec<Rational> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, b) in r.iter().enumerate() {
                if !b.is_zero() {
                    row[j] -= &f * b;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// The quotient `Z / D` with `D ⊆ Z`, with canonical complement representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    reps: Vec<Vec<Rational>>,
    cols: Vec<usize>,
    inverse: ExactMatrix,
    stacked: ExactMatrix,
}

impl Quotient {
    pub fn new(z: &Subspace, d: &Subspace) -> Result<Self, LinError> {
        check_dim(z.ambient, d.ambient)?;
        if !z.contains_subspace(d) {
            return Err(LinError::NotContained);
        }
        let mut ech = IncrementalEchelon::new(z.ambient);
        for v in d.basis_vecs() {
            ech.insert(&v);
        }
        let mut reps = Vec::new();
        for v in z.basis_vecs() {
            if ech.insert(&v) {
                reps.push(v);
            }
        }
        let mut all = reps.clone();
        all.extend(d.basis_vecs());
        let stacked = ExactMatrix::from_rows(z.ambient, all);
        let cols = rref(&stacked).pivots;
        let square = stacked.select_cols(&cols);
        let inverse = invert(&square).expect("independent rows give an invertible block");
        Ok(Quotient {
            ambient: z.ambient,
            reps,
            cols,
            inverse,
            stacked,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<Rational>] {
        &self.reps
    }

    /// Coordinates of the class of `x` in the rep basis; `None` when `x ∉ Z`.
    pub fn coords(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(x.len(), self.ambient);
        let xj: Vec<Rational> = self.cols.iter().map(|&c| x[c].clone()).collect();
        let c = self.inverse.transpose().mul_vec(&xj);
        let recon = self.stacked.transpose().mul_vec(&c);
        if recon != x {
            return None;
        }
        Some(c[..self.reps.len()].to_vec())
    }
}

pub fn invert(m: &ExactMatrix) -> Option<ExactMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    if n == 0 {
        return Some(ExactMatrix::zeros(0, 0));
    }
    let aug = m.hstack(&ExactMatrix::identity(n));
    let r = rref(&aug);
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = ExactMatrix::zeros(n, n);
    for (i, row) in r.rows.iter().enumerate().take(n) {
        for j in 0..n {
            inv.set(i, j, row[n + j].clone());
        }
    }
    Some(inv)
}
