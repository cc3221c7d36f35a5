//! Truncated q-series over nilpotent Chern-root polynomials, characteristic
//! classes, elliptic-genus prototype products and the spectral
//! Patterson–Selberg and Ruelle functions.
//!
//! Series are truncated at `q^K`; root polynomials drop monomials of total
//! degree at least `N`. Half-integer powers of `q` use a doubled internal
//! grading (`denom = 2`).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::combin::{increasing_tuples, multisets};
use crate::exactlin::{q, qf, Rational};

pub const MAX_ROOT_VARS: usize = 4;
pub const MAX_NILPOTENT_ORDER: u32 = 8;
pub const MAX_CLASS_ORDER: u32 = 6;
pub const MAX_SERIES_CAP: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneraError {
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("θ is a multiple of 2π")]
    Pole,
    #[error("divergent parameters: {0}")]
    Divergent(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("constant term is not invertible")]
    NotInvertible,
}

pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn from_q(r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_q(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for Complex64 {
    fn from_q(r: &Rational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// Polynomial in `m` Chern roots modulo monomials of total degree `≥ order`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootPoly<C> {
    pub m: usize,
    pub order: u32,
    pub terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> RootPoly<C> {
    pub fn zero(m: usize, order: u32) -> Self {
        RootPoly { m, order, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, order: u32, c: C) -> Self {
        let mut r = Self::zero(m, order);
        r.push(vec![0; m], c);
        r
    }

    pub fn one(m: usize, order: u32) -> Self {
        Self::constant(m, order, C::one())
    }

    /// `Σ a_j x_j`.
    pub fn linear(m: usize, order: u32, form: &[C]) -> Self {
        let mut r = Self::zero(m, order);
        for (j, a) in form.iter().enumerate() {
            let mut e = vec![0; m];
            e[j] = 1;
            r.push(e, a.clone());
        }
        r
    }

    fn push(&mut self, k: Vec<u32>, c: C) {
        if k.iter().sum::<u32>() >= self.order || c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(C::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.m])
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.push(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = Self::zero(self.m, self.order);
        for (k, c) in &self.terms {
            r.push(k.clone(), c.clone() * s.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.m, self.order);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let k: Vec<u32> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                r.push(k, c1.clone() * c2.clone());
            }
        }
        r
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.m, self.order), |acc, _| acc.mul(self))
    }

    /// `c_0(1 + u)` inverts to `c_0^{-1} Σ (−u)^k`, finite since `u` is nilpotent.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return None;
        }
        let inv0 = C::one() / c0;
        let u = self.scale(&inv0).sub(&Self::one(self.m, self.order)).scale(&-C::one());
        let mut acc = Self::one(self.m, self.order);
        let mut term = Self::one(self.m, self.order);
        for _ in 1..self.order.max(1) {
            term = term.mul(&u);
            acc = acc.add(&term);
        }
        Some(acc.scale(&inv0))
    }

    /// `Σ c_k L^k` for `L` without constant term.
    pub fn subst(coeffs: &[C], l: &Self) -> Self {
        let mut acc = Self::zero(l.m, l.order);
        let mut pw = Self::one(l.m, l.order);
        for c in coeffs.iter().take(l.order as usize) {
            acc = acc.add(&pw.scale(c));
            pw = pw.mul(l);
        }
        acc
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> RootPoly<D> {
        let mut r = RootPoly::zero(self.m, self.order);
        for (k, c) in &self.terms {
            r.push(k.clone(), f(c));
        }
        r
    }
}

fn exp_coeffs<C: Scalar>(n: u32) -> Vec<C> {
    let mut out = Vec::new();
    let mut f = Rational::one();
    for k in 0..n {
        if k > 0 {
            f /= q(k as i64);
        }
        out.push(C::from_q(&f));
    }
    out
}

/// `e^{Σ a_j x_j}` truncated at the nilpotent order.
pub fn exp_linear<C: Scalar>(m: usize, order: u32, form: &[C]) -> RootPoly<C> {
    RootPoly::subst(&exp_coeffs::<C>(order), &RootPoly::linear(m, order, form))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesCtx {
    /// Number of root generators.
    pub m: usize,
    /// Nilpotent order.
    pub order: u32,
    /// Largest retained power of `q`.
    pub cap: u32,
    /// Internal steps per unit power of `q` (1 or 2).
    pub denom: u32,
}

impl SeriesCtx {
    pub fn new(m: usize, order: u32, cap: u32) -> Result<Self, GeneraError> {
        if m > MAX_ROOT_VARS || order == 0 || order > MAX_NILPOTENT_ORDER || cap > MAX_SERIES_CAP {
            return Err(GeneraError::Cap(format!("m = {m}, N = {order}, K = {cap}")));
        }
        Ok(SeriesCtx { m, order, cap, denom: 1 })
    }

    pub fn halved(self) -> Self {
        SeriesCtx { denom: 2, ..self }
    }

    pub fn len(&self) -> usize {
        (self.cap * self.denom) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `Σ_i a_i q^{i / denom}`, `i ≤ K·denom`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    pub ctx: SeriesCtx,
    pub coeffs: Vec<RootPoly<C>>,
}

impl<C: Scalar> QSeries<C> {
    pub fn zero(ctx: SeriesCtx) -> Self {
        QSeries { ctx, coeffs: vec![RootPoly::zero(ctx.m, ctx.order); ctx.len()] }
    }

    pub fn one(ctx: SeriesCtx) -> Self {
        let mut s = Self::zero(ctx);
        s.coeffs[0] = RootPoly::one(ctx.m, ctx.order);
        s
    }

    /// `1 + a q^{step/denom}`.
    pub fn linear_factor(ctx: SeriesCtx, a: &RootPoly<C>, step: usize) -> Self {
        let mut s = Self::one(ctx);
        if step < ctx.len() {
            s.coeffs[step] = s.coeffs[step].add(a);
        }
        s
    }

    /// `(1 − a q^{step/denom})^{-1} = Σ a^r q^{r·step/denom}`.
    pub fn geometric(ctx: SeriesCtx, a: &RootPoly<C>, step: usize) -> Self {
        let mut s = Self::zero(ctx);
        let mut pw = RootPoly::one(ctx.m, ctx.order);
        let mut i = 0;
        while i < ctx.len() {
            s.coeffs[i] = pw.clone();
            pw = pw.mul(a);
            if step == 0 {
                break;
            }
            i += step;
        }
        s
    }

    pub fn coeff(&self, i: usize) -> &RootPoly<C> {
        &self.coeffs[i]
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        QSeries { ctx: self.ctx, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        QSeries { ctx: self.ctx, coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        QSeries { ctx: self.ctx, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ctx, o.ctx, "series contexts differ");
        let n = self.ctx.len();
        let mut out = Self::zero(self.ctx);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        out
    }

    /// Inverse when the constant coefficient has invertible constant term.
    pub fn inverse(&self) -> Result<Self, GeneraError> {
        let a0inv = self.coeffs[0].inverse().ok_or(GeneraError::NotInvertible)?;
        let n = self.ctx.len();
        let mut b: Vec<RootPoly<C>> = Vec::with_capacity(n);
        b.push(a0inv.clone());
        for k in 1..n {
            let mut acc = RootPoly::zero(self.ctx.m, self.ctx.order);
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&b[k - i]));
            }
            b.push(acc.mul(&a0inv).scale(&-C::one()));
        }
        Ok(QSeries { ctx: self.ctx, coeffs: b })
    }

    /// Same series with the `q`-grading refined by `factor`.
    pub fn refine(&self, factor: u32) -> Self {
        let ctx = SeriesCtx { denom: self.ctx.denom * factor, ..self.ctx };
        let mut out = Self::zero(ctx);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * factor as usize] = c.clone();
        }
        out
    }

    /// Constant terms of the root polynomials, as a plain `q`-series.
    pub fn scalar_part(&self) -> Vec<C> {
        self.coeffs.iter().map(RootPoly::constant_term).collect()
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D + Copy) -> QSeries<D> {
        QSeries { ctx: self.ctx, coeffs: self.coeffs.iter().map(|c| c.map(f)).collect() }
    }
}

impl QSeries<Complex64> {
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let mut m = 0f64;
        for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
            let d = a.sub(b);
            for c in d.terms.values() {
                m = m.max(c.norm());
            }
        }
        m
    }
}

/// Chern roots as linear forms in `m` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleRoots {
    pub m: usize,
    pub roots: Vec<Vec<Rational>>,
    pub complexified: bool,
}

impl BundleRoots {
    /// Roots `x_1, …, x_m`.
    pub fn generators(m: usize) -> Self {
        let roots = (0..m)
            .map(|j| {
                let mut f = vec![Rational::zero(); m];
                f[j] = Rational::one();
                f
            })
            .collect();
        BundleRoots { m, roots, complexified: false }
    }

    pub fn from_roots(m: usize, roots: Vec<Vec<Rational>>) -> Result<Self, GeneraError> {
        if roots.iter().any(|r| r.len() != m) {
            return Err(GeneraError::Params("root length".into()));
        }
        Ok(BundleRoots { m, roots, complexified: false })
    }

    /// `count` roots equal to zero: a trivial bundle of that rank.
    pub fn trivial(m: usize, count: usize) -> Self {
        BundleRoots { m, roots: vec![vec![Rational::zero(); m]; count], complexified: false }
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// Roots `±x_j`.
    pub fn complexify(&self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(self.roots.iter().map(|r| r.iter().map(|a| -a).collect()));
        BundleRoots { m: self.m, roots, complexified: true }
    }

    pub fn dual(&self) -> Self {
        BundleRoots { m: self.m, roots: self.roots.iter().map(|r| r.iter().map(|a| -a).collect()).collect(), complexified: self.complexified }
    }

    pub fn direct_sum(&self, o: &BundleRoots) -> Result<Self, GeneraError> {
        if self.m != o.m {
            return Err(GeneraError::Params("generator counts differ".into()));
        }
        let mut roots = self.roots.clone();
        roots.extend(o.roots.iter().cloned());
        Ok(BundleRoots { m: self.m, roots, complexified: self.complexified && o.complexified })
    }

    fn exp_root<C: Scalar>(&self, j: usize, order: u32) -> RootPoly<C> {
        let form: Vec<C> = self.roots[j].iter().map(C::from_q).collect();
        exp_linear(self.m, order, &form)
    }
}

fn check_bundle(e: &BundleRoots, ctx: SeriesCtx) -> Result<(), GeneraError> {
    if e.m != ctx.m {
        return Err(GeneraError::Params(format!("bundle has {} generators, context {}", e.m, ctx.m)));
    }
    Ok(())
}

/// `∏_j (1 − z q^{step} e^{x_j})^{-1}`, `step` in internal units.
pub fn s_power<C: Scalar>(e: &BundleRoots, z: &C, step: usize, ctx: SeriesCtx) -> Result<QSeries<C>, GeneraError> {
    check_bundle(e, ctx)?;
    let mut s = QSeries::one(ctx);
    for j in 0..e.rank() {
        let a = e.exp_root::<C>(j, ctx.order).scale(z);
        s = s.mul(&QSeries::geometric(ctx, &a, step));
    }
    Ok(s)
}

/// `∏_j (1 + z q^{step} e^{x_j})`.
pub fn lambda_power<C: Scalar>(e: &BundleRoots, z: &C, step: usize, ctx: SeriesCtx) -> Result<QSeries<C>, GeneraError> {
    check_bundle(e, ctx)?;
    let mut s = QSeries::one(ctx);
    for j in 0..e.rank() {
        let a = e.exp_root::<C>(j, ctx.order).scale(z);
        s = s.mul(&QSeries::linear_factor(ctx, &a, step));
    }
    Ok(s)
}

/// `S_q(zE) = Σ z^r q^r ch Sym^r E`.
pub fn s_q<C: Scalar>(e: &BundleRoots, z: &C, ctx: SeriesCtx) -> Result<QSeries<C>, GeneraError> {
    s_power(e, z, ctx.denom as usize, ctx)
}

/// `Λ_q(zE) = Σ z^r q^r ch Alt^r E`.
pub fn lambda_q<C: Scalar>(e: &BundleRoots, z: &C, ctx: SeriesCtx) -> Result<QSeries<C>, GeneraError> {
    lambda_power(e, z, ctx.denom as usize, ctx)
}

/// `ch Sym^r E = Σ_{multisets} e^{x_{i_1} + … + x_{i_r}}`.
pub fn sym_character<C: Scalar>(e: &BundleRoots, r: usize, order: u32) -> RootPoly<C> {
    tuple_character(e, &multisets(e.rank(), r), order)
}

/// `ch Alt^r E = Σ_{i_1 < … < i_r} e^{x_{i_1} + … + x_{i_r}}`.
pub fn alt_character<C: Scalar>(e: &BundleRoots, r: usize, order: u32) -> RootPoly<C> {
    tuple_character(e, &increasing_tuples(e.rank(), r), order)
}

fn tuple_character<C: Scalar>(e: &BundleRoots, tuples: &[Vec<usize>], order: u32) -> RootPoly<C> {
    let mut acc = RootPoly::zero(e.m, order);
    for t in tuples {
        let mut form = vec![Rational::zero(); e.m];
        for &j in t {
            for (f, a) in form.iter_mut().zip(&e.roots[j]) {
                *f += a;
            }
        }
        let form: Vec<C> = form.iter().map(C::from_q).collect();
        acc = acc.add(&exp_linear(e.m, order, &form));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesIdentities {
    /// `S_q E · Λ_{−q} E = 1`.
    pub s_lambda_inverse: bool,
    /// `Λ_q E · S_{−q} E = 1`.
    pub lambda_s_inverse: bool,
    /// `q^r` coefficient of `S_q E` is `ch Sym^r E`.
    pub sym_characters: bool,
    /// `q^r` coefficient of `Λ_q E` is `ch Alt^r E`.
    pub alt_characters: bool,
}

impl SeriesIdentities {
    pub fn holds(&self) -> bool {
        self.s_lambda_inverse && self.lambda_s_inverse && self.sym_characters && self.alt_characters
    }
}

pub fn series_inverse_identities(e: &BundleRoots, ctx: SeriesCtx) -> Result<SeriesIdentities, GeneraError> {
    let one = Rational::one();
    let s = s_q(e, &one, ctx)?;
    let l = lambda_q(e, &one, ctx)?;
    let s_neg = s_q(e, &-one.clone(), ctx)?;
    let l_neg = lambda_q(e, &-one.clone(), ctx)?;
    let unit = QSeries::one(ctx);
    let r_max = ctx.cap as usize;
    Ok(SeriesIdentities {
        s_lambda_inverse: s.mul(&l_neg) == unit,
        lambda_s_inverse: l.mul(&s_neg) == unit,
        sym_characters: (0..=r_max).all(|r| s.coeffs[r * ctx.denom as usize] == sym_character(e, r, ctx.order)),
        alt_characters: (0..=r_max).all(|r| l.coeffs[r * ctx.denom as usize] == alt_character(e, r, ctx.order)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumIdentities {
    /// `S_q(E⊕F) = S_qE · S_qF`.
    pub s_sum: bool,
    /// `Λ_q(E⊕F) = Λ_qE · Λ_qF`.
    pub lambda_sum: bool,
    /// `Sym^n(E⊕F) = ⊕ Sym^i E ⊗ Sym^{n−i} F` on characters.
    pub sym_convolution: bool,
    pub alt_convolution: bool,
    /// `S_q(E⊖F) · S_qF = S_qE` with `S_q(E⊖F) = S_qE · Λ_{−q}F`.
    pub s_difference: bool,
    /// `Λ_q(E⊖F) · Λ_qF = Λ_qE` with `Λ_q(E⊖F) = Λ_qE · S_{−q}F`.
    pub lambda_difference: bool,
}

impl SumIdentities {
    pub fn holds(&self) -> bool {
        self.s_sum && self.lambda_sum && self.sym_convolution && self.alt_convolution && self.s_difference && self.lambda_difference
    }
}

pub fn sum_identities(e: &BundleRoots, f: &BundleRoots, ctx: SeriesCtx) -> Result<SumIdentities, GeneraError> {
    let one = Rational::one();
    let ef = e.direct_sum(f)?;
    let (se, sf, sef) = (s_q(e, &one, ctx)?, s_q(f, &one, ctx)?, s_q(&ef, &one, ctx)?);
    let (le, lf, lef) = (lambda_q(e, &one, ctx)?, lambda_q(f, &one, ctx)?, lambda_q(&ef, &one, ctx)?);
    let conv = |ch: &dyn Fn(&BundleRoots, usize) -> RootPoly<Rational>| {
        (0..=ctx.cap as usize).all(|n| {
            let mut acc = RootPoly::zero(ctx.m, ctx.order);
            for i in 0..=n {
                acc = acc.add(&ch(e, i).mul(&ch(f, n - i)));
            }
            acc == ch(&ef, n)
        })
    };
    let s_diff = se.mul(&lambda_q(f, &-one.clone(), ctx)?);
    let l_diff = le.mul(&s_q(f, &-one.clone(), ctx)?);
    Ok(SumIdentities {
        s_sum: sef == se.mul(&sf),
        lambda_sum: lef == le.mul(&lf),
        sym_convolution: conv(&|b, r| sym_character(b, r, ctx.order)),
        alt_convolution: conv(&|b, r| alt_character(b, r, ctx.order)),
        s_difference: s_diff.mul(&sf) == se && s_diff == se.mul(&sf.inverse()?),
        lambda_difference: l_diff.mul(&lf) == le && l_diff == le.mul(&lf.inverse()?),
    })
}

fn univariate_inverse<C: Scalar>(a: &[C]) -> Vec<C> {
    let n = a.len();
    let mut b = vec![C::one() / a[0].clone()];
    for k in 1..n {
        let mut acc = C::zero();
        for i in 1..=k {
            acc = acc + a[i].clone() * b[k - i].clone();
        }
        b.push(-(acc * b[0].clone()));
    }
    b
}

/// Coefficients of `x / (1 − e^{−x})` through `x^{n−1}`.
pub fn todd_coefficients(n: usize) -> Vec<Rational> {
    // (1 − e^{−x}) / x = Σ (−1)^k x^k / (k+1)!.
    let mut a = Vec::new();
    let mut f = Rational::one();
    for k in 0..n {
        f /= q(k as i64 + 1);
        a.push(if k % 2 == 0 { f.clone() } else { -f.clone() });
    }
    univariate_inverse(&a)
}

fn class_product<C: Scalar>(e: &BundleRoots, order: u32, coeffs: &[C], negate: bool) -> Result<RootPoly<C>, GeneraError> {
    if order > MAX_CLASS_ORDER || e.m > MAX_ROOT_VARS {
        return Err(GeneraError::Cap(format!("N = {order}, m = {}", e.m)));
    }
    let mut acc = RootPoly::one(e.m, order);
    for r in &e.roots {
        let form: Vec<C> = r.iter().map(|a| C::from_q(&if negate { -a } else { a.clone() })).collect();
        acc = acc.mul(&RootPoly::subst(coeffs, &RootPoly::linear(e.m, order, &form)));
    }
    Ok(acc)
}

/// `Td(E) = ∏ x_j / (1 − e^{−x_j})`.
pub fn todd(e: &BundleRoots, order: u32) -> Result<RootPoly<Rational>, GeneraError> {
    class_product(e, order, &todd_coefficients(order as usize), false)
}

/// `Td*(E) = ∏ −x_j / (1 − e^{x_j})`.
pub fn todd_dual(e: &BundleRoots, order: u32) -> Result<RootPoly<Rational>, GeneraError> {
    class_product(e, order, &todd_coefficients(order as usize), true)
}

fn rotation(theta: f64) -> Result<Complex64, GeneraError> {
    let w = Complex64::from_polar(1.0, -theta);
    if (Complex64::one() - w).norm() < 1e-12 {
        return Err(GeneraError::Pole);
    }
    Ok(w)
}

/// `𝔘^θ(E) = ∏ [(1 − e^{−x_j − iθ}) / (1 − e^{−iθ})]^{-1}`.
pub fn u_theta(e: &BundleRoots, theta: f64, order: u32) -> Result<RootPoly<Complex64>, GeneraError> {
    let w = rotation(theta)?;
    let denom = Complex64::one() - w;
    // (1 − w e^{−x}) / (1 − w) = 1 − (w / (1 − w)) Σ_{k≥1} (−x)^k / k!.
    let ex: Vec<Complex64> = exp_coeffs(order);
    let a: Vec<Complex64> = (0..order as usize)
        .map(|k| if k == 0 { Complex64::one() } else { -(w / denom) * ex[k] * if k % 2 == 0 { 1.0 } else { -1.0 } })
        .collect();
    class_product(e, order, &univariate_inverse(&a), false)
}

/// `[ch Λ_{−1}(N)^*]^{-1} = ∏ (1 − e^{−x_j − iθ})^{-1}`, built directly.
pub fn lambda_minus_one_dual_inverse(e: &BundleRoots, theta: f64, order: u32) -> Result<RootPoly<Complex64>, GeneraError> {
    let w = rotation(theta)?;
    let mut acc = RootPoly::one(e.m, order);
    for j in 0..e.rank() {
        let dual: Vec<Complex64> = e.roots[j].iter().map(|a| Complex64::from_q(&-a)).collect();
        let f = RootPoly::one(e.m, order).sub(&exp_linear(e.m, order, &dual).scale(&w));
        acc = acc.mul(&f);
    }
    acc.inverse().ok_or(GeneraError::NotInvertible)
}

/// Largest coefficient deviation in `[ch Λ_{−1}N^*]^{-1} = 𝔘^θ / (1 − e^{−iθ})^m`,
/// relative to the largest coefficient.
pub fn u_theta_identity_residual(e: &BundleRoots, theta: f64, order: u32) -> Result<f64, GeneraError> {
    let w = rotation(theta)?;
    let lhs = lambda_minus_one_dual_inverse(e, theta, order)?;
    let scale = (Complex64::one() - w).powu(e.rank() as u32).inv();
    let rhs = u_theta(e, theta, order)?.scale(&scale);
    let size = lhs.terms.values().map(|c| c.norm()).fold(1.0, f64::max);
    Ok(lhs.sub(&rhs).terms.values().map(|c| c.norm()).fold(0.0, f64::max) / size)
}

fn tower_roots(e: &BundleRoots) -> BundleRoots {
    if e.complexified {
        e.clone()
    } else {
        e.complexify()
    }
}

/// `∏_j ∏_{n=1}^{K} [(1 − q^n e^{x_j})(1 − q^n e^{−x_j})]^{-1}`.
pub fn chern_tower(e: &BundleRoots, ctx: SeriesCtx) -> Result<QSeries<Rational>, GeneraError> {
    let ec = tower_roots(e);
    let mut s = QSeries::one(ctx);
    for n in 1..=ctx.cap as usize {
        s = s.mul(&s_power(&ec, &Rational::one(), n * ctx.denom as usize, ctx)?);
    }
    Ok(s)
}

/// The same tower assembled from `Sym^r` characters placed at `q^{nr}`.
pub fn chern_tower_via_characters(e: &BundleRoots, ctx: SeriesCtx) -> Result<QSeries<Rational>, GeneraError> {
    check_bundle(e, ctx)?;
    let ec = tower_roots(e);
    let mut s = QSeries::one(ctx);
    for n in 1..=ctx.cap as usize {
        let mut f = QSeries::zero(ctx);
        for r in 0..=ctx.cap as usize / n {
            f.coeffs[n * r * ctx.denom as usize] = sym_character(&ec, r, ctx.order);
        }
        s = s.mul(&f);
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// `n = 1, 2, 3, …`
    Positive,
    /// `n = 1/2, 1, 3/2, …`
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrototypeParams {
    pub sigma: Complex64,
    pub lambda: Complex64,
    pub xi: Complex64,
    pub zeta: Complex64,
}

/// `⊗_{n∈L_1} S_{σq^n}((ξP)^ℂ) ⊗ ⊗_{n∈L_2} Λ_{λq^n}((ζQ)^ℂ)`, where
/// `(zE)^ℂ` pairs `z e^{x_j}` with `z̄ e^{−x_j}`. Uses the doubled grading.
pub fn elliptic_prototype(
    params: PrototypeParams,
    p: &BundleRoots,
    qb: &BundleRoots,
    lattices: (Lattice, Lattice),
    ctx: SeriesCtx,
) -> Result<QSeries<Complex64>, GeneraError> {
    let ctx = SeriesCtx { denom: 2, ..ctx };
    check_bundle(p, ctx)?;
    check_bundle(qb, ctx)?;
    let steps = |l: Lattice| -> Vec<usize> {
        let top = 2 * ctx.cap as usize;
        match l {
            Lattice::Positive => (2..=top).step_by(2).collect(),
            Lattice::Half => (1..=top).collect(),
        }
    };
    let (sz, szb) = (params.sigma * params.xi, params.sigma * params.xi.conj());
    let (lz, lzb) = (params.lambda * params.zeta, params.lambda * params.zeta.conj());
    let (pd, qd) = (p.dual(), qb.dual());
    let mut s = QSeries::one(ctx);
    for st in steps(lattices.0) {
        s = s.mul(&s_power(p, &sz, st, ctx)?).mul(&s_power(&pd, &szb, st, ctx)?);
    }
    for st in steps(lattices.1) {
        s = s.mul(&lambda_power(qb, &lz, st, ctx)?).mul(&lambda_power(&qd, &lzb, st, ctx)?);
    }
    Ok(s)
}

/// Four prototypes in display order.
pub const PROTOTYPE_LATTICES: [(Lattice, Lattice); 4] = [
    (Lattice::Positive, Lattice::Positive),
    (Lattice::Positive, Lattice::Half),
    (Lattice::Half, Lattice::Positive),
    (Lattice::Half, Lattice::Half),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AlphaBeta {
    /// `α = 2π Im τ`, `β = 2π Re τ`.
    TwoPi,
    /// `α = 4π Im τ`, `β = 2π Re τ`.
    FourPi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuelleForm {
    /// `Z(s) Z(s+1)^{-1} Z(s+2)`.
    Alternating,
    /// `Z(s) / Z(s+1)`.
    Ratio,
}

impl AlphaBeta {
    pub fn name(&self) -> &'static str {
        match self {
            AlphaBeta::TwoPi => "alpha=2pi*im,beta=2pi*re",
            AlphaBeta::FourPi => "alpha=4pi*im,beta=2pi*re",
        }
    }
}

impl RuelleForm {
    pub fn name(&self) -> &'static str {
        match self {
            RuelleForm::Alternating => "Z(s)Z(s+2)/Z(s+1)",
            RuelleForm::Ratio => "Z(s)/Z(s+1)",
        }
    }
}

pub fn all_conventions() -> Vec<(AlphaBeta, RuelleForm)> {
    vec![
        (AlphaBeta::TwoPi, RuelleForm::Alternating),
        (AlphaBeta::TwoPi, RuelleForm::Ratio),
        (AlphaBeta::FourPi, RuelleForm::Alternating),
        (AlphaBeta::FourPi, RuelleForm::Ratio),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParams {
    pub tau: Complex64,
    pub ell: u32,
    pub eps: f64,
    pub trunc: usize,
}

impl SpectralParams {
    pub fn new(tau: Complex64, ell: u32, eps: f64, trunc: usize) -> Result<Self, GeneraError> {
        if tau.im <= 0.0 || !tau.is_finite() {
            return Err(GeneraError::Params("Im τ must be positive".into()));
        }
        if !(0.0..1.0).contains(&eps) {
            return Err(GeneraError::Params("ε must lie in [0, 1)".into()));
        }
        Ok(SpectralParams { tau, ell, eps, trunc })
    }

    pub fn q(&self) -> Complex64 {
        (Complex64::i() * 2.0 * PI * self.tau).exp()
    }

    /// `q^x = exp(2πiτx)`.
    pub fn q_pow(&self, x: f64) -> Complex64 {
        (Complex64::i() * 2.0 * PI * self.tau * x).exp()
    }

    pub fn t(&self) -> f64 {
        self.tau.re / self.tau.im
    }

    pub fn xi(&self) -> f64 {
        self.ell as f64 + self.eps
    }

    /// `s = ξ(1 − it)`.
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.xi(), -self.xi() * self.t())
    }

    pub fn alpha_beta(&self, c: AlphaBeta) -> (f64, f64) {
        match c {
            AlphaBeta::TwoPi => (2.0 * PI * self.tau.im, 2.0 * PI * self.tau.re),
            AlphaBeta::FourPi => (4.0 * PI * self.tau.im, 2.0 * PI * self.tau.re),
        }
    }

    /// `|q|^{K+1} / (1 − |q|)`.
    pub fn tail_bound(&self) -> f64 {
        let a = self.q().norm();
        a.powi(self.trunc as i32 + 1) / (1.0 - a)
    }
}

/// `∏_{k_1+k_2 ≤ K} [1 − e^{iβ(k_1−k_2)} e^{−(k_1+k_2+s)α}]`.
pub fn patterson_selberg(s: Complex64, alpha: f64, beta: f64, trunc: usize) -> Result<Complex64, GeneraError> {
    if !(alpha > 0.0) || !alpha.is_finite() || !beta.is_finite() || !s.is_finite() {
        return Err(GeneraError::Divergent(format!("α = {alpha}")));
    }
    let mut z = Complex64::one();
    for n in 0..=trunc {
        let radial = (-(Complex64::new(n as f64, 0.0) + s) * alpha).exp();
        for k1 in 0..=n {
            let k2 = n - k1;
            let phase = Complex64::from_polar(1.0, beta * (k1 as f64 - k2 as f64));
            z *= Complex64::one() - phase * radial;
        }
    }
    Ok(z)
}

/// `Σ_{n>K} (n+1) e^{−(n + Re s)α}`, a bound on the neglected factors' deviations.
pub fn patterson_selberg_tail(s: Complex64, alpha: f64, trunc: usize) -> f64 {
    let r = (-alpha).exp();
    let mut acc = 0.0;
    let mut n = trunc + 1;
    loop {
        let t = (n as f64 + 1.0) * r.powi(n as i32) * (-s.re * alpha).exp();
        acc += t;
        if t < 1e-300 || n > trunc + 100_000 {
            break;
        }
        n += 1;
    }
    acc
}

pub fn ruelle(s: Complex64, alpha: f64, beta: f64, trunc: usize, form: RuelleForm) -> Result<Complex64, GeneraError> {
    let z = |p: f64| patterson_selberg(s + p, alpha, beta, trunc);
    Ok(match form {
        RuelleForm::Alternating => z(0.0)? * z(2.0)? / z(1.0)?,
        RuelleForm::Ratio => z(0.0)? / z(1.0)?,
    })
}

/// `∏_{n=ℓ}^{ℓ+K} (1 − q^{n+ε})`.
pub fn qproduct_lhs(p: &SpectralParams) -> Complex64 {
    (p.ell as usize..=p.ell as usize + p.trunc).fold(Complex64::one(), |acc, n| acc * (Complex64::one() - p.q_pow(n as f64 + p.eps)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub alpha_beta: AlphaBeta,
    pub form: RuelleForm,
    pub alpha: f64,
    pub beta: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// `|∏(1 − q^{n+ε}) − R(ξ(1 − it))|` under each convention.
pub fn qproduct_probe(p: &SpectralParams, conventions: &[(AlphaBeta, RuelleForm)]) -> Result<Vec<ProbeRow>, GeneraError> {
    let lhs = qproduct_lhs(p);
    conventions
        .iter()
        .map(|&(ab, form)| {
            let (alpha, beta) = p.alpha_beta(ab);
            let rhs = ruelle(p.s(), alpha, beta, p.trunc, form)?;
            Ok(ProbeRow { alpha_beta: ab, form, alpha, beta, lhs, rhs, residual: (lhs - rhs).norm() })
        })
        .collect()
}

/// `(1 − q^ξ, 1 − e^{−sα})`: the `n = ℓ` factor and the `k_1 = k_2 = 0` factor.
pub fn leading_factor_match(p: &SpectralParams, ab: AlphaBeta) -> (Complex64, Complex64) {
    let (alpha, _) = p.alpha_beta(ab);
    (Complex64::one() - p.q_pow(p.xi()), Complex64::one() - (-p.s() * alpha).exp())
}

/// `Σ p(n) q^n` coefficients of `∏(1 − q^n)^{-2}` through `q^K`.
pub fn partition_squared(cap: usize) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); cap + 1];
    a[0] = Rational::one();
    for n in 1..=cap {
        for _ in 0..2 {
            for i in n..=cap {
                let v = a[i - n].clone();
                a[i] += v;
            }
        }
    }
    a
}

pub fn half() -> Rational {
    qf(1, 2)
}
