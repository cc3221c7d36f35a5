//! Gerstenhaber axioms, Schouten brackets on `Λ•g`, Maurer–Cartan checks,
//! the Moyal product on polynomial Weyl algebras and first-order
//! deformations of associative algebras.
//!
//! Degrees are Gerstenhaber degrees: the wedge has degree 0 and the
//! bracket degree −1, so `Λ^k g` sits in degree `k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::combin::{increasing_tuples, index_map, sort_sign};
use crate::exactlin::{image, q, qf, rref_rows, ExactMatrix, Rational};
use crate::hochschild::{cochain_dim, d_hoch, d_hoch_matrix, deformed_associator, HochError, HochSign};
use crate::structures::{AssocAlgebra, LieAlgebra};

pub const GERST_MAX_DIM: usize = 32;
pub const SCHOUTEN_MAX_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformError {
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree cap {cap} exceeded by a product of degree {found}")]
    DegreeCap { cap: u32, found: u32 },
    #[error("no differential present")]
    NoDifferential,
    #[error("leading coefficient is not closed")]
    NotClosed,
    #[error(transparent)]
    Hoch(#[from] HochError),
}

type Terms = Vec<(usize, Rational)>;

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[derive(Clone, Debug)]
pub struct GradedBracketAlgebra {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    wedge: Vec<Terms>,
    bracket: Vec<Terms>,
    pub d: Option<ExactMatrix>,
}

fn table(n: usize, f: impl Fn(usize, usize) -> Vec<Rational>) -> Result<Vec<Terms>, DeformError> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = f(i, j);
            if v.len() != n {
                return Err(DeformError::Shape(format!("product ({i},{j}) has length {}", v.len())));
            }
            out.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    Ok(out)
}

impl GradedBracketAlgebra {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        wedge: impl Fn(usize, usize) -> Vec<Rational>,
        bracket: impl Fn(usize, usize) -> Vec<Rational>,
        d: Option<ExactMatrix>,
    ) -> Result<Self, DeformError> {
        let n = names.len();
        if n > GERST_MAX_DIM {
            return Err(DeformError::Cap(format!("dim {n} > {GERST_MAX_DIM}")));
        }
        if degrees.len() != n || d.as_ref().is_some_and(|m| m.rows() != n || m.cols() != n) {
            return Err(DeformError::Shape("degrees or differential".into()));
        }
        Ok(GradedBracketAlgebra { names, degrees, wedge: table(n, wedge)?, bracket: table(n, bracket)?, d })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn bilinear(&self, t: &[Terms], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &t[i * n + j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    pub fn wedge(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bilinear(&self.wedge, x, y)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bilinear(&self.bracket, x, y)
    }

    pub fn apply_d(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        self.d.as_ref().map(|d| d.mul_vec(x))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Adds `delta` to the coefficient of `e_k` in `[e_i • e_j]`.
    pub fn perturb_bracket(&mut self, i: usize, j: usize, k: usize, delta: &Rational) {
        let n = self.dim();
        let t = &mut self.bracket[i * n + j];
        match t.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, c)) => *c += delta,
            None => t.push((k, delta.clone())),
        }
        t.retain(|(_, c)| !c.is_zero());
    }

    fn is_homogeneous(&self, v: &[Rational], deg: i64) -> bool {
        v.iter().enumerate().all(|(k, c)| c.is_zero() || self.degrees[k] == deg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    WedgeDegree,
    WedgeCommutative,
    WedgeAssociative,
    BracketDegree,
    BracketSymmetry,
    Jacobi,
    Leibniz,
    DDegree,
    DSquared,
    DLeibniz,
    DBracket,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::WedgeDegree => "wedge_degree",
            Axiom::WedgeCommutative => "wedge_commutative",
            Axiom::WedgeAssociative => "wedge_associative",
            Axiom::BracketDegree => "bracket_degree",
            Axiom::BracketSymmetry => "bracket_symmetry",
            Axiom::Jacobi => "jacobi",
            Axiom::Leibniz => "leibniz",
            Axiom::DDegree => "d_degree",
            Axiom::DSquared => "d_squared",
            Axiom::DLeibniz => "d_leibniz",
            Axiom::DBracket => "d_bracket",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerstenhaberReport {
    pub checked_triples: usize,
    /// First failing basis triple per axiom.
    pub failures: BTreeMap<Axiom, (usize, usize, usize)>,
}

impl GerstenhaberReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

fn add_scaled(acc: &mut [Rational], x: &[Rational], s: &Rational) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b * s;
    }
}

fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// First basis pair violating `[a•b∧c] = [a•b]∧c + (−1)^{(|a|+shift)|b|} b∧[a•c]`.
pub fn leibniz_witness(a: &GradedBracketAlgebra, shift: i64) -> Option<(usize, usize, usize)> {
    let n = a.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (ex, ey, ez) = (a.basis_vector(x), a.basis_vector(y), a.basis_vector(z));
                let lhs = a.bracket(&ex, &a.wedge(&ey, &ez));
                let mut rhs = a.wedge(&a.bracket(&ex, &ey), &ez);
                add_scaled(&mut rhs, &a.wedge(&ey, &a.bracket(&ex, &ez)), &sign((a.degrees[x] + shift) * a.degrees[y]));
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Every axiom on every basis pair or triple.
pub fn gerstenhaber_check(a: &GradedBracketAlgebra) -> GerstenhaberReport {
    let n = a.dim();
    let deg = &a.degrees;
    let mut failures = BTreeMap::new();
    let mut fail = |ax: Axiom, w: (usize, usize, usize)| {
        failures.entry(ax).or_insert(w);
    };
    if let Some(w) = leibniz_witness(a, 1) {
        fail(Axiom::Leibniz, w);
    }
    for x in 0..n {
        let ex = a.basis_vector(x);
        let dx = a.apply_d(&ex);
        if let Some(dx) = &dx {
            if !a.is_homogeneous(dx, deg[x] + 1) {
                fail(Axiom::DDegree, (x, 0, 0));
            }
            if !is_zero(&a.apply_d(dx).unwrap()) {
                fail(Axiom::DSquared, (x, 0, 0));
            }
        }
        for y in 0..n {
            let ey = a.basis_vector(y);
            let w = a.wedge(&ex, &ey);
            let b = a.bracket(&ex, &ey);
            if !a.is_homogeneous(&w, deg[x] + deg[y]) {
                fail(Axiom::WedgeDegree, (x, y, 0));
            }
            if !a.is_homogeneous(&b, deg[x] + deg[y] - 1) {
                fail(Axiom::BracketDegree, (x, y, 0));
            }
            let mut wr = a.wedge(&ey, &ex);
            add_scaled(&mut wr, &w, &-sign(deg[x] * deg[y]));
            if !is_zero(&wr) {
                fail(Axiom::WedgeCommutative, (x, y, 0));
            }
            let mut br = a.bracket(&ey, &ex);
            add_scaled(&mut br, &b, &sign((deg[x] + 1) * (deg[y] + 1)));
            if !is_zero(&br) {
                fail(Axiom::BracketSymmetry, (x, y, 0));
            }
            if let Some(dx) = &dx {
                let dy = a.apply_d(&ey).unwrap();
                let mut r = a.wedge(dx, &ey);
                add_scaled(&mut r, &a.wedge(&ex, &dy), &sign(deg[x]));
                if a.apply_d(&w).unwrap() != r {
                    fail(Axiom::DLeibniz, (x, y, 0));
                }
                let mut r = a.bracket(dx, &ey);
                add_scaled(&mut r, &a.bracket(&ex, &dy), &sign(deg[x] + 1));
                if a.apply_d(&b).unwrap() != r {
                    fail(Axiom::DBracket, (x, y, 0));
                }
            }
            for z in 0..n {
                let ez = a.basis_vector(z);
                if a.wedge(&w, &ez) != a.wedge(&ex, &a.wedge(&ey, &ez)) {
                    fail(Axiom::WedgeAssociative, (x, y, z));
                }
                let mut j = vec![Rational::zero(); n];
                add_scaled(&mut j, &a.bracket(&b, &ez), &sign((deg[x] + 1) * (deg[z] + 1)));
                add_scaled(&mut j, &a.bracket(&a.bracket(&ey, &ez), &ex), &sign((deg[y] + 1) * (deg[x] + 1)));
                add_scaled(&mut j, &a.bracket(&a.bracket(&ez, &ex), &ey), &sign((deg[z] + 1) * (deg[y] + 1)));
                if !is_zero(&j) {
                    fail(Axiom::Jacobi, (x, y, z));
                }
            }
        }
    }
    GerstenhaberReport { checked_triples: n * n * n, failures }
}

/// `Λ•g` with the wedge product and the Schouten extension of the Lie bracket.
pub fn schouten_extend(g: &LieAlgebra) -> Result<GradedBracketAlgebra, DeformError> {
    let m = g.dim();
    if m > SCHOUTEN_MAX_DIM {
        return Err(DeformError::Cap(format!("dim g = {m} > {SCHOUTEN_MAX_DIM}")));
    }
    let basis: Vec<Vec<usize>> = (0..=m).flat_map(|k| increasing_tuples(m, k)).collect();
    let idx = index_map(&basis);
    let n = basis.len();
    let names = basis
        .iter()
        .map(|t| if t.is_empty() { "1".to_string() } else { t.iter().map(|&i| g.names()[i].clone()).collect::<Vec<_>>().join("^") })
        .collect();
    let degrees = basis.iter().map(|t| t.len() as i64).collect();
    let wedge_terms = |x: &[usize], y: &[usize]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        let mut t = x.to_vec();
        t.extend(y);
        if let Some((s, sg)) = sort_sign(&t) {
            v[idx[&s]] += q(sg);
        }
        v
    };
    let wedge = |i: usize, j: usize| wedge_terms(&basis[i], &basis[j]);
    let bracket = |i: usize, j: usize| {
        let (x, y) = (&basis[i], &basis[j]);
        let mut v = vec![Rational::zero(); n];
        for s in 0..x.len() {
            for t in 0..y.len() {
                let mut xr = x.clone();
                xr.remove(s);
                let mut yr = y.clone();
                yr.remove(t);
                let sg = sign((s + t) as i64);
                for (r, c) in g.bracket_basis(x[s], y[t]) {
                    let mut head = vec![*r];
                    head.extend(&xr);
                    let w = wedge_terms(&head, &yr);
                    add_scaled(&mut v, &w, &(c * &sg));
                }
            }
        }
        v
    };
    GradedBracketAlgebra::new(names, degrees, wedge, bracket, None)
}

/// `dζ + ½[ζ•ζ]`.
pub fn maurer_cartan_residual(a: &GradedBracketAlgebra, zeta: &[Rational]) -> Result<Vec<Rational>, DeformError> {
    let mut r = a.apply_d(zeta).ok_or(DeformError::NoDifferential)?;
    add_scaled(&mut r, &a.bracket(zeta, zeta), &qf(1, 2));
    Ok(r)
}

pub fn maurer_cartan_check(a: &GradedBracketAlgebra, zeta: &[Rational]) -> Result<bool, DeformError> {
    Ok(is_zero(&maurer_cartan_residual(a, zeta)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Particular solution of `dζ₂ = −½[ζ₁•ζ₁]` with free coordinates zero.
    Solved(Vec<Rational>),
    /// `−½[ζ₁•ζ₁]` reduced modulo `im d`.
    Obstructed(Vec<Rational>),
}

/// Second coefficient of `ζ = tζ₁ + t²ζ₂ + …` from a closed `ζ₁`.
pub fn perturbative_extend(a: &GradedBracketAlgebra, zeta1: &[Rational]) -> Result<Extension, DeformError> {
    let d = a.d.as_ref().ok_or(DeformError::NoDifferential)?;
    if zeta1.len() != a.dim() {
        return Err(DeformError::Shape("ζ₁ length".into()));
    }
    if !is_zero(&d.mul_vec(zeta1)) {
        return Err(DeformError::NotClosed);
    }
    let target: Vec<Rational> = a.bracket(zeta1, zeta1).iter().map(|x| x * qf(-1, 2)).collect();
    let n = a.dim();
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = d.row(r).to_vec();
            row.push(target[r].clone());
            row
        })
        .collect();
    let rr = rref_rows(&aug, n + 1);
    if rr.pivots.contains(&n) {
        return Ok(Extension::Obstructed(image(d).reduce(&target)));
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in rr.rows.iter().zip(&rr.pivots) {
        x[p] = row[n].clone();
    }
    Ok(Extension::Solved(x))
}

/// Four-dimensional DG bracket algebra with `dx = y`, `[ζ•ζ] = w`, zero
/// wedge; with `primitive`, a fifth element `u` with `du = w`.
pub fn toy_dgla(primitive: bool) -> GradedBracketAlgebra {
    let mut names = vec!["x", "y", "z", "w"];
    let mut degrees = vec![1, 2, 2, 3];
    if primitive {
        names.push("u");
        degrees.push(2);
    }
    let n = names.len();
    let mut d = ExactMatrix::zeros(n, n);
    d.set(1, 0, q(1));
    if primitive {
        d.set(3, 4, q(1));
    }
    GradedBracketAlgebra::new(
        names.into_iter().map(String::from).collect(),
        degrees,
        |_, _| vec![Rational::zero(); n],
        |i, j| {
            let mut v = vec![Rational::zero(); n];
            if i == 2 && j == 2 {
                v[3] = q(1);
            }
            v
        },
        Some(d),
    )
    .expect("toy algebra shape")
}

/// Polynomial in `p_1..p_n, q_1..q_n` with coefficients polynomial in `ε`.
/// Keys: exponents `(p_1..p_n, q_1..q_n)` and the power of `ε`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyWeyl {
    pub n: usize,
    pub terms: BTreeMap<(Vec<u32>, u32), Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylCaps {
    pub degree: u32,
    pub eps: u32,
}

impl PolyWeyl {
    pub fn zero(n: usize) -> Self {
        PolyWeyl { n, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<u32>, eps: u32, c: Rational) -> Self {
        let n = exps.len() / 2;
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((exps, eps), c);
        }
        PolyWeyl { n, terms: t }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(vec![0; 2 * n], 0, c)
    }

    pub fn p(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[i] = 1;
        Self::monomial(e, 0, Rational::one())
    }

    pub fn q(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + i] = 1;
        Self::monomial(e, 0, Rational::one())
    }

    pub fn eps(n: usize) -> Self {
        Self::monomial(vec![0; 2 * n], 1, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    fn push(&mut self, k: (Vec<u32>, u32), c: Rational) {
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &PolyWeyl) -> PolyWeyl {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.push(k.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Rational) -> PolyWeyl {
        let mut r = PolyWeyl::zero(self.n);
        for (k, c) in &self.terms {
            r.push(k.clone(), c * s);
        }
        r
    }

    pub fn sub(&self, o: &PolyWeyl) -> PolyWeyl {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Coefficient of `ε^k`, as an `ε`-free polynomial.
    pub fn eps_coeff(&self, k: u32) -> PolyWeyl {
        let mut r = PolyWeyl::zero(self.n);
        for ((e, s), c) in &self.terms {
            if *s == k {
                r.push((e.clone(), 0), c.clone());
            }
        }
        r
    }

    /// Derivative in variable `v` (`p_i` is `v = i`, `q_i` is `v = n + i`).
    pub fn partial(&self, v: usize) -> PolyWeyl {
        let mut r = PolyWeyl::zero(self.n);
        for ((e, s), c) in &self.terms {
            if e[v] > 0 {
                let mut f = e.clone();
                f[v] -= 1;
                r.push((f, *s), c * q(e[v] as i64));
            }
        }
        r
    }

    /// Commutative product; `ε` powers beyond the cap are dropped.
    pub fn mul(&self, o: &PolyWeyl, eps_cap: u32) -> PolyWeyl {
        let mut r = PolyWeyl::zero(self.n);
        for ((e1, s1), c1) in &self.terms {
            for ((e2, s2), c2) in &o.terms {
                if s1 + s2 > eps_cap {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.push((e, s1 + s2), c1 * c2);
            }
        }
        r
    }
}

fn check_degree(f: &PolyWeyl, g: &PolyWeyl, caps: WeylCaps) -> Result<(), DeformError> {
    let found = f.degree() + g.degree();
    if found > caps.degree {
        return Err(DeformError::DegreeCap { cap: caps.degree, found });
    }
    Ok(())
}

/// `{f, g} = Σ ∂_{p_i}f ∂_{q_i}g − ∂_{q_i}f ∂_{p_i}g`.
pub fn poisson_bracket(f: &PolyWeyl, g: &PolyWeyl, caps: WeylCaps) -> Result<PolyWeyl, DeformError> {
    check_degree(f, g, caps)?;
    let n = f.n;
    let mut r = PolyWeyl::zero(n);
    for i in 0..n {
        r = r.add(&f.partial(i).mul(&g.partial(n + i), caps.eps));
        r = r.sub(&f.partial(n + i).mul(&g.partial(i), caps.eps));
    }
    Ok(r)
}

/// `f ⋆ g = m(exp(εα)(f ⊗ g))`, `α = ½Σ(∂_{p_i} ⊗ ∂_{q_i} − ∂_{q_i} ⊗ ∂_{p_i})`,
/// exact through `ε^{caps.eps}`.
pub fn moyal(f: &PolyWeyl, g: &PolyWeyl, caps: WeylCaps) -> Result<PolyWeyl, DeformError> {
    check_degree(f, g, caps)?;
    let n = f.n;
    let mut out = PolyWeyl::zero(n);
    let mut level: Vec<(PolyWeyl, PolyWeyl, Rational)> = vec![(f.clone(), g.clone(), Rational::one())];
    let mut k = 0u32;
    let mut fact = Rational::one();
    while k <= caps.eps && !level.is_empty() {
        let coeff = fact.recip();
        let epsk = PolyWeyl::monomial(vec![0; 2 * n], k, Rational::one());
        for (a, b, c) in &level {
            let prod = a.mul(b, caps.eps).mul(&epsk, caps.eps);
            out = out.add(&prod.scale(&(c * &coeff)));
        }
        let mut next = Vec::new();
        for (a, b, c) in &level {
            for i in 0..n {
                let (ap, bq) = (a.partial(i), b.partial(n + i));
                if !ap.is_zero() && !bq.is_zero() {
                    next.push((ap, bq, c * qf(1, 2)));
                }
                let (aq, bp) = (a.partial(n + i), b.partial(i));
                if !aq.is_zero() && !bp.is_zero() {
                    next.push((aq, bp, c * qf(-1, 2)));
                }
            }
        }
        level = next;
        k += 1;
        fact *= q(k as i64);
    }
    Ok(out)
}

/// All monomials in `2n` variables of total degree at most `max_deg`.
pub fn weyl_monomials(n: usize, max_deg: u32) -> Vec<PolyWeyl> {
    fn rec(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[v] = e;
            rec(v + 1, left - e, cur, out);
        }
        cur[v] = 0;
    }
    let mut exps = Vec::new();
    rec(0, max_deg, &mut vec![0; 2 * n], &mut exps);
    exps.into_iter().map(|e| PolyWeyl::monomial(e, 0, Rational::one())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoyalAssociativity {
    pub checked: usize,
    /// Monomial index triples where `(f⋆g)⋆h ≠ f⋆(g⋆h)`.
    pub failures: Vec<(usize, usize, usize)>,
}

pub fn moyal_associativity(n: usize, max_deg: u32, eps_cap: u32) -> Result<MoyalAssociativity, DeformError> {
    let caps = WeylCaps { degree: 3 * max_deg, eps: eps_cap };
    let mons = weyl_monomials(n, max_deg);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, f) in mons.iter().enumerate() {
        for (j, g) in mons.iter().enumerate() {
            let fg = moyal(f, g, caps)?;
            for (k, h) in mons.iter().enumerate() {
                let l = moyal(&fg, h, caps)?;
                let r = moyal(f, &moyal(g, h, caps)?, caps)?;
                if l != r {
                    failures.push((i, j, k));
                }
                checked += 1;
            }
        }
    }
    Ok(MoyalAssociativity { checked, failures })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssocOrder {
    /// Associative modulo `t^{k+1}` but not modulo `t^{k+2}`.
    Through(usize),
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderDeformation {
    /// Structure constants of `ab` and of `f(a,b)`, index `(i·d + j)·d + k`.
    pub t0: Vec<Rational>,
    pub t1: Vec<Rational>,
    pub order: AssocOrder,
    /// First basis triple where the lowest non-vanishing associator order fails.
    pub witness: Option<(usize, usize, usize)>,
    /// `d_Hoch f = 0`.
    pub cocycle: bool,
    /// `f = d_Hoch g`: the deformation is trivial to first order.
    pub coboundary: bool,
}

pub fn first_order_deformation(a: &AssocAlgebra, f: &[Rational]) -> Result<FirstOrderDeformation, DeformError> {
    let d = a.dim();
    let assoc = deformed_associator(a, f)?;
    let first_bad = |v: &[Rational]| v.iter().position(|x| !x.is_zero()).map(|p| {
        let t = p / d;
        (t / (d * d), (t / d) % d, t % d)
    });
    let (order, witness) = match (first_bad(&assoc[1]), first_bad(&assoc[2])) {
        (Some(w), _) => (AssocOrder::Through(0), Some(w)),
        (None, Some(w)) => (AssocOrder::Through(1), Some(w)),
        (None, None) => (AssocOrder::All, None),
    };
    let mut t0 = vec![Rational::zero(); cochain_dim(a, 2)];
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.product_basis(i, j) {
                t0[(i * d + j) * d + k] = c.clone();
            }
        }
    }
    let cocycle = is_zero(&d_hoch(a, 2, f, HochSign::Plain)?);
    let coboundary = image(&d_hoch_matrix(a, 1, HochSign::Plain)).contains(f);
    Ok(FirstOrderDeformation { t0, t1: f.to_vec(), order, witness, cocycle, coboundary })
}

impl FirstOrderDeformation {
    pub fn first_order_associative(&self) -> bool {
        self.order != AssocOrder::Through(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        let caps = WeylCaps { degree: 4, eps: 2 };
        let (p, qq) = (PolyWeyl::p(1, 0), PolyWeyl::q(1, 0));
        let pq = moyal(&p, &qq, caps).unwrap();
        let qp = moyal(&qq, &p, caps).unwrap();
        let half_eps = PolyWeyl::eps(1).scale(&qf(1, 2));
        let plain = p.mul(&qq, 2);
        assert_eq!(pq, plain.add(&half_eps));
        assert_eq!(qp, plain.sub(&half_eps));
        assert_eq!(pq.sub(&qp), PolyWeyl::eps(1));
    }

    #[test]
    fn p_squared_star_q() {
        let caps = WeylCaps { degree: 4, eps: 3 };
        let (p, qq) = (PolyWeyl::p(1, 0), PolyWeyl::q(1, 0));
        let p2 = p.mul(&p, 3);
        let lhs = moyal(&p2, &qq, caps).unwrap();
        assert_eq!(lhs, p2.mul(&qq, 3).add(&PolyWeyl::eps(1).mul(&p, 3)));
        assert_eq!(poisson_bracket(&p2, &qq, caps).unwrap(), p.scale(&q(2)));
    }

    #[test]
    fn degree_overflow_reported() {
        let caps = WeylCaps { degree: 1, eps: 1 };
        let (p, qq) = (PolyWeyl::p(1, 0), PolyWeyl::q(1, 0));
        assert_eq!(moyal(&p, &qq, caps), Err(DeformError::DegreeCap { cap: 1, found: 2 }));
    }

    #[test]
    fn schouten_passes() {
        for g in [LieAlgebra::abelian(2), LieAlgebra::nonabelian2(), LieAlgebra::sl2()] {
            let r = gerstenhaber_check(&schouten_extend(&g).unwrap());
            assert!(r.passes(), "{:?}", r.failures);
        }
    }

    #[test]
    fn toy_obstruction() {
        let a = toy_dgla(false);
        assert!(gerstenhaber_check(&a).passes());
        let z = a.basis_vector(2);
        match perturbative_extend(&a, &z).unwrap() {
            Extension::Obstructed(o) => assert_eq!(o, vec![q(0), q(0), q(0), qf(-1, 2)]),
            e => panic!("{e:?}"),
        }
    }
}
