use num_traits::{One, Zero};

use super::{LieAlgebra, StructError};
use crate::combin::multisets;
use crate::exactlin::{ExactMatrix, Rational};

type Terms = Vec<(usize, Rational)>;

/// Finite-dimensional associative algebra with unit and optional grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    dim: usize,
    names: Vec<String>,
    mult: Vec<Terms>,
    unit: Vec<Rational>,
    grading: Option<Vec<i64>>,
}

impl AssocAlgebra {
    pub fn new(
        names: Vec<String>,
        mult: impl Fn(usize, usize) -> Vec<Rational>,
        unit: Vec<Rational>,
        grading: Option<Vec<i64>>,
    ) -> Result<Self, StructError> {
        let dim = names.len();
        if unit.len() != dim || grading.as_ref().is_some_and(|g| g.len() != dim) {
            return Err(StructError::Shape("unit or grading length".into()));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = mult(i, j);
                if v.len() != dim {
                    return Err(StructError::Shape("product vector length".into()));
                }
                table.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        let a = AssocAlgebra {
            dim,
            names,
            mult: table,
            unit,
            grading,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g[i])
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.product_basis(i, j) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.product_basis(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn validate(&self) -> Result<(), StructError> {
        let d = self.dim;
        for i in 0..d {
            let ei = self.basis_vector(i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(StructError::Unit(i));
            }
            for j in 0..d {
                let ej = self.basis_vector(j);
                let eij = self.mul(&ei, &ej);
                if let Some(g) = &self.grading {
                    if self.product_basis(i, j).iter().any(|(k, _)| g[*k] != g[i] + g[j]) {
                        return Err(StructError::Grading { i, j });
                    }
                }
                for k in 0..d {
                    let ek = self.basis_vector(k);
                    if self.mul(&eij, &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        return Err(StructError::Associativity { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_commutative(&self) -> Result<(), StructError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.product_basis(i, j) != self.product_basis(j, i) {
                    return Err(StructError::NotCommutative { i, j });
                }
            }
        }
        Ok(())
    }

    /// Returns the first basis pair violating `D(ab) = D(a)b + aD(b)`.
    pub fn derivation_witness(&self, d: &ExactMatrix) -> Option<(usize, usize)> {
        for a in 0..self.dim {
            for b in 0..self.dim {
                let ea = self.basis_vector(a);
                let eb = self.basis_vector(b);
                let lhs = d.mul_vec(&self.mul(&ea, &eb));
                let r1 = self.mul(&d.mul_vec(&ea), &eb);
                let r2 = self.mul(&ea, &d.mul_vec(&eb));
                if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (x, y))| *l != x + y) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn base_field() -> Self {
        Self::new(vec!["1".into()], |_, _| vec![Rational::one()], vec![Rational::one()], Some(vec![0]))
            .expect("base field")
    }

    /// `k[x]/(x²)`, graded with `|x| = 1`.
    pub fn dual_numbers() -> Self {
        Self::truncated_poly(1, 1)
    }

    /// Polynomials in `vars` variables modulo monomials of degree above `max_deg`,
    /// graded by total degree. Monomials are ordered by degree then lexicographically.
    pub fn truncated_poly(vars: usize, max_deg: usize) -> Self {
        let monos = poly_monomials(vars, max_deg);
        let names = monos.iter().map(|e| mono_name(e)).collect();
        let grading = monos.iter().map(|e| e.iter().sum::<usize>() as i64).collect();
        let lookup: std::collections::HashMap<Vec<usize>, usize> =
            monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let dim = monos.len();
        let mut unit = vec![Rational::zero(); dim];
        unit[0] = Rational::one();
        Self::new(
            names,
            |i, j| {
                let mut v = vec![Rational::zero(); dim];
                let e: Vec<usize> = monos[i].iter().zip(&monos[j]).map(|(a, b)| a + b).collect();
                if let Some(&k) = lookup.get(&e) {
                    v[k] = Rational::one();
                }
                v
            },
            unit,
            Some(grading),
        )
        .expect("truncated polynomial algebra")
    }

    /// `M_n` on matrix units `E_ij` (index `i*n+j`).
    pub fn matrix_algebra(n: usize) -> Self {
        let names = (0..n * n).map(|t| format!("E{}{}", t / n + 1, t % n + 1)).collect();
        let mut unit = vec![Rational::zero(); n * n];
        for i in 0..n {
            unit[i * n + i] = Rational::one();
        }
        Self::new(
            names,
            |a, b| {
                let mut v = vec![Rational::zero(); n * n];
                if a % n == b / n {
                    v[(a / n) * n + b % n] = Rational::one();
                }
                v
            },
            unit,
            None,
        )
        .expect("matrix algebra")
    }

    /// Tensor product; index `i*dim(b)+j` is `a_i ⊗ b_j`.
    pub fn tensor(&self, other: &AssocAlgebra) -> Self {
        let (da, db) = (self.dim, other.dim);
        let names = (0..da * db)
            .map(|t| format!("{}⊗{}", self.names[t / db], other.names[t % db]))
            .collect();
        let unit = (0..da * db).map(|t| &self.unit[t / db] * &other.unit[t % db]).collect();
        let grading = match (&self.grading, &other.grading) {
            (None, None) => None,
            _ => Some((0..da * db).map(|t| self.degree(t / db) + other.degree(t % db)).collect()),
        };
        Self::new(
            names,
            |s, t| {
                let mut v = vec![Rational::zero(); da * db];
                for (k, c) in self.product_basis(s / db, t / db) {
                    for (l, e) in other.product_basis(s % db, t % db) {
                        v[k * db + l] += c * e;
                    }
                }
                v
            },
            unit,
            grading,
        )
        .expect("tensor of associative algebras")
    }

    /// Commutator Lie algebra `[a,b] = ab − ba`.
    pub fn commutator_lie(&self) -> LieAlgebra {
        LieAlgebra::from_fn(self.names.clone(), |i, j| {
            let (ei, ej) = (self.basis_vector(i), self.basis_vector(j));
            self.mul(&ei, &ej)
                .into_iter()
                .zip(self.mul(&ej, &ei))
                .map(|(a, b)| a - b)
                .collect()
        })
        .expect("commutators satisfy Jacobi")
    }

    /// `gl_n(A)` as the commutator algebra of `M_n ⊗ A`.
    pub fn gl_n_over(&self, n: usize) -> LieAlgebra {
        AssocAlgebra::matrix_algebra(n).tensor(self).commutator_lie()
    }
}

fn poly_monomials(vars: usize, max_deg: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        for ms in multisets(vars, deg) {
            let mut e = vec![0; vars];
            for v in ms {
                e[v] += 1;
            }
            out.push(e);
        }
    }
    out
}

fn mono_name(e: &[usize]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(v, &p)| {
            let var = if e.len() == 1 { "x".to_string() } else { format!("x{}", v + 1) };
            if p == 1 { var } else { format!("{var}^{p}") }
        })
        .collect();
    if parts.is_empty() { "1".into() } else { parts.join("*") }
}
