use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StructError;
use crate::exactlin::{q, ExactMatrix, Quotient, Rational, Subspace};

type Terms = Vec<(usize, Rational)>;

/// Finite-dimensional Lie algebra given by sparse structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    table: Vec<Terms>,
}

/// Dense Jacobi validation up to this dimension, sampled above.
const DENSE_JACOBI_DIM: usize = 12;
const JACOBI_SAMPLES: usize = 20_000;

fn add_term(terms: &mut Terms, k: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.binary_search_by_key(&k, |t| t.0) {
        Ok(pos) => {
            terms[pos].1 += c;
            if terms[pos].1.is_zero() {
                terms.remove(pos);
            }
        }
        Err(pos) => terms.insert(pos, (k, c)),
    }
}

fn to_terms(v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl LieAlgebra {
    /// Builds from brackets `[e_i, e_j] = Σ c_k e_k`; the partner `[e_j, e_i]`
    /// is filled in, and an explicitly supplied inconsistent partner is rejected.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Rational)>)],
    ) -> Result<Self, StructError> {
        let dim = names.len();
        let mut given: Vec<Option<Terms>> = vec![None; dim * dim];
        for (i, j, terms) in brackets {
            for &x in [i, j].into_iter().chain(terms.iter().map(|t| &t.0)) {
                if x >= dim {
                    return Err(StructError::IndexOutOfRange(x));
                }
            }
            let mut t = Terms::new();
            for (k, c) in terms {
                add_term(&mut t, *k, c.clone());
            }
            if i == j && !t.is_empty() {
                return Err(StructError::Antisymmetry { i: *i, j: *j });
            }
            let slot = &mut given[i * dim + j];
            match slot {
                Some(prev) => {
                    for (k, c) in t {
                        add_term(prev, k, c);
                    }
                }
                None => *slot = Some(t),
            }
        }
        let mut table = vec![Terms::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let a = &given[i * dim + j];
                let b = &given[j * dim + i];
                let t = match (a, b) {
                    (Some(a), Some(b)) => {
                        let neg: Terms = b.iter().map(|(k, c)| (*k, -c.clone())).collect();
                        if *a != neg {
                            return Err(StructError::Antisymmetry { i: i.min(j), j: i.max(j) });
                        }
                        a.clone()
                    }
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.iter().map(|(k, c)| (*k, -c.clone())).collect(),
                    (None, None) => Terms::new(),
                };
                table[i * dim + j] = t;
            }
        }
        let alg = LieAlgebra { dim, names, table };
        alg.validate()?;
        Ok(alg)
    }

    /// Builds from a dense bracket function on basis indices, then validates.
    pub fn from_fn(
        names: Vec<String>,
        f: impl Fn(usize, usize) -> Vec<Rational>,
    ) -> Result<Self, StructError> {
        let dim = names.len();
        let mut table = vec![Terms::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(StructError::Shape(format!("bracket vector length {}", v.len())));
                }
                table[i * dim + j] = to_terms(&v);
            }
        }
        let alg = LieAlgebra { dim, names, table };
        alg.validate()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        self.bracket_basis(i, j)
            .iter()
            .find(|t| t.0 == k)
            .map_or_else(Rational::zero, |t| t.1.clone())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
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

    /// Matrix of `ad(e_i)` acting on column vectors.
    pub fn ad(&self, i: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.bracket_basis(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn check_antisymmetry(&self) -> Result<(), StructError> {
        for i in 0..self.dim {
            if !self.bracket_basis(i, i).is_empty() {
                return Err(StructError::Antisymmetry { i, j: i });
            }
            for j in i + 1..self.dim {
                let neg: Terms = self
                    .bracket_basis(j, i)
                    .iter()
                    .map(|(k, c)| (*k, -c.clone()))
                    .collect();
                if self.bracket_basis(i, j) != neg.as_slice() {
                    return Err(StructError::Antisymmetry { i, j });
                }
            }
        }
        Ok(())
    }

    fn jacobi_at(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        let mut acc = vec![Rational::zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, cm) in self.bracket_basis(a, b) {
                for (l, cl) in self.bracket_basis(*m, c) {
                    acc[*l] += cm * cl;
                }
            }
        }
        acc.iter().position(|x| !x.is_zero())
    }

    pub fn check_jacobi(&self) -> Result<(), StructError> {
        let d = self.dim;
        if d <= DENSE_JACOBI_DIM {
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        if let Some(l) = self.jacobi_at(i, j, k) {
                            return Err(StructError::Jacobi { i, j, k, l });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x4a61_636f_6269);
            for _ in 0..JACOBI_SAMPLES {
                let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                if let Some(l) = self.jacobi_at(i, j, k) {
                    return Err(StructError::Jacobi { i, j, k, l });
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), StructError> {
        self.check_antisymmetry()?;
        self.check_jacobi()
    }

    /// `Σ_j c_ij^j = 0` for every `i`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad(i).trace().is_zero())
    }

    fn named(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{}", i + 1)).collect()
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            names: Self::named("x", n),
            table: vec![Terms::new(); n * n],
        }
    }

    /// `gl(n)` on `e_ij` (index `i*n+j`), `[e_ij,e_kl] = δ_jk e_il − δ_li e_kj`.
    pub fn gl(n: usize) -> Self {
        let names = (0..n * n).map(|t| format!("e{}{}", t / n + 1, t % n + 1)).collect();
        Self::from_fn(names, |a, b| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            let mut v = vec![Rational::zero(); n * n];
            if j == k {
                v[i * n + l] += Rational::one();
            }
            if l == i {
                v[k * n + j] -= Rational::one();
            }
            v
        })
        .expect("gl(n) is a Lie algebra")
    }

    /// Basis `(h, e, f)`.
    pub fn sl2() -> Self {
        let names = ["h", "e", "f"].iter().map(|s| s.to_string()).collect();
        Self::from_brackets(
            names,
            &[(0, 1, vec![(1, q(2))]), (0, 2, vec![(2, q(-2))]), (1, 2, vec![(0, q(1))])],
        )
        .expect("sl2 is a Lie algebra")
    }

    /// Basis `(x, y, z)` with `[x,y] = z`.
    pub fn heisenberg() -> Self {
        let names = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        Self::from_brackets(names, &[(0, 1, vec![(2, q(1))])]).expect("Heisenberg is a Lie algebra")
    }

    /// `[e1, e2] = e2`.
    pub fn nonabelian2() -> Self {
        let names = ["e1", "e2"].iter().map(|s| s.to_string()).collect();
        Self::from_brackets(names, &[(0, 1, vec![(1, q(1))])]).expect("valid")
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> Self {
        let n = self.dim + other.dim;
        let mut table = vec![Terms::new(); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                table[i * n + j] = self.bracket_basis(i, j).to_vec();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                table[(self.dim + i) * n + self.dim + j] = other
                    .bracket_basis(i, j)
                    .iter()
                    .map(|(k, c)| (k + self.dim, c.clone()))
                    .collect();
            }
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        LieAlgebra { dim: n, names, table }
    }

    pub fn is_subalgebra(&self, h: &Subspace) -> Result<(), StructError> {
        let b = h.basis_vecs();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !h.contains(&self.bracket(&b[i], &b[j])) {
                    return Err(StructError::NotSubalgebra { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self, h: &Subspace) -> Result<(), StructError> {
        for (j, v) in h.basis_vecs().iter().enumerate() {
            for i in 0..self.dim {
                if !h.contains(&self.bracket(&self.basis_vector(i), v)) {
                    return Err(StructError::NotIdeal { i, j });
                }
            }
        }
        Ok(())
    }

    /// The algebra in a new basis; rows of `basis` are the new vectors.
    pub fn rebase(&self, basis: &ExactMatrix, names: Vec<String>) -> Result<Self, StructError> {
        let n = basis.rows();
        let span = Subspace::row_space(basis);
        if basis.cols() != self.dim || span.dim() != n {
            return Err(StructError::Shape("basis must be independent rows".into()));
        }
        self.is_subalgebra(&span)?;
        let quo = Quotient::new(&span, &Subspace::zero(self.dim)).expect("zero subspace");
        let rows = basis.row_vecs();
        // Express brackets in the supplied basis rather than the quotient reps.
        let to_reps = ExactMatrix::from_rows(n, rows.iter().map(|r| quo.coords(r).unwrap()).collect());
        let from_reps = crate::exactlin::invert(&to_reps).expect("independent basis");
        Self::from_fn(names, |a, b| {
            let br = self.bracket(&rows[a], &rows[b]);
            let c = quo.coords(&br).expect("closed under bracket");
            from_reps.transpose().mul_vec(&c)
        })
    }

    /// Subalgebra spanned by the canonical basis of `h`, with its embedding
    /// matrix (columns are the basis vectors in ambient coordinates).
    pub fn subalgebra(&self, h: &Subspace) -> Result<(LieAlgebra, ExactMatrix), StructError> {
        let names = (0..h.dim()).map(|i| format!("h{}", i + 1)).collect();
        let sub = self.rebase(h.basis(), names)?;
        Ok((sub, h.basis().transpose()))
    }

    /// `g / h` for an ideal `h`, with canonical complement representatives.
    pub fn quotient(&self, h: &Subspace) -> Result<(LieAlgebra, Quotient), StructError> {
        self.is_ideal(h)?;
        let quo = Quotient::new(&Subspace::full(self.dim), h).expect("h is a subspace");
        let reps = quo.reps().to_vec();
        let names = (0..reps.len()).map(|i| format!("q{}", i + 1)).collect();
        let alg = Self::from_fn(names, |a, b| quo.coords(&self.bracket(&reps[a], &reps[b])).unwrap())?;
        Ok((alg, quo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent Jacobi enumeration over all 27 ordered triples.
    fn jacobi_all_triples(g: &LieAlgebra) -> bool {
        let d = g.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(k));
                    let a = g.bracket(&g.bracket(&x, &y), &z);
                    let b = g.bracket(&g.bracket(&y, &z), &x);
                    let c = g.bracket(&g.bracket(&z, &x), &y);
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(LieAlgebra::sl2().dim(), 3);
        assert!(jacobi_all_triples(&LieAlgebra::sl2()));
        assert!(LieAlgebra::abelian(4).validate().is_ok());
        let g = LieAlgebra::gl(2);
        assert_eq!(g.dim(), 4);
        assert!(jacobi_all_triples(&g));
        assert!(LieAlgebra::gl(1).is_abelian());
    }

    #[test]
    fn antisymmetry_failure() {
        let names = vec!["x".to_string(), "y".to_string()];
        let r = LieAlgebra::from_brackets(names, &[(0, 1, vec![(0, q(1))]), (1, 0, vec![(0, q(1))])]);
        assert_eq!(r, Err(StructError::Antisymmetry { i: 0, j: 1 }));
    }

    #[test]
    fn jacobi_failure_has_witness() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let r = LieAlgebra::from_brackets(
            names,
            &[(0, 1, vec![(1, q(1))]), (0, 2, vec![(2, q(1))]), (1, 2, vec![(0, q(1))])],
        );
        assert!(matches!(r, Err(StructError::Jacobi { .. })));
    }

    #[test]
    fn quotient_and_subalgebra() {
        let g = LieAlgebra::nonabelian2();
        let h = Subspace::coordinate(2, &[1]);
        let (gh, _) = g.quotient(&h).unwrap();
        assert_eq!(gh.dim(), 1);
        assert!(gh.is_abelian());
        let (sub, emb) = g.subalgebra(&h).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(emb.column(0), vec![q(0), q(1)]);
        assert!(g.quotient(&Subspace::coordinate(2, &[0])).is_err());
    }

    #[test]
    fn unimodularity() {
        assert!(LieAlgebra::sl2().is_unimodular());
        assert!(LieAlgebra::heisenberg().is_unimodular());
        assert!(!LieAlgebra::nonabelian2().is_unimodular());
    }

    #[test]
    fn rebase_preserves_brackets() {
        let g = LieAlgebra::sl2();
        let b = ExactMatrix::from_i64(&[&[0, 1, 1], &[0, 1, -1], &[1, 0, 0]]);
        let g2 = g.rebase(&b, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let rows = b.row_vecs();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = g.bracket(&rows[i], &rows[j]);
                let mut rhs = vec![Rational::zero(); 3];
                for (k, c) in g2.bracket_basis(i, j) {
                    for (x, y) in rhs.iter_mut().zip(&rows[*k]) {
                        *x += c * y;
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
