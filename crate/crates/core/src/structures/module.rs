use num_traits::{One, Zero};

use super::{LieAlgebra, StructError};
use crate::combin::{increasing_tuples, index_map, multisets, sort_sign};
use crate::exactlin::{q, ExactMatrix, Rational};

/// Representation `π: g → gl(A)` given by one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    algebra: LieAlgebra,
    dim: usize,
    action: Vec<ExactMatrix>,
}

impl LieModule {
    pub fn new(algebra: LieAlgebra, action: Vec<ExactMatrix>) -> Result<Self, StructError> {
        if action.len() != algebra.dim() {
            return Err(StructError::Shape(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        let dim = action.first().map_or(0, ExactMatrix::rows);
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(StructError::Shape("action matrices must be square of equal size".into()));
        }
        let m = LieModule { algebra, dim, action };
        m.validate()?;
        Ok(m)
    }

    fn unchecked(algebra: LieAlgebra, dim: usize, action: Vec<ExactMatrix>) -> Self {
        LieModule { algebra, dim, action }
    }

    /// Checks `π([e_i,e_j]) = [π(e_i), π(e_j)]`.
    pub fn validate(&self) -> Result<(), StructError> {
        let g = &self.algebra;
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = self.act_vec(&g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
                let rhs = self.action[i].commutator(&self.action[j]);
                if lhs != rhs {
                    return Err(StructError::ModuleAxiom { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &ExactMatrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[ExactMatrix] {
        &self.action
    }

    /// `π(x)` for a general element `x`.
    pub fn act_vec(&self, x: &[Rational]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    pub fn trivial(algebra: &LieAlgebra, dim: usize) -> Self {
        let action = vec![ExactMatrix::zeros(dim, dim); algebra.dim()];
        Self::unchecked(algebra.clone(), dim, action)
    }

    pub fn adjoint(algebra: &LieAlgebra) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.ad(i)).collect();
        Self::unchecked(algebra.clone(), algebra.dim(), action)
    }

    /// Contragredient module: `π*(x) = −π(x)^T`.
    pub fn dual(&self) -> Self {
        let minus = q(-1);
        let action = self.action.iter().map(|m| m.transpose().scale(&minus)).collect();
        Self::unchecked(self.algebra.clone(), self.dim, action)
    }

    pub fn tensor(&self, other: &LieModule) -> Result<Self, StructError> {
        if self.algebra != other.algebra {
            return Err(StructError::AlgebraMismatch);
        }
        let ia = ExactMatrix::identity(self.dim);
        let ib = ExactMatrix::identity(other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.kron(&ib).add(&ia.kron(b)))
            .collect();
        Ok(Self::unchecked(self.algebra.clone(), self.dim * other.dim, action))
    }

    pub fn direct_sum(&self, other: &LieModule) -> Result<Self, StructError> {
        if self.algebra != other.algebra {
            return Err(StructError::AlgebraMismatch);
        }
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::unchecked(self.algebra.clone(), self.dim + other.dim, action))
    }

    /// `Λ^k` on increasing index tuples.
    pub fn exterior_power(&self, k: usize) -> Self {
        let basis = increasing_tuples(self.dim, k);
        let idx = index_map(&basis);
        let action = self
            .action
            .iter()
            .map(|m| {
                let mut out = ExactMatrix::zeros(basis.len(), basis.len());
                for (col, t) in basis.iter().enumerate() {
                    for pos in 0..k {
                        for r in 0..self.dim {
                            let c = m.get(r, t[pos]);
                            if c.is_zero() {
                                continue;
                            }
                            let mut nt = t.clone();
                            nt[pos] = r;
                            if let Some((sorted, sign)) = sort_sign(&nt) {
                                out.add_at(idx[&sorted], col, &(c * q(sign)));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Self::unchecked(self.algebra.clone(), basis.len(), action)
    }

    /// `S^k` on monomials indexed by non-decreasing tuples.
    pub fn symmetric_power(&self, k: usize) -> Self {
        let basis = multisets(self.dim, k);
        let idx = index_map(&basis);
        let action = self
            .action
            .iter()
            .map(|m| {
                let mut out = ExactMatrix::zeros(basis.len(), basis.len());
                for (col, t) in basis.iter().enumerate() {
                    for pos in 0..k {
                        for r in 0..self.dim {
                            let c = m.get(r, t[pos]);
                            if c.is_zero() {
                                continue;
                            }
                            let mut nt = t.clone();
                            nt[pos] = r;
                            nt.sort_unstable();
                            out.add_at(idx[&nt], col, c);
                        }
                    }
                }
                out
            })
            .collect();
        Self::unchecked(self.algebra.clone(), basis.len(), action)
    }

    /// Irreducible `sl2`-module of dimension `d` on the `(h, e, f)` basis.
    pub fn sl2_irrep(d: usize) -> Self {
        let g = LieAlgebra::sl2();
        let m = d as i64 - 1;
        let mut h = ExactMatrix::zeros(d, d);
        let mut e = ExactMatrix::zeros(d, d);
        let mut f = ExactMatrix::zeros(d, d);
        for k in 0..d {
            let ki = k as i64;
            h.set(k, k, q(m - 2 * ki));
            if k + 1 < d {
                f.set(k + 1, k, Rational::one());
            }
            if k > 0 {
                e.set(k - 1, k, q(ki * (m - ki + 1)));
            }
        }
        Self::new(g, vec![h, e, f]).expect("sl2 irreducible module")
    }

    /// Defining module `V` of `gl(n)`.
    pub fn gl_standard(n: usize) -> Self {
        let g = LieAlgebra::gl(n);
        let action = (0..n * n)
            .map(|a| {
                let mut m = ExactMatrix::zeros(n, n);
                m.set(a / n, a % n, Rational::one());
                m
            })
            .collect();
        Self::unchecked(g, n, action)
    }

    /// Dual module `V′` of `gl(n)`.
    pub fn gl_dual(n: usize) -> Self {
        Self::gl_standard(n).dual()
    }

    /// One-dimensional `gl(n)`-module with `g·a = −λ Tr(g) a`.
    pub fn e_lambda(n: usize, lambda: &Rational) -> Self {
        let g = LieAlgebra::gl(n);
        let action = (0..n * n)
            .map(|a| {
                let mut m = ExactMatrix::zeros(1, 1);
                if a / n == a % n {
                    m.set(0, 0, -lambda.clone());
                }
                m
            })
            .collect();
        Self::unchecked(g, 1, action)
    }

    /// Restriction along an embedding whose columns are subalgebra basis vectors.
    pub fn restrict(&self, sub: &LieAlgebra, embedding: &ExactMatrix) -> Result<Self, StructError> {
        if embedding.rows() != self.algebra.dim() || embedding.cols() != sub.dim() {
            return Err(StructError::Shape("embedding shape".into()));
        }
        let action = (0..sub.dim()).map(|k| self.act_vec(&embedding.column(k))).collect();
        Self::new(sub.clone(), action)
    }

    /// Same action expressed over a rebased copy of the algebra.
    pub fn rebase(&self, algebra: &LieAlgebra, basis: &ExactMatrix) -> Result<Self, StructError> {
        let action = (0..basis.rows()).map(|k| self.act_vec(basis.row(k))).collect();
        Self::new(algebra.clone(), action)
    }

    /// Kernel intersection of all action matrices.
    pub fn invariant_space(&self) -> crate::exactlin::Subspace {
        let mut stacked = ExactMatrix::zeros(0, self.dim);
        for m in &self.action {
            stacked = stacked.vstack(m);
        }
        crate::exactlin::kernel(&stacked)
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(ExactMatrix::is_zero)
    }

    /// Zero vector of the module.
    pub fn zero_vec(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructed_modules_validate() {
        let g = LieAlgebra::sl2();
        for d in 1..=5 {
            assert!(LieModule::sl2_irrep(d).validate().is_ok());
        }
        let ad = LieModule::adjoint(&g);
        assert!(ad.validate().is_ok());
        assert!(ad.dual().validate().is_ok());
        assert!(ad.exterior_power(2).validate().is_ok());
        assert!(ad.symmetric_power(2).validate().is_ok());
        assert!(ad.tensor(&LieModule::sl2_irrep(2)).unwrap().validate().is_ok());
        let v = LieModule::gl_standard(2);
        assert!(v.validate().is_ok());
        assert!(v.tensor(&LieModule::gl_dual(2)).unwrap().validate().is_ok());
    }

    #[test]
    fn e_lambda_tensor_law() {
        let a = LieModule::e_lambda(2, &q(3));
        let b = LieModule::e_lambda(2, &q(-5));
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.actions(), LieModule::e_lambda(2, &q(-2)).actions());
        assert!(ab.validate().is_ok());
    }

    #[test]
    fn broken_action_is_rejected() {
        let g = LieAlgebra::sl2();
        let mut bad = LieModule::sl2_irrep(2).actions().to_vec();
        bad[1] = bad[1].scale(&q(2));
        assert!(matches!(LieModule::new(g, bad), Err(StructError::ModuleAxiom { .. })));
    }

    #[test]
    fn adjoint_invariants() {
        assert_eq!(LieModule::adjoint(&LieAlgebra::sl2()).invariant_space().dim(), 0);
        let vv = LieModule::gl_dual(2).tensor(&LieModule::gl_standard(2)).unwrap();
        assert_eq!(vv.invariant_space().dim(), 1);
    }
}
