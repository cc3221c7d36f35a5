use num_traits::{One, Zero};

use super::{LieAlgebra, StructError};
use crate::combin::multisets;
use crate::exactlin::{q, ExactMatrix, Rational, Subspace};

/// Polynomial vector fields `x^α ∂_i` on `n` variables with `|α| ≤ cap`.
///
/// Basis index `m*n + i` pairs monomial `m` (ordered by degree) with `∂_i`.
/// The bracket is partial: results of degree above the cap are an error.
#[derive(Clone, Debug)]
pub struct VectorFields {
    n: usize,
    cap: usize,
    monos: Vec<Vec<usize>>,
}

impl VectorFields {
    pub fn new(n: usize, cap: usize) -> Self {
        let mut monos = Vec::new();
        for deg in 0..=cap {
            for ms in multisets(n, deg) {
                let mut e = vec![0; n];
                for v in ms {
                    e[v] += 1;
                }
                monos.push(e);
            }
        }
        VectorFields { n, cap, monos }
    }

    pub fn dim(&self) -> usize {
        self.monos.len() * self.n
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Polynomial degree of the coefficient of a basis field.
    pub fn degree(&self, b: usize) -> usize {
        self.monos[b / self.n].iter().sum()
    }

    fn index(&self, e: &[usize], i: usize) -> Option<usize> {
        self.monos.iter().position(|m| m == e).map(|m| m * self.n + i)
    }

    /// `[x^α∂_i, x^β∂_j] = x^α ∂_i(x^β) ∂_j − x^β ∂_j(x^α) ∂_i` on basis fields.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Result<Vec<Rational>, StructError> {
        let (ea, i) = (&self.monos[a / self.n], a % self.n);
        let (eb, j) = (&self.monos[b / self.n], b % self.n);
        let mut out = vec![Rational::zero(); self.dim()];
        let mut put = |coef: usize, e_from: &[usize], e_other: &[usize], var: usize, dir: usize, sign: i64| {
            if coef == 0 {
                return Ok(());
            }
            let mut e: Vec<usize> = e_from.iter().zip(e_other).map(|(x, y)| x + y).collect();
            e[var] -= 1;
            if e.iter().sum::<usize>() > self.cap {
                return Err(StructError::OutOfWindow);
            }
            let k = self.index(&e, dir).expect("monomial within cap");
            out[k] += q(sign * coef as i64);
            Ok(())
        };
        put(eb[i], ea, eb, i, j, 1)?;
        put(ea[j], eb, ea, j, i, -1)?;
        Ok(out)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, StructError> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, ca) in x.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in y.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let v = self.bracket_basis(a, b)?;
                for (o, c) in out.iter_mut().zip(v) {
                    if !c.is_zero() {
                        *o += c * ca * cb;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `L_k`: fields whose coefficients have degree at least `k+1`.
    pub fn l_filtration(&self, k: i64) -> Result<Subspace, StructError> {
        if k < -1 || k > self.cap as i64 {
            return Err(StructError::LevelOutOfRange(k));
        }
        let idx: Vec<usize> = (0..self.dim()).filter(|&b| self.degree(b) as i64 >= k + 1).collect();
        Ok(Subspace::coordinate(self.dim(), &idx))
    }

    /// Checks `[L_a, L_b] ⊆ L_{a+b}` on basis pairs whose bracket stays under the cap.
    /// Returns the number of pairs checked, or a violating pair.
    pub fn check_filtration_brackets(&self) -> Result<usize, (usize, usize)> {
        let mut checked = 0;
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let Ok(v) = self.bracket_basis(a, b) else { continue };
                let level = self.degree(a) as i64 + self.degree(b) as i64 - 2;
                let target = self.l_filtration(level.max(-1)).expect("level in range");
                if !target.contains(&v) {
                    return Err((a, b));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// `L_lo / L_D` as a Lie algebra on fields of degree `lo+1..=D`.
    fn truncated_algebra(&self, lo: usize) -> LieAlgebra {
        let keep: Vec<usize> = (0..self.dim()).filter(|&b| self.degree(b) > lo).collect();
        let names = keep
            .iter()
            .map(|&b| {
                let e = &self.monos[b / self.n];
                let mono: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(v, &p)| if p == 1 { format!("z{}", v + 1) } else { format!("z{}^{p}", v + 1) })
                    .collect::<Vec<_>>()
                    .join("*");
                format!("{mono}d{}", b % self.n + 1)
            })
            .collect();
        let pos: std::collections::HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        LieAlgebra::from_fn(names, |x, y| {
            let (a, b) = (keep[x], keep[y]);
            let mut v = vec![Rational::zero(); keep.len()];
            if self.degree(a) + self.degree(b) - 1 > self.cap {
                return v;
            }
            let full = self.bracket_basis(a, b).expect("within cap");
            for (k, c) in full.into_iter().enumerate() {
                if !c.is_zero() {
                    v[pos[&k]] += c;
                }
            }
            v
        })
        .expect("truncation by an ideal gives a Lie algebra")
    }

    pub fn l0_mod_ld(&self) -> LieAlgebra {
        self.truncated_algebra(0)
    }

    pub fn l1_mod_ld(&self) -> LieAlgebra {
        self.truncated_algebra(1)
    }

    /// Linear part `L_0/L_1`: fields `z_i ∂_j`.
    pub fn linear_part(&self) -> LieAlgebra {
        VectorFields::new(self.n, 1).l0_mod_ld()
    }

    /// Matrix of `e_ij ↦ z_i ∂_j` from `gl(n)` into `L_0/L_1`.
    pub fn gl_inclusion(&self) -> ExactMatrix {
        let lin = VectorFields::new(self.n, 1);
        let n = self.n;
        // Linear fields occupy monomials 1..=n; subtract the constant block.
        let mut m = ExactMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                let b = lin.index(&e, j).expect("linear monomial") - n;
                m.set(b, i * n + j, Rational::one());
            }
        }
        m
    }

    /// Whether `gl(n) → L_0/L_1` is a bijective Lie homomorphism.
    pub fn check_gl_isomorphism(&self) -> bool {
        let gl = LieAlgebra::gl(self.n);
        let lin = self.linear_part();
        let m = self.gl_inclusion();
        if crate::exactlin::rank(&m) != gl.dim() || lin.dim() != gl.dim() {
            return false;
        }
        (0..gl.dim()).all(|a| {
            (0..gl.dim()).all(|b| {
                let lhs = m.mul_vec(&gl.bracket(&gl.basis_vector(a), &gl.basis_vector(b)));
                let rhs = lin.bracket(&m.column(a), &m.column(b));
                lhs == rhs
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtration_dims() {
        let vf = VectorFields::new(1, 3);
        let dims: Vec<usize> = (-1..=2).map(|k| vf.l_filtration(k).unwrap().dim()).collect();
        assert_eq!(dims, vec![4, 3, 2, 1]);
        assert!(vf.l_filtration(4).is_err());
    }

    #[test]
    fn filtration_brackets() {
        assert!(VectorFields::new(1, 3).check_filtration_brackets().is_ok());
        assert!(VectorFields::new(2, 2).check_filtration_brackets().is_ok());
    }

    #[test]
    fn l1_l1_in_l2() {
        let vf = VectorFields::new(1, 4);
        let l1 = vf.l_filtration(1).unwrap();
        let l2 = vf.l_filtration(2).unwrap();
        let b = l1.basis_vecs();
        for x in &b {
            for y in &b {
                if let Ok(v) = vf.bracket(x, y) {
                    assert!(l2.contains(&v));
                }
            }
        }
    }

    #[test]
    fn out_of_cap_is_error() {
        let vf = VectorFields::new(1, 2);
        assert_eq!(vf.bracket_basis(1, 2).unwrap(), vec![q(0), q(0), q(1)]);
        assert_eq!(vf.bracket_basis(0, 2).unwrap(), vec![q(0), q(2), q(0)]);
        assert_eq!(vf.bracket_basis(2, 2), Err(StructError::OutOfWindow));
    }

    #[test]
    fn gl_isomorphism() {
        assert!(VectorFields::new(1, 3).check_gl_isomorphism());
        assert!(VectorFields::new(2, 2).check_gl_isomorphism());
        assert!(VectorFields::new(2, 3).l0_mod_ld().validate().is_ok());
        assert!(VectorFields::new(2, 3).l1_mod_ld().validate().is_ok());
    }
}
