//! `gl_n` invariants in tensor modules `V′^{⊗k} ⊗ V^{⊗ℓ}`.
//!
//! A tensor is a dense coordinate vector over multi-indices in base `n`,
//! the `ℓ` V-slots first and the `k` V′-slots after them. A V-slot is
//! evaluated on a covector `β`, a V′-slot on a vector `α`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::combin::{all_tuples, flat_index, perm_sign, permutations};
use crate::exactlin::{q, rank, rref_rows, ExactMatrix, Rational};
use crate::structures::{LieModule, StructError};

pub const DEFAULT_TENSOR_CAP: usize = 4096;
pub const C_SIGMA_MAX_K: usize = 4;
pub const C_SIGMA_MAX_N: usize = 3;
pub const PSI_MAX_R: usize = 2;
pub const PSI_MAX_N: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("not a permutation: {0:?}")]
    Permutation(Vec<usize>),
    #[error(transparent)]
    Structure(#[from] StructError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub n: usize,
    /// Copies of `V′`.
    pub k: usize,
    /// Copies of `V`.
    pub l: usize,
}

impl TensorSpace {
    pub fn new(n: usize, k: usize, l: usize) -> Self {
        TensorSpace { n, k, l }
    }

    pub fn slots(&self) -> usize {
        self.k + self.l
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.slots() as u32)
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.slots()];
        for s in (0..self.slots()).rev() {
            t[s] = idx % self.n;
            idx /= self.n;
        }
        t
    }

    fn encode(&self, t: &[usize]) -> usize {
        flat_index(t, self.n)
    }

    fn is_v_slot(&self, s: usize) -> bool {
        s < self.l
    }

    /// Image of a basis tensor under `E_{ij}`, `x = i·n + j`.
    pub fn act_basis(&self, x: usize, idx: usize) -> Vec<(usize, i64)> {
        let (i, j) = (x / self.n, x % self.n);
        let t = self.decode(idx);
        let mut out = Vec::new();
        for s in 0..self.slots() {
            let (from, to, c) = if self.is_v_slot(s) { (j, i, 1) } else { (i, j, -1) };
            if t[s] == from {
                let mut u = t.clone();
                u[s] = to;
                out.push((self.encode(&u), c));
            }
        }
        out
    }

    pub fn act(&self, x: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in self.act_basis(x, idx) {
                out[t] += c * q(s);
            }
        }
        out
    }

    pub fn is_invariant(&self, v: &[Rational]) -> bool {
        (0..self.n * self.n).all(|x| self.act(x, v).iter().all(Zero::is_zero))
    }

    /// The same space as an explicit module, built from `V` and `V′` by tensor products.
    pub fn module(&self) -> Result<LieModule, InvariantsError> {
        if self.dim() > 729 {
            return Err(InvariantsError::Cap(format!("explicit module of dim {}", self.dim())));
        }
        let v = LieModule::gl_standard(self.n);
        let vd = LieModule::gl_dual(self.n);
        let mut m = LieModule::trivial(v.algebra(), 1);
        for s in 0..self.slots() {
            m = m.tensor(if self.is_v_slot(s) { &v } else { &vd })?;
        }
        Ok(m)
    }

    /// Tensor permuting slots: `out[t] = v[t∘p]` on V-slots and V′-slots separately.
    pub fn permute_slots(&self, v: &[Rational], p: &[usize]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = self.decode(idx);
            let mut u = vec![0; t.len()];
            for s in 0..t.len() {
                u[p[s]] = t[s];
            }
            out[self.encode(&u)] = c.clone();
        }
        out
    }
}

fn check_perm(sigma: &[usize]) -> Result<(), InvariantsError> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || seen[s] {
            return Err(InvariantsError::Permutation(sigma.to_vec()));
        }
        seen[s] = true;
    }
    Ok(())
}

/// `c_σ(α; β) = ∏ β_i(α_{σ(i)})` in `TensorSpace(n, k, k)`.
pub fn c_sigma(sigma: &[usize], n: usize) -> Result<Vec<Rational>, InvariantsError> {
    let k = sigma.len();
    if k > C_SIGMA_MAX_K || n > C_SIGMA_MAX_N {
        return Err(InvariantsError::Cap(format!("k = {k}, n = {n}")));
    }
    check_perm(sigma)?;
    let ts = TensorSpace::new(n, k, k);
    let mut out = vec![Rational::zero(); ts.dim()];
    for w in all_tuples(n, k) {
        let mut t = vec![0; 2 * k];
        for i in 0..k {
            t[i] = w[sigma[i]];
            t[k + i] = w[i];
        }
        out[ts.encode(&t)] = Rational::one();
    }
    Ok(out)
}

/// `dim [V′^{⊗k} ⊗ V^{⊗ℓ}]^{gl_n}`.
///
/// The identity and diagonal matrices act diagonally on basis tensors, so
/// invariants lie in the span of zero-weight basis tensors; there the
/// kernel of `E_{a,a+1}` and `E_{a+1,a}` is taken.
pub fn invariant_dim(n: usize, k: usize, l: usize, cap: usize) -> Result<usize, InvariantsError> {
    let ts = TensorSpace::new(n, k, l);
    if ts.dim() > cap {
        return Err(InvariantsError::Cap(format!("n^(k+l) = {} > {cap}", ts.dim())));
    }
    let zero_weight: Vec<usize> = (0..ts.dim())
        .filter(|&idx| {
            let t = ts.decode(idx);
            (0..n).all(|a| {
                let up = t[..l].iter().filter(|&&x| x == a).count();
                let down = t[l..].iter().filter(|&&x| x == a).count();
                up == down
            })
        })
        .collect();
    if zero_weight.is_empty() {
        return Ok(0);
    }
    let gens: Vec<usize> = (0..n.saturating_sub(1)).flat_map(|a| [a * n + a + 1, (a + 1) * n + a]).collect();
    let mut row_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut entries = Vec::new();
    for (col, &idx) in zero_weight.iter().enumerate() {
        for &g in &gens {
            for (t, c) in ts.act_basis(g, idx) {
                let next = row_of.len();
                let r = *row_of.entry((g, t)).or_insert(next);
                entries.push((r, col, c));
            }
        }
    }
    let mut m = ExactMatrix::zeros(row_of.len(), zero_weight.len());
    for (r, c, v) in entries {
        m.add_at(r, c, &q(v));
    }
    Ok(zero_weight.len() - rank(&m))
}

/// Joint kernel of all `n²` explicit action matrices.
pub fn invariant_dim_brute(n: usize, k: usize, l: usize) -> Result<usize, InvariantsError> {
    Ok(TensorSpace::new(n, k, l).module()?.invariant_space().dim())
}

/// Rank of `{c_σ : σ ∈ S_k}`.
pub fn c_sigma_rank(n: usize, k: usize) -> Result<usize, InvariantsError> {
    let rows: Vec<Vec<Rational>> = permutations(k).iter().map(|s| c_sigma(s, n)).collect::<Result<_, _>>()?;
    let cols = TensorSpace::new(n, k, k).dim();
    Ok(rref_rows(&rows, cols).pivots.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub n: usize,
    /// `Σ_{σ ∈ S_{n+1}} sgn(σ) c_σ = 0` coordinatewise.
    pub alternating_sum_zero: bool,
    /// `(k, rank {c_σ}, k!)` for `1 ≤ k ≤ n`.
    pub independence: Vec<(usize, usize, usize)>,
    /// `(rank {c_σ}, (n+1)! − 1)` at `k = n + 1`.
    pub relation_rank: (usize, usize),
    /// `dim Inv T^{n+1}_{n+1}` when within the cap.
    pub invariant_dim: Option<usize>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.alternating_sum_zero
            && self.independence.iter().all(|(_, r, f)| r == f)
            && self.relation_rank.0 == self.relation_rank.1
            && self.invariant_dim.is_none_or(|d| d == self.relation_rank.0)
    }
}

pub fn relation_check(n: usize) -> Result<RelationReport, InvariantsError> {
    if n == 0 || n > C_SIGMA_MAX_N {
        return Err(InvariantsError::Cap(format!("n = {n}")));
    }
    let k = n + 1;
    let ts = TensorSpace::new(n, k, k);
    let mut sum = vec![Rational::zero(); ts.dim()];
    for s in permutations(k) {
        let c = c_sigma(&s, n)?;
        let sg = q(perm_sign(&s));
        for (a, b) in sum.iter_mut().zip(c) {
            *a += b * &sg;
        }
    }
    let independence = (1..=n)
        .map(|kk| Ok((kk, c_sigma_rank(n, kk)?, permutations(kk).len())))
        .collect::<Result<_, InvariantsError>>()?;
    let fact: usize = (1..=k).product();
    Ok(RelationReport {
        n,
        alternating_sum_zero: sum.iter().all(Zero::is_zero),
        independence,
        relation_rank: (c_sigma_rank(n, k)?, fact - 1),
        invariant_dim: invariant_dim(n, k, k, DEFAULT_TENSOR_CAP).ok(),
    })
}

/// `Ψ_r ∈ Λ^r V′ ⊗ Λ^r(S²V ⊗ V′)` as a tensor in `TensorSpace(n, 2r, 2r)`.
///
/// V-slots: `β¹_{r+1}, β²_{r+1}, …, β¹_{2r}, β²_{2r}`; V′-slots: `α_1, …, α_{2r}`.
#[derive(Clone, Debug)]
pub struct Psi {
    pub r: usize,
    pub n: usize,
    pub space: TensorSpace,
    pub tensor: Vec<Rational>,
}

impl Psi {
    fn beta_slot(&self, group: usize, which: usize) -> usize {
        2 * group + which
    }

    fn alpha_slot(&self, i: usize) -> usize {
        2 * self.r + i
    }

    fn swap(&self, pairs: &[(usize, usize)]) -> Vec<Rational> {
        let mut p: Vec<usize> = (0..self.space.slots()).collect();
        for &(a, b) in pairs {
            p.swap(a, b);
        }
        self.space.permute_slots(&self.tensor, &p)
    }

    pub fn is_invariant(&self) -> bool {
        self.space.is_invariant(&self.tensor)
    }

    pub fn is_nonzero(&self) -> bool {
        self.tensor.iter().any(|x| !x.is_zero())
    }

    /// Symmetric in `β¹_i, β²_i` for each group.
    pub fn beta_symmetric(&self) -> bool {
        (0..self.r).all(|g| self.swap(&[(self.beta_slot(g, 0), self.beta_slot(g, 1))]) == self.tensor)
    }

    /// Sign change under `α_i ↔ α_j`, `i, j ≤ r`.
    pub fn alpha_alternating(&self) -> bool {
        let neg: Vec<Rational> = self.tensor.iter().map(|x| -x).collect();
        (0..self.r).all(|i| (i + 1..self.r).all(|j| self.swap(&[(self.alpha_slot(i), self.alpha_slot(j))]) == neg))
    }

    /// Sign change under exchange of whole groups `(β¹_i, β²_i, α_i)`.
    pub fn groups_alternating(&self) -> bool {
        let neg: Vec<Rational> = self.tensor.iter().map(|x| -x).collect();
        (0..self.r).all(|g| {
            (g + 1..self.r).all(|h| {
                let pairs = [
                    (self.beta_slot(g, 0), self.beta_slot(h, 0)),
                    (self.beta_slot(g, 1), self.beta_slot(h, 1)),
                    (self.alpha_slot(self.r + g), self.alpha_slot(self.r + h)),
                ];
                self.swap(&pairs) == neg
            })
        })
    }
}

pub fn psi_r(r: usize, n: usize) -> Result<Psi, InvariantsError> {
    if r == 0 || r > PSI_MAX_R || n == 0 || n > PSI_MAX_N {
        return Err(InvariantsError::Cap(format!("r = {r}, n = {n}")));
    }
    let space = TensorSpace::new(n, 2 * r, 2 * r);
    let mut tensor = vec![Rational::zero(); space.dim()];
    let perms = permutations(r);
    let nus = all_tuples(2, r);
    for idx in 0..space.dim() {
        let t = space.decode(idx);
        // t[2g + w] is the covector index of β^{w+1}_{r+g+1}; t[2r + i] the vector index of α_{i+1}.
        let beta = |g: usize, w: usize| t[2 * g + w];
        let alpha = |i: usize| t[2 * r + i];
        let mut acc = 0i64;
        for sigma in &perms {
            for tau in &perms {
                let sg = perm_sign(sigma) * perm_sign(tau);
                for nu in &nus {
                    let ok = (0..r).all(|j| {
                        let g = tau[j];
                        let prev = tau[(j + r - 1) % r];
                        let (w1, w2) = if nu[j] == 0 { (0, 1) } else { (1, 0) };
                        beta(g, w1) == alpha(sigma[j]) && beta(g, w2) == alpha(r + prev)
                    });
                    if ok {
                        acc += sg;
                    }
                }
            }
        }
        tensor[idx] = q(acc);
    }
    Ok(Psi { r, n, space, tensor })
}

/// `dim Inv T^k_k` against `k!` minus relation count, for `k ≤ 3`, `n ≤ 2`.
pub fn gl_invariant_table(n: usize, k_max: usize) -> Result<Vec<(usize, usize)>, InvariantsError> {
    (1..=k_max).map(|k| Ok((k, invariant_dim(n, k, k, DEFAULT_TENSOR_CAP)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_tensor() {
        let c = c_sigma(&[0], 3).unwrap();
        let ts = TensorSpace::new(3, 1, 1);
        let nz: Vec<usize> = (0..ts.dim()).filter(|&i| !c[i].is_zero()).collect();
        assert_eq!(nz, vec![0, 4, 8]);
        assert!(ts.is_invariant(&c));
    }

    #[test]
    fn gl2_dims() {
        assert_eq!(invariant_dim(2, 1, 0, DEFAULT_TENSOR_CAP).unwrap(), 0);
        assert_eq!(gl_invariant_table(2, 3).unwrap(), vec![(1, 1), (2, 2), (3, 5)]);
    }

    #[test]
    fn relation_small() {
        assert!(relation_check(1).unwrap().holds());
        assert!(relation_check(2).unwrap().holds());
    }

    #[test]
    fn psi_one_one() {
        let p = psi_r(1, 1).unwrap();
        assert_eq!(p.tensor, vec![q(2)]);
        assert!(p.is_invariant());
    }

    #[test]
    fn caps() {
        assert!(c_sigma(&[0, 1, 2, 3, 4], 1).is_err());
        assert!(c_sigma(&[0, 0], 2).is_err());
        assert!(invariant_dim(4, 4, 3, DEFAULT_TENSOR_CAP).is_err());
        assert!(psi_r(3, 1).is_err());
    }
}
