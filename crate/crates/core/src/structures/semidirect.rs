use num_traits::Zero;

use super::{AssocAlgebra, LieAlgebra, StructError};
use crate::exactlin::{ExactMatrix, Rational};

/// `w ⋉ (gbar ⊗ p)` with `w` acting on `p` by derivations.
///
/// Basis: `w` first, then `g_i ⊗ p_j` at `dim w + i*dim p + j`.
/// Derivations are checked directly: when `gbar` is abelian a
/// non-derivation action still satisfies Jacobi.
pub fn semidirect(
    w: &LieAlgebra,
    gbar: &LieAlgebra,
    p: &AssocAlgebra,
    action: &[ExactMatrix],
) -> Result<LieAlgebra, StructError> {
    build(w, gbar, p, action, true)
}

/// Same construction validated by Jacobi alone.
pub fn semidirect_jacobi_only(
    w: &LieAlgebra,
    gbar: &LieAlgebra,
    p: &AssocAlgebra,
    action: &[ExactMatrix],
) -> Result<LieAlgebra, StructError> {
    build(w, gbar, p, action, false)
}

fn build(
    w: &LieAlgebra,
    gbar: &LieAlgebra,
    p: &AssocAlgebra,
    action: &[ExactMatrix],
    check_derivations: bool,
) -> Result<LieAlgebra, StructError> {
    p.check_commutative()?;
    if action.len() != w.dim() || action.iter().any(|m| m.rows() != p.dim() || m.cols() != p.dim()) {
        return Err(StructError::Shape("one dim(p) square matrix per generator of w".into()));
    }
    if check_derivations {
        for (wi, d) in action.iter().enumerate() {
            if let Some((a, b)) = p.derivation_witness(d) {
                return Err(StructError::NotDerivation { w: wi, a, b });
            }
        }
    }
    let (dw, dg, dp) = (w.dim(), gbar.dim(), p.dim());
    let n = dw + dg * dp;
    let mut names = w.names().to_vec();
    for g in gbar.names() {
        for a in p.names() {
            names.push(format!("{g}⊗{a}"));
        }
    }
    let part = |x: usize| -> Option<(usize, usize)> { (x >= dw).then(|| ((x - dw) / dp, (x - dw) % dp)) };
    LieAlgebra::from_fn(names, |x, y| {
        let mut v = vec![Rational::zero(); n];
        match (part(x), part(y)) {
            (None, None) => {
                for (k, c) in w.bracket_basis(x, y) {
                    v[*k] += c;
                }
            }
            (None, Some((g, b))) => {
                for r in 0..dp {
                    v[dw + g * dp + r] += action[x].get(r, b);
                }
            }
            (Some((g, a)), None) => {
                for r in 0..dp {
                    v[dw + g * dp + r] -= action[y].get(r, a);
                }
            }
            (Some((g1, a1)), Some((g2, a2))) => {
                for (k, c) in gbar.bracket_basis(g1, g2) {
                    for (m, e) in p.product_basis(a1, a2) {
                        v[dw + k * dp + m] += c * e;
                    }
                }
            }
        }
        v
    })
}
