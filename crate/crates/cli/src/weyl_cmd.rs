use hwb_core::invariants::{c_sigma_rank, invariant_dim, psi_r, relation_check, C_SIGMA_MAX_K, C_SIGMA_MAX_N, DEFAULT_TENSOR_CAP};
use hwb_core::weyl::{acyclicity, relative_page_check, relative_weyl, weyl, weyl_abutment, weyl_page_check, PageCheck};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::inputs;
use crate::report::{compared_cells, Outcome};
use crate::Globals;

fn page_json(p: &PageCheck) -> Value {
    json!({"e1": compared_cells(&p.e1), "e2_equals_e1": p.e2_equals_e1, "agree": p.agree()})
}

pub fn run(g_path: &str, sub: Option<&str>, gl: &Globals) -> Result<Outcome, CliError> {
    let g = inputs::lie(g_path)?;
    let cap = gl.max_degree.unwrap_or(2);
    match sub {
        None => {
            let w = weyl(&g, cap)?;
            let d_sq = w.check_differentials();
            let ac = acyclicity(&w);
            let pc = weyl_page_check(&w)?;
            let ab = weyl_abutment(&w)?;
            let ok = d_sq.is_ok() && ac.acyclic() && pc.agree() && ab.holds();
            let out = json!({
                "algebra": {"dim": g.dim(), "basis": g.names()},
                "cap": cap,
                "dims": w.dims,
                "d_squared_zero": d_sq.is_ok(),
                "d_squared_witness_degree": d_sq.err(),
                "acyclicity": {"cohomology": ac.dims, "window": ac.window, "acyclic": ac.acyclic()},
                "page_check": page_json(&pc),
                "abutment": {"e_infinity": ab.e_infinity, "cohomology": ab.cohomology, "holds": ab.holds()},
            });
            Ok(Outcome::new(out, ok))
        }
        Some(names) => {
            let h = inputs::sub(&g, names)?;
            let r = relative_weyl(&g, &h, cap)?;
            let pc = relative_page_check(&r)?;
            let d_sq = r.complex.check_d_squared();
            let out = json!({
                "algebra": {"dim": g.dim(), "basis": g.names()},
                "subalgebra_dim": r.h_dim,
                "cap": cap,
                "dims": r.complex.dims,
                "cohomology": r.cohomology,
                "d_squared_zero": d_sq.is_ok(),
                "page_check": page_json(&pc),
            });
            Ok(Outcome::new(out, d_sq.is_ok() && pc.agree()))
        }
    }
}

pub fn invariants(n: usize, k: usize, l: Option<usize>, psi: Option<usize>) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::invalid("--n must be positive"));
    }
    let l = l.unwrap_or(k);
    let dim = invariant_dim(n, k, l, DEFAULT_TENSOR_CAP)?;
    let mut out = json!({"n": n, "k": k, "l": l, "invariant_dim": dim});
    let mut ok = true;
    if k == l && k <= C_SIGMA_MAX_K && n <= C_SIGMA_MAX_N {
        let rank = c_sigma_rank(n, k)?;
        out["c_sigma_rank"] = json!(rank);
        ok &= rank == dim;
    }
    if k == l && k == n + 1 && n <= C_SIGMA_MAX_N {
        let r = relation_check(n)?;
        out["relation"] = json!({
            "alternating_sum_zero": r.alternating_sum_zero,
            "relation_rank": [r.relation_rank.0, r.relation_rank.1],
            "independence": r.independence,
            "holds": r.holds(),
        });
        ok &= r.holds();
    }
    if let Some(r) = psi {
        let p = psi_r(r, n)?;
        let good = p.is_invariant() && p.beta_symmetric() && p.alpha_alternating() && p.groups_alternating();
        out["psi"] = json!({
            "r": r,
            "invariant": p.is_invariant(),
            "nonzero": p.is_nonzero(),
            "beta_symmetric": p.beta_symmetric(),
            "alpha_alternating": p.alpha_alternating(),
            "groups_alternating": p.groups_alternating(),
        });
        ok &= good;
    }
    Ok(Outcome::new(out, ok))
}
