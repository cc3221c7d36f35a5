use hwb_core::ce::{coboundary_matrix, cohomology};
use hwb_core::combin::binomial;
use hwb_core::exactlin::Rational;
use hwb_core::hochschild::{cochain_dim, d_hoch_matrix, hh, hkr_compare, HochSign};
use hwb_core::structures::{AssocAlgebra, LieAlgebra, LieModule};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::inputs;
use crate::report::Outcome;
use crate::Globals;

pub fn validate(algebra: Option<&str>, module: Option<&str>, assoc: Option<&str>) -> Result<Outcome, CliError> {
    if algebra.is_none() && assoc.is_none() {
        return Err(CliError::invalid("nothing to validate: pass --algebra or --assoc"));
    }
    let mut out = Map::new();
    if let Some(p) = algebra {
        let g = inputs::lie(p)?;
        out.insert(
            "algebra".into(),
            json!({"dim": g.dim(), "basis": g.names(), "abelian": g.is_abelian(), "unimodular": g.is_unimodular()}),
        );
        if let Some(m) = module {
            let a = inputs::module(m, &g)?;
            out.insert("module".into(), json!({"dim": a.dim(), "trivial": a.is_trivial()}));
        }
    } else if module.is_some() {
        return Err(CliError::invalid("--module requires --algebra"));
    }
    if let Some(p) = assoc {
        let a = inputs::assoc(p)?;
        out.insert(
            "assoc".into(),
            json!({"dim": a.dim(), "basis": a.names(), "commutative": a.check_commutative().is_ok(), "graded": a.grading().is_some()}),
        );
    }
    Ok(Outcome::new(Value::Object(out), true))
}

/// Seeded `d_{n+1} d_n f = 0` checks on random cochains; returns violations.
fn sample_ce(g: &LieAlgebra, a: &LieModule, samples: usize, seed: u64) -> (usize, Option<Value>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut witness = None;
    if g.dim() < 2 {
        return (0, None);
    }
    let mats: Vec<_> = (0..g.dim()).map(|n| coboundary_matrix(g, a, n)).collect();
    for s in 0..samples {
        let n = rng.gen_range(0..g.dim() - 1);
        let f: Vec<Rational> = (0..mats[n].cols()).map(|_| inputs::random_rational(&mut rng, 5)).collect();
        let dd = mats[n + 1].mul_vec(&mats[n].mul_vec(&f));
        if dd.iter().any(|x| !x.is_zero()) {
            violations += 1;
            witness.get_or_insert_with(|| json!({"sample": s, "degree": n}));
        }
    }
    (violations, witness)
}

pub fn ce(g_path: &str, module: Option<&str>, adjoint: bool, coadjoint: bool, samples: usize, gl: &Globals) -> Result<Outcome, CliError> {
    let g = inputs::lie(g_path)?;
    let (a, kind) = inputs::coefficients(&g, module, adjoint, coadjoint)?;
    let max_degree = gl.max_degree.unwrap_or(g.dim());
    let r = cohomology(&g, &a, max_degree)?;
    let cochains: Vec<usize> = (0..=max_degree).map(|n| binomial(g.dim(), n) * a.dim()).collect();
    let mut out = json!({
        "algebra": {"dim": g.dim(), "basis": g.names()},
        "coefficients": {"kind": kind, "dim": a.dim()},
        "cochain_dims": cochains,
        "dims": r.dims,
        "window": {"max_degree": max_degree, "complete": r.complete},
    });
    if r.complete {
        out["euler"] = json!({"cochains": r.euler_cochains, "cohomology": r.euler_cohomology});
    }
    let mut ok = !r.complete || r.euler_cochains == r.euler_cohomology;
    if samples > 0 {
        let (v, w) = sample_ce(&g, &a, samples, gl.seed);
        out["samples"] = json!({"count": samples, "seed": gl.seed, "violations": v, "witness": w});
        ok &= v == 0;
    }
    Ok(Outcome::new(out, ok))
}

fn sample_hoch(a: &AssocAlgebra, max_arity: usize, samples: usize, seed: u64) -> (usize, Option<Value>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats: Vec<_> = (0..=max_arity).map(|n| d_hoch_matrix(a, n, HochSign::Plain)).collect();
    let mut violations = 0;
    let mut witness = None;
    for s in 0..samples {
        let n = rng.gen_range(0..max_arity);
        let f: Vec<Rational> = (0..cochain_dim(a, n)).map(|_| inputs::random_rational(&mut rng, 5)).collect();
        let dd = mats[n + 1].mul_vec(&mats[n].mul_vec(&f));
        if dd.iter().any(|x| !x.is_zero()) {
            violations += 1;
            witness.get_or_insert_with(|| json!({"sample": s, "arity": n}));
        }
    }
    (violations, witness)
}

pub fn hochschild(assoc: Option<&str>, hkr: Option<usize>, samples: usize, gl: &Globals) -> Result<Outcome, CliError> {
    let max_arity = gl.max_degree.unwrap_or(3);
    let mut out = Map::new();
    let mut ok = true;
    out.insert("window".into(), json!({"max_arity": max_arity}));
    match (assoc, hkr) {
        (Some(p), None) => {
            let a = inputs::assoc(p)?;
            let r = hh(&a, max_arity, gl.budget_bytes)?;
            out.insert("algebra".into(), json!({"dim": a.dim(), "basis": a.names()}));
            out.insert("dims".into(), json!(r.dims));
            if samples > 0 {
                let (v, w) = sample_hoch(&a, max_arity, samples, gl.seed);
                out.insert("samples".into(), json!({"count": samples, "seed": gl.seed, "violations": v, "witness": w}));
                ok &= v == 0;
            }
        }
        (None, Some(vars)) => {
            let rows = hkr_compare(vars, max_arity, -1..=4)?;
            let table: Vec<Value> = rows
                .iter()
                .map(|r| json!({"arity": r.arity, "degree": r.degree, "hh": r.hh, "polyvector": r.polyvector}))
                .collect();
            ok &= rows.iter().all(|r| r.matches());
            out.insert("hkr".into(), json!({"vars": vars, "degrees": [-1, 4], "rows": table, "matches": ok}));
        }
        _ => return Err(CliError::invalid("pass exactly one of --assoc or --hkr")),
    }
    Ok(Outcome::new(Value::Object(out), ok))
}
