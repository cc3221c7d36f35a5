use hwb_core::deformation::{
    first_order_deformation, gerstenhaber_check, moyal, moyal_associativity, perturbative_extend, schouten_extend, toy_dgla, AssocOrder, Extension, PolyWeyl,
    WeylCaps,
};
use hwb_core::exactlin::Rational;
use hwb_core::hochschild::cochain_dim;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::inputs;
use crate::report::{rats, Outcome};
use crate::Globals;

pub fn moyal_cmd(n: usize, eps: u32, gl: &Globals) -> Result<Outcome, CliError> {
    let max_deg = gl.max_degree.unwrap_or(2) as u32;
    let assoc = moyal_associativity(n, max_deg, eps)?;
    let caps = WeylCaps { degree: 2, eps: eps.max(1) };
    let mut relations = Vec::new();
    let mut rel_ok = true;
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (PolyWeyl::p(n, i), PolyWeyl::q(n, j));
            let c = moyal(&p, &q, caps)?.sub(&moyal(&q, &p, caps)?);
            let expect = if i == j { PolyWeyl::eps(n) } else { PolyWeyl::zero(n) };
            rel_ok &= c == expect;
            relations.push(json!({"p": i, "q": j, "commutator_is_expected": c == expect}));
        }
    }
    let ok = assoc.failures.is_empty() && rel_ok;
    let out = json!({
        "n": n,
        "window": {"max_degree": max_deg, "eps_order": eps},
        "associativity": {"checked": assoc.checked, "failures": assoc.failures},
        "canonical_relations": relations,
    });
    Ok(Outcome::new(out, ok))
}

pub fn gerstenhaber(g_path: &str) -> Result<Outcome, CliError> {
    let g = inputs::lie(g_path)?;
    let a = schouten_extend(&g)?;
    let r = gerstenhaber_check(&a);
    let failures: Map<String, Value> = r.failures.iter().map(|(ax, w)| (ax.name().to_string(), json!([w.0, w.1, w.2]))).collect();
    let out = json!({"dim": a.dim(), "checked_triples": r.checked_triples, "failures": failures, "passes": r.passes()});
    Ok(Outcome::new(out, r.passes()))
}

pub fn first_order(assoc_path: &str, samples: usize, gl: &Globals) -> Result<Outcome, CliError> {
    let a = inputs::assoc(assoc_path)?;
    let n = cochain_dim(&a, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(gl.seed);
    let (mut agree, mut cocycles, mut witness) = (0usize, 0usize, None);
    for s in 0..samples {
        let sparse = rng.gen_bool(0.5);
        let f: Vec<Rational> = (0..n)
            .map(|_| if sparse && rng.gen_bool(0.7) { Rational::default() } else { inputs::random_rational(&mut rng, 2) })
            .collect();
        let r = first_order_deformation(&a, &f)?;
        cocycles += r.cocycle as usize;
        if r.first_order_associative() == r.cocycle {
            agree += 1;
        } else {
            witness.get_or_insert(s);
        }
    }
    let out = json!({
        "samples": {"count": samples, "seed": gl.seed, "cocycles": cocycles, "verdict_agrees_with_cocycle": agree, "first_disagreement": witness},
    });
    Ok(Outcome::new(out, agree == samples))
}

pub fn single(assoc_path: &str, cochain: &str) -> Result<Outcome, CliError> {
    let a = inputs::assoc(assoc_path)?;
    let f: Vec<Rational> = cochain
        .split(',')
        .map(|c| hwb_core::exactlin::parse_rational(c.trim()).ok_or_else(|| CliError::invalid(format!("not a rational: {c:?}"))))
        .collect::<Result<_, _>>()?;
    if f.len() != cochain_dim(&a, 2) {
        return Err(CliError::invalid(format!("cochain needs {} entries", cochain_dim(&a, 2))));
    }
    let r = first_order_deformation(&a, &f)?;
    let order = match r.order {
        AssocOrder::All => json!("all"),
        AssocOrder::Through(k) => json!(k),
    };
    let out = json!({
        "order": order,
        "cocycle": r.cocycle,
        "coboundary": r.coboundary,
        "witness": r.witness.map(|w| json!([w.0, w.1, w.2])),
        "first_order_associative": r.first_order_associative(),
    });
    Ok(Outcome::new(out, true))
}

pub fn extend(obstructed: bool) -> Result<Outcome, CliError> {
    let a = toy_dgla(!obstructed);
    let z1 = a.basis_vector(2);
    let out = match perturbative_extend(&a, &z1)? {
        Extension::Solved(z2) => json!({"basis": a.names, "zeta1": rats(&z1), "solved": true, "zeta2": rats(&z2)}),
        Extension::Obstructed(o) => json!({"basis": a.names, "zeta1": rats(&z1), "solved": false, "obstruction": rats(&o)}),
    };
    Ok(Outcome::new(out, true))
}
