use hwb_core::exactlin::Rational;
use hwb_core::genera::{
    all_conventions, chern_tower, chern_tower_via_characters, elliptic_prototype, leading_factor_match, patterson_selberg, patterson_selberg_tail,
    qproduct_lhs, qproduct_probe, s_q, series_inverse_identities, sum_identities, todd, todd_coefficients, u_theta, u_theta_identity_residual,
    AlphaBeta, Lattice, PrototypeParams, RuelleForm, SeriesCtx, SpectralParams, PROTOTYPE_LATTICES,
};
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::inputs;
use crate::report::{complex, rats, real, root_poly_complex, root_poly_rat, Outcome};
use crate::Globals;

fn ctx(m: usize, order: u32, trunc: usize) -> Result<SeriesCtx, CliError> {
    Ok(SeriesCtx::new(m, order, u32::try_from(trunc).map_err(|_| CliError::Cap(format!("K = {trunc}")))?)?)
}

pub fn series(roots: &str, other: Option<&str>, order: u32, gl: &Globals) -> Result<Outcome, CliError> {
    let e = inputs::roots(roots)?;
    let trunc = gl.trunc.unwrap_or(12);
    let c = ctx(e.m, order, trunc)?;
    let id = series_inverse_identities(&e, c)?;
    let s = s_q(&e, &Rational::one(), c)?;
    let mut ok = id.holds();
    let mut out = json!({
        "window": {"q_order": trunc, "nilpotent_order": order},
        "identities": {
            "s_lambda_inverse": id.s_lambda_inverse,
            "lambda_s_inverse": id.lambda_s_inverse,
            "sym_characters": id.sym_characters,
            "alt_characters": id.alt_characters,
        },
        "s_q": s.coeffs.iter().map(root_poly_rat).collect::<Vec<_>>(),
    });
    if let Some(o) = other {
        let f = inputs::roots(o)?;
        let r = sum_identities(&e, &f, c)?;
        ok &= r.holds();
        out["sum_identities"] = json!({
            "s_sum": r.s_sum,
            "lambda_sum": r.lambda_sum,
            "sym_convolution": r.sym_convolution,
            "alt_convolution": r.alt_convolution,
            "s_difference": r.s_difference,
            "lambda_difference": r.lambda_difference,
        });
    }
    Ok(Outcome::new(out, ok))
}

pub fn todd_cmd(roots: &str, order: u32) -> Result<Outcome, CliError> {
    let e = inputs::roots(roots)?;
    let td = todd(&e, order)?;
    let out = json!({
        "window": {"nilpotent_order": order},
        "univariate": rats(&todd_coefficients(order as usize)),
        "todd": root_poly_rat(&td),
    });
    Ok(Outcome::new(out, true))
}

pub fn tower(roots: &str, order: u32, gl: &Globals) -> Result<Outcome, CliError> {
    let e = inputs::roots(roots)?;
    let trunc = gl.trunc.unwrap_or(8);
    let c = ctx(e.m, order, trunc)?;
    let t = chern_tower(&e, c)?;
    let agree = t == chern_tower_via_characters(&e, c)?;
    let out = json!({
        "window": {"q_order": trunc, "nilpotent_order": order},
        "coefficients": t.coeffs.iter().map(root_poly_rat).collect::<Vec<_>>(),
        "constant_terms": rats(&t.scalar_part()),
        "character_cross_check": agree,
    });
    Ok(Outcome::new(out, agree))
}

pub fn u_theta_cmd(roots: &str, theta: f64, order: u32) -> Result<Outcome, CliError> {
    let e = inputs::roots(roots)?;
    let u = u_theta(&e, theta, order)?;
    let res = u_theta_identity_residual(&e, theta, order)?;
    let out = json!({
        "theta": real(theta),
        "window": {"nilpotent_order": order},
        "u_theta": root_poly_complex(&u),
        "identity_relative_residual": real(res),
    });
    Ok(Outcome::new(out, res < 1e-9))
}

pub fn selberg(s: &str, alpha: f64, beta: f64, reference: usize, gl: &Globals) -> Result<Outcome, CliError> {
    let s = inputs::complex(s)?;
    let trunc = gl.trunc.unwrap_or(30);
    let z = patterson_selberg(s, alpha, beta, trunc)?;
    let zr = patterson_selberg(s, alpha, beta, reference)?;
    let out = json!({
        "s": complex(s),
        "alpha": real(alpha),
        "beta": real(beta),
        "window": {"trunc": trunc, "reference_trunc": reference},
        "value": complex(z),
        "reference": complex(zr),
        "difference": real((z - zr).norm()),
        "tail_bound": real(patterson_selberg_tail(s, alpha, trunc)),
    });
    Ok(Outcome::new(out, true))
}

fn convention_key(ab: AlphaBeta, form: RuelleForm) -> String {
    format!("{} | {}", ab.name(), form.name())
}

pub fn probe(tau: &str, ell: u32, eps: f64, convention: &str, gl: &Globals) -> Result<Outcome, CliError> {
    let tau = inputs::complex(tau)?;
    let trunc = gl.trunc.unwrap_or(25);
    let p = SpectralParams::new(tau, ell, eps, trunc)?;
    let convs: Vec<(AlphaBeta, RuelleForm)> = match convention {
        "all" => all_conventions(),
        "2pi-alternating" => vec![(AlphaBeta::TwoPi, RuelleForm::Alternating)],
        "2pi-ratio" => vec![(AlphaBeta::TwoPi, RuelleForm::Ratio)],
        "4pi-alternating" => vec![(AlphaBeta::FourPi, RuelleForm::Alternating)],
        "4pi-ratio" => vec![(AlphaBeta::FourPi, RuelleForm::Ratio)],
        other => return Err(CliError::invalid(format!("unknown convention {other:?}"))),
    };
    let rows = qproduct_probe(&p, &convs)?;
    let table: Map<String, Value> = rows
        .iter()
        .map(|r| {
            let v = json!({"alpha": real(r.alpha), "beta": real(r.beta), "rhs": complex(r.rhs), "residual": real(r.residual)});
            (convention_key(r.alpha_beta, r.form), v)
        })
        .collect();
    let (lead_q, lead_z) = leading_factor_match(&p, AlphaBeta::TwoPi);
    let out = json!({
        "tau": complex(tau),
        "ell": ell,
        "eps": real(eps),
        "q": complex(p.q()),
        "s": complex(p.s()),
        "window": {"trunc": trunc, "tail_bound": real(p.tail_bound())},
        "lhs": complex(qproduct_lhs(&p)),
        "residuals": table,
        "leading_factor": {"q_side": complex(lead_q), "z_side": complex(lead_z)},
    });
    Ok(Outcome::new(out, true))
}

pub struct ProtoArgs<'a> {
    pub roots: &'a str,
    pub other: Option<&'a str>,
    pub sigma: &'a str,
    pub lambda: &'a str,
    pub xi: &'a str,
    pub zeta: &'a str,
    pub lattice: &'a str,
    pub order: u32,
}

fn lattice_name(l: (Lattice, Lattice)) -> &'static str {
    match l {
        (Lattice::Positive, Lattice::Positive) => "pp",
        (Lattice::Positive, Lattice::Half) => "ph",
        (Lattice::Half, Lattice::Positive) => "hp",
        (Lattice::Half, Lattice::Half) => "hh",
    }
}

pub fn prototype(a: &ProtoArgs, gl: &Globals) -> Result<Outcome, CliError> {
    let p = inputs::roots(a.roots)?;
    let qb = match a.other {
        Some(o) => inputs::roots(o)?,
        None => p.clone(),
    };
    let params = PrototypeParams {
        sigma: inputs::complex(a.sigma)?,
        lambda: inputs::complex(a.lambda)?,
        xi: inputs::complex(a.xi)?,
        zeta: inputs::complex(a.zeta)?,
    };
    let trunc = gl.trunc.unwrap_or(4);
    let c = ctx(p.m, a.order, trunc)?;
    let lattices: Vec<(Lattice, Lattice)> = PROTOTYPE_LATTICES.iter().copied().filter(|&l| a.lattice == "all" || a.lattice == lattice_name(l)).collect();
    if lattices.is_empty() {
        return Err(CliError::invalid(format!("unknown lattice {:?}", a.lattice)));
    }
    let mut out = Map::new();
    for l in lattices {
        let s = elliptic_prototype(params, &p, &qb, l, c)?;
        let coeffs: Vec<Value> = s.coeffs.iter().map(root_poly_complex).collect();
        out.insert(lattice_name(l).into(), json!({"half_step_coefficients": coeffs}));
    }
    let mut report = json!({"window": {"q_order": trunc, "nilpotent_order": a.order, "grading": "q^(1/2)"}, "prototypes": out});
    report["parameters"] = json!({
        "sigma": complex(params.sigma),
        "lambda": complex(params.lambda),
        "xi": complex(params.xi),
        "zeta": complex(params.zeta),
    });
    Ok(Outcome::new(report, true))
}

