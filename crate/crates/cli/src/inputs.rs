use hwb_core::exactlin::{parse_rational, q, Rational, Subspace};
use hwb_core::genera::BundleRoots;
use hwb_core::structures::schema::{assoc_from_json, lie_from_json, module_from_json};
use hwb_core::structures::{AssocAlgebra, LieAlgebra, LieModule};
use num_complex::Complex64;

use crate::error::CliError;
use crate::report::read;

pub fn lie(path: &str) -> Result<LieAlgebra, CliError> {
    Ok(lie_from_json(&read(path)?)?)
}

pub fn assoc(path: &str) -> Result<AssocAlgebra, CliError> {
    Ok(assoc_from_json(&read(path)?)?)
}

pub fn module(path: &str, g: &LieAlgebra) -> Result<LieModule, CliError> {
    Ok(module_from_json(&read(path)?, g)?)
}

/// Coefficient module selected by flags; trivial of dimension one by default.
pub fn coefficients(g: &LieAlgebra, module_path: Option<&str>, adjoint: bool, coadjoint: bool) -> Result<(LieModule, String), CliError> {
    Ok(match (module_path, adjoint, coadjoint) {
        (Some(p), false, false) => (module(p, g)?, "file".into()),
        (None, true, false) => (LieModule::adjoint(g), "adjoint".into()),
        (None, false, true) => (LieModule::adjoint(g).dual(), "coadjoint".into()),
        (None, false, false) => (LieModule::trivial(g, 1), "trivial".into()),
        _ => return Err(CliError::invalid("choose at most one coefficient module")),
    })
}

/// Span of the named basis elements.
pub fn sub(g: &LieAlgebra, names: &str) -> Result<Subspace, CliError> {
    let mut vecs = Vec::new();
    for n in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = g
            .names()
            .iter()
            .position(|b| b == n)
            .ok_or_else(|| CliError::invalid(format!("unknown basis name {n:?}")))?;
        vecs.push(g.basis_vector(i));
    }
    Ok(Subspace::span(g.dim(), &vecs))
}

/// `a`, `bi`, `a+bi`, `a-bi`.
pub fn complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::invalid(format!("not a complex number: {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let real = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(x),
    };
    match split {
        Some(i) => Ok(Complex64::new(real(&body[..i])?, imag(&body[i..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Roots separated by `;`, coefficients on the generators by `,`.
pub fn roots(s: &str) -> Result<BundleRoots, CliError> {
    let rows: Vec<Vec<Rational>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|c| parse_rational(c.trim()).ok_or_else(|| CliError::invalid(format!("not a rational: {c:?}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let m = rows.first().map_or(0, Vec::len);
    Ok(BundleRoots::from_roots(m, rows)?)
}

pub fn random_rational(rng: &mut impl rand::Rng, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("0.0+0.9i").unwrap(), Complex64::new(0.0, 0.9));
        assert_eq!(complex("0.1-0.9i").unwrap(), Complex64::new(0.1, -0.9));
        assert_eq!(complex("0.9i").unwrap(), Complex64::new(0.0, 0.9));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("1e-3+2e+1i").unwrap(), Complex64::new(1e-3, 20.0));
        assert_eq!(complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(complex("x").is_err());
    }

    #[test]
    fn roots_parse() {
        let r = roots("1,0;0,1").unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.rank(), 2);
        assert!(roots("1,0;1").is_err());
    }
}
