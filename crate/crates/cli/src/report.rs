use std::collections::BTreeMap;
use std::fs;

use clap::ValueEnum;
use hwb_core::exactlin::{fmt_rational, Rational};
use hwb_core::genera::RootPoly;
use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Report body plus whether every check in it passed.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn new(report: Value, ok: bool) -> Self {
        Outcome { report, ok }
    }
}

pub fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

pub fn rat(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

/// Twelve significant digits, scientific notation, no negative zero.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn real(x: f64) -> Value {
    Value::String(fmt_real(x))
}

pub fn complex(z: Complex64) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), real(z.re));
    m.insert("im".into(), real(z.im));
    Value::Object(m)
}

fn exps_key(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Monomial exponents `"a,b,…"` to coefficient.
pub fn root_poly_rat(p: &RootPoly<Rational>) -> Value {
    Value::Object(p.terms.iter().map(|(k, c)| (exps_key(k), rat(c))).collect())
}

pub fn root_poly_complex(p: &RootPoly<Complex64>) -> Value {
    Value::Object(p.terms.iter().map(|(k, c)| (exps_key(k), complex(*c))).collect())
}

pub fn cell_key(p: i64, q: i64) -> String {
    format!("{p},{q}")
}

pub fn cells(m: &BTreeMap<(i64, i64), usize>) -> Value {
    Value::Object(m.iter().map(|(&(p, q), &d)| (cell_key(p, q), Value::from(d))).collect())
}

/// `(p,q) → (computed, expected)` pairs with an agreement flag.
pub fn compared_cells(m: &BTreeMap<(i64, i64), (usize, usize)>) -> Value {
    Value::Object(
        m.iter()
            .map(|(&(p, q), &(a, b))| {
                let mut o = Map::new();
                o.insert("computed".into(), a.into());
                o.insert("expected".into(), b.into());
                (cell_key(p, q), Value::Object(o))
            })
            .collect(),
    )
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, val) in rows {
                s.push_str(&format!("{k:<width$}  {val}\n"));
            }
            s
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(a) if a.iter().all(is_scalar) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            rows.push((prefix.to_string(), format!("({})", items.join(", "))));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar_text(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn real_format_is_twelve_digits() {
        assert_eq!(fmt_real(0.3548), "3.54800000000e-1");
        assert_eq!(fmt_real(-0.0), "0.00000000000e0");
    }

    #[test]
    fn table_flattens_sorted() {
        let v = json!({"b": [1, 0, 0, 1], "a": {"x": "1/2"}});
        assert_eq!(render(&v, Format::Table), "a.x  1/2\nb    (1, 0, 0, 1)\n");
    }
}
