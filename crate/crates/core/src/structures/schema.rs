//! JSON interchange formats for algebras and modules.
//!
//! Rationals are strings `"p"` or `"p/q"`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AssocAlgebra, LieAlgebra, LieModule, StructError};
use crate::exactlin::{fmt_rational, parse_rational, ExactMatrix, Rational};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("validation failed: {0}")]
    Invalid(#[from] StructError),
}

impl SchemaError {
    fn from_serde(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => SchemaError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            },
            Category::Data => SchemaError::Schema(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub k: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: String,
    pub j: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub x: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub dim: usize,
    pub action: Vec<ActionJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssocJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    pub products: Vec<BracketJson>,
}

fn rational(s: &str) -> Result<Rational, SchemaError> {
    parse_rational(s).ok_or_else(|| SchemaError::Schema(format!("not a rational: {s:?}")))
}

fn name_index(basis: &[String]) -> Result<HashMap<&str, usize>, SchemaError> {
    let mut map = HashMap::new();
    for (i, b) in basis.iter().enumerate() {
        if map.insert(b.as_str(), i).is_some() {
            return Err(SchemaError::Schema(format!("duplicate basis name {b:?}")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<&str, usize>, name: &str) -> Result<usize, SchemaError> {
    map.get(name)
        .copied()
        .ok_or_else(|| SchemaError::Schema(format!("unknown basis name {name:?}")))
}

fn matrix(rows: &[Vec<String>], dim: usize) -> Result<ExactMatrix, SchemaError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(SchemaError::Schema(format!("matrix must be {dim}x{dim}")));
    }
    let data = rows
        .iter()
        .map(|r| r.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExactMatrix::from_rows(dim, data))
}

pub fn lie_from_json(text: &str) -> Result<LieAlgebra, SchemaError> {
    let spec: LieAlgebraJson = serde_json::from_str(text).map_err(SchemaError::from_serde)?;
    lie_from_spec(&spec)
}

pub fn lie_from_spec(spec: &LieAlgebraJson) -> Result<LieAlgebra, SchemaError> {
    if spec.basis.len() != spec.dim {
        return Err(SchemaError::Schema("basis length differs from dim".into()));
    }
    let names = name_index(&spec.basis)?;
    let mut brackets = Vec::new();
    for b in &spec.brackets {
        let terms = b
            .terms
            .iter()
            .map(|t| Ok((lookup(&names, &t.k)?, rational(&t.coeff)?)))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        brackets.push((lookup(&names, &b.i)?, lookup(&names, &b.j)?, terms));
    }
    Ok(LieAlgebra::from_brackets(spec.basis.clone(), &brackets)?)
}

pub fn lie_to_spec(g: &LieAlgebra) -> LieAlgebraJson {
    let n = g.names();
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let t = g.bracket_basis(i, j);
            if t.is_empty() {
                continue;
            }
            brackets.push(BracketJson {
                i: n[i].clone(),
                j: n[j].clone(),
                terms: t
                    .iter()
                    .map(|(k, c)| TermJson {
                        k: n[*k].clone(),
                        coeff: fmt_rational(c),
                    })
                    .collect(),
            });
        }
    }
    LieAlgebraJson {
        dim: g.dim(),
        basis: n.to_vec(),
        brackets,
    }
}

pub fn module_from_json(text: &str, g: &LieAlgebra) -> Result<LieModule, SchemaError> {
    let spec: ModuleJson = serde_json::from_str(text).map_err(SchemaError::from_serde)?;
    let names = name_index(g.names())?;
    let mut action: Vec<Option<ExactMatrix>> = vec![None; g.dim()];
    for a in &spec.action {
        let i = lookup(&names, &a.x)?;
        if action[i].is_some() {
            return Err(SchemaError::Schema(format!("duplicate action for {:?}", a.x)));
        }
        action[i] = Some(matrix(&a.matrix, spec.dim)?);
    }
    let action = action
        .into_iter()
        .map(|m| m.unwrap_or_else(|| ExactMatrix::zeros(spec.dim, spec.dim)))
        .collect();
    Ok(LieModule::new(g.clone(), action)?)
}

pub fn assoc_from_json(text: &str) -> Result<AssocAlgebra, SchemaError> {
    let spec: AssocJson = serde_json::from_str(text).map_err(SchemaError::from_serde)?;
    if spec.basis.len() != spec.dim || spec.unit.len() != spec.dim {
        return Err(SchemaError::Schema("basis/unit length differs from dim".into()));
    }
    let names = name_index(&spec.basis)?;
    let d = spec.dim;
    let mut table = vec![Rational::default(); d * d * d];
    for p in &spec.products {
        let (i, j) = (lookup(&names, &p.i)?, lookup(&names, &p.j)?);
        for t in &p.terms {
            table[(i * d + j) * d + lookup(&names, &t.k)?] += rational(&t.coeff)?;
        }
    }
    let unit = spec.unit.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(AssocAlgebra::new(
        spec.basis.clone(),
        |i, j| table[(i * d + j) * d..(i * d + j + 1) * d].to_vec(),
        unit,
        spec.grading.clone(),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = r#"{"dim":3,"basis":["h","e","f"],"brackets":[
        {"i":"h","j":"e","terms":[{"k":"e","coeff":"2"}]},
        {"i":"h","j":"f","terms":[{"k":"f","coeff":"-2"}]},
        {"i":"e","j":"f","terms":[{"k":"h","coeff":"1"}]}]}"#;

    #[test]
    fn parse_sl2_roundtrip() {
        let g = lie_from_json(SL2).unwrap();
        assert_eq!(g, LieAlgebra::sl2());
        let back = serde_json::to_string(&lie_to_spec(&g)).unwrap();
        assert_eq!(lie_from_json(&back).unwrap(), g);
    }

    #[test]
    fn syntax_error_has_position() {
        match lie_from_json("{\"dim\": 3,\n  oops}") {
            Err(SchemaError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        let bad = r#"{"dim":2,"basis":["x","y"],"brackets":[
            {"i":"x","j":"y","terms":[{"k":"x","coeff":"1"}]},
            {"i":"y","j":"x","terms":[{"k":"x","coeff":"1"}]}]}"#;
        assert!(matches!(lie_from_json(bad), Err(SchemaError::Invalid(StructError::Antisymmetry { .. }))));
        let unknown = r#"{"dim":1,"basis":["x"],"brackets":[{"i":"x","j":"z","terms":[]}]}"#;
        assert!(matches!(lie_from_json(unknown), Err(SchemaError::Schema(_))));
    }

    #[test]
    fn module_and_assoc() {
        let g = LieAlgebra::sl2();
        let m = r#"{"dim":2,"action":[
            {"x":"h","matrix":[["1","0"],["0","-1"]]},
            {"x":"e","matrix":[["0","1"],["0","0"]]},
            {"x":"f","matrix":[["0","0"],["1","0"]]}]}"#;
        assert_eq!(module_from_json(m, &g).unwrap().dim(), 2);
        let a = r#"{"dim":2,"basis":["1","x"],"unit":["1","0"],"grading":[0,1],"products":[
            {"i":"1","j":"1","terms":[{"k":"1","coeff":"1"}]},
            {"i":"1","j":"x","terms":[{"k":"x","coeff":"1"}]},
            {"i":"x","j":"1","terms":[{"k":"x","coeff":"1"}]}]}"#;
        assert_eq!(assoc_from_json(a).unwrap(), AssocAlgebra::dual_numbers());
    }
}
