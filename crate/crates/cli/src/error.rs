use std::fmt;

use hwb_core::ce::CeError;
use hwb_core::deformation::DeformError;
use hwb_core::exactlin::LinError;
use hwb_core::genera::GeneraError;
use hwb_core::hochschild::HochError;
use hwb_core::invariants::InvariantsError;
use hwb_core::spectral::SpectralError;
use hwb_core::structures::schema::SchemaError;
use hwb_core::structures::StructError;
use hwb_core::weyl::WeylError;
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Malformed { line: usize, column: usize, message: String },
    Io(String),
    Invalid(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed { .. } | CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Malformed { line, column, message } => {
                json!({"error": "malformed_json", "line": line, "column": column, "message": message})
            }
            CliError::Io(m) => json!({"error": "io", "message": m}),
            CliError::Invalid(m) => json!({"error": "validation", "message": m}),
            CliError::Cap(m) => json!({"error": "cap_exceeded", "message": m}),
        }
    }

    pub fn invalid(m: impl Into<String>) -> Self {
        CliError::Invalid(m.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed { line, column, message } => write!(f, "malformed JSON at {line}:{column}: {message}"),
            CliError::Io(m) | CliError::Invalid(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        match e {
            SchemaError::Syntax { line, column, message } => CliError::Malformed { line, column, message },
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<StructError> for CliError {
    fn from(e: StructError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<LinError> for CliError {
    fn from(e: LinError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CeError> for CliError {
    fn from(e: CeError) -> Self {
        match e {
            CeError::DegreeTooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<HochError> for CliError {
    fn from(e: HochError) -> Self {
        match e {
            HochError::Budget { .. } | HochError::Cap(_) => CliError::Cap(e.to_string()),
            HochError::Ce(c) => c.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::DimsExceeded { .. } => CliError::Cap(e.to_string()),
            SpectralError::Ce(c) => c.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::Cap(_) => CliError::Cap(e.to_string()),
            WeylError::Ce(c) => c.into(),
            WeylError::Spectral(s) => s.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<InvariantsError> for CliError {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Cap(_) => CliError::Cap(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<DeformError> for CliError {
    fn from(e: DeformError) -> Self {
        match e {
            DeformError::Cap(_) | DeformError::DegreeCap { .. } => CliError::Cap(e.to_string()),
            DeformError::Hoch(h) => h.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<GeneraError> for CliError {
    fn from(e: GeneraError) -> Self {
        match e {
            GeneraError::Cap(_) => CliError::Cap(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
