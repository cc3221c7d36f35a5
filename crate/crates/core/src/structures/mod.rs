//! Lie algebras, modules, associative algebras and the specific families
//! used throughout the workbench.

mod assoc;
mod lie;
mod module;
pub mod schema;
mod semidirect;
mod vector_fields;
mod witt;

pub use assoc::AssocAlgebra;
pub use lie::LieAlgebra;
pub use module::LieModule;
pub use semidirect::{semidirect, semidirect_jacobi_only};
pub use vector_fields::VectorFields;
pub use witt::{witt_cocycle, VirasoroElement, WittBracket, WittWindow};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("antisymmetry violated at ({i},{j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity violated at (i,j,k,l) = ({i},{j},{k},{l})")]
    Jacobi { i: usize, j: usize, k: usize, l: usize },
    #[error("module axiom violated for generators ({i},{j})")]
    ModuleAxiom { i: usize, j: usize },
    #[error("associativity violated at ({i},{j},{k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unit law violated at basis element {0}")]
    Unit(usize),
    #[error("product e{i}*e{j} does not respect the grading")]
    Grading { i: usize, j: usize },
    #[error("algebra is not commutative at ({i},{j})")]
    NotCommutative { i: usize, j: usize },
    #[error("action of generator {w} is not a derivation on ({a},{b})")]
    NotDerivation { w: usize, a: usize, b: usize },
    #[error("subspace is not closed under the bracket: ({i},{j})")]
    NotSubalgebra { i: usize, j: usize },
    #[error("subspace is not an ideal: ({i},{j})")]
    NotIdeal { i: usize, j: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("bracket leaves the window")]
    OutOfWindow,
    #[error("index {0} outside the window")]
    OutsideWindow(i64),
    #[error("level {0} out of range")]
    LevelOutOfRange(i64),
    #[error("algebra mismatch between module and Lie algebra")]
    AlgebraMismatch,
}
