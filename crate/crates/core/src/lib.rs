//! Exact homological algebra workbench.

pub mod ce;
pub mod deformation;
pub mod combin;
pub mod exactlin;
pub mod genera;
pub mod hochschild;
pub mod invariants;
pub mod spectral;
pub mod structures;
pub mod weyl;
