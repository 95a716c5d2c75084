//! Exact arithmetic and explicit bounds for torsion points on the Legendre family.

pub mod bounds;
pub mod cli;
pub mod constants;
pub mod error;
pub mod galois;
pub mod legendre;
pub mod numbers;
pub mod scanner;
pub mod subgroup;

pub use error::{Error, Result};
