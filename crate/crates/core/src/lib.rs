//! Weight modules over Weyl algebras: exact classification and explicit
//! construction of simple and indecomposable weight modules, with relation
//! checks and brute-force oracles.

pub mod budget;
pub mod error;
pub mod field;
pub mod heisenberg;
pub mod indecomp;
pub mod linalg;
pub mod orbit;
pub mod simples;
pub mod skeleton;
pub mod weightmod;

pub use budget::Budget;
pub use error::{Error, Result};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "weylmod/1";
