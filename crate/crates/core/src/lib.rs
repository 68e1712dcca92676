//! Finite algebras, varieties and Mal'tsev products.

pub mod algebra;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod partition;
pub mod replica;
pub mod rewrite;
pub mod sigma_p;
pub mod term;
pub mod variety;
pub mod witness;

pub use algebra::{Element, FiniteAlgebra};
pub use error::{Error, Result};
pub use partition::{Partition, Relation};
pub use term::{Identity, Name, OpSymbol, Signature, Term};
pub use variety::{preset, Decision, OracleStrength, VarietySpec};
