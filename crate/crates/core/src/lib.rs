//! Exact computations for two-parameter quantized walled Brauer algebras:
//! scalars, combinatorics, the mixed tensor representation, a cellular-basis
//! engine and the representation-theoretic layer built on top of it.

pub mod combinatorics;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod relations;
pub mod repthy;
pub mod scalars;
pub mod suite;
pub mod tensor;
pub mod words;

pub use error::{Result, WbqError};
