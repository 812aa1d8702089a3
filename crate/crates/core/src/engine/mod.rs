//! Cellular basis, faithful coordinates and structure constants.

pub mod algebra;
pub mod basis;
pub mod cache;
pub mod coords;
pub mod reconstruct;

pub use algebra::{Algebra, SparseMat, SparseRow};
pub use basis::{cellular_word, BasisElem, CellularBasis, Frame};
pub use coords::CoordSystem;
