//! Cell modules, Gram matrices, simple heads, decomposition numbers and blocks.

pub mod cell;
pub mod decomp;
pub mod oracles;
pub mod rep;

pub use cell::{cell_module, cell_module_singular, gram_matrix, simple_quotient, CellModule, GramMatrix, Provenance, SimpleModule};
pub use decomp::{analyze, blocks, decomposition_matrix, predicted_semisimple, semisimplicity, CellData, DecompositionMatrix};
pub use oracles::{alt_cell_realization_check, cyclotomic_for_e, schur_weyl_rank, Family};
pub use rep::Rep;
