//! Exact character tables and the central scalars that grade the
//! Λ-representation bases.

mod cache;
mod modp;
mod scalar;
mod table;

pub use cache::{cache_dir, character_table, character_table_uncached, clear_memory_cache};
pub use scalar::{central_scalar, q_degree, QDegree};
pub use table::{
    restrict_decompose, CharacterJson, CharacterTable, CharacterTableJson, ClassFunction,
    IrreducibleCharacter,
};
