//! The coefficient ring `ℤ[q_1^±, …, q_n^±]`, matrices over it, and the
//! free-module model of the representation rings of the Λ-groups.

mod matrix;
mod module;
mod poly;

pub use matrix::{determinant, LinearMap, MatrixEntry, SparseVec};
pub use module::{
    lambda_basis, LambdaBasisElement, LambdaModule, ModuleElement, ModuleElementJson,
    ModuleTermJson, ProductTerm,
};
pub use poly::{LaurentPoly, Term};

pub(crate) use matrix::add_into;
pub(crate) use module::integral_shift;
