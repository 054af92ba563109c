//! Exact computation of the quasi-theory rings `QK_{n,G}(X)` for a finite
//! permutation group `G` acting on a finite set `X`, together with the
//! restriction, change-of-group and Künneth maps between them.

pub mod character;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod io;
pub mod laurent;
pub mod loop_groupoid;
pub mod quasi;
pub mod verify;

pub use error::{Error, Result};
