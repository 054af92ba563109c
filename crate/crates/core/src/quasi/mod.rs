//! Quasi-theory rings `QK_{n,G}(X)` and the maps between them.

mod kunneth;
mod maps;
mod ring;
mod splitting;
mod tate;

pub use kunneth::{kunneth, kunneth_map, verify_trivial_action_split, KunnethMap};
pub use maps::{
    change_of_group, pullback, qk_restriction, restriction_from, ChangeOfGroup, MapReport, QkMap,
};
pub use ring::{
    qk_compute, qk_mul, BasisJson, ComponentJson, QTheoryClass, QTheoryRing, QTheoryRingJson,
};
pub use splitting::verify_free_action;
pub use tate::{tate_export, tate_symbol, TateComponent, TateExport};
