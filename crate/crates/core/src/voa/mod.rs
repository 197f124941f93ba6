//! Universal vertex algebras presented by OPE tables.

mod engine;
pub(crate) mod table;
mod types;

pub use engine::{Voa, VoaModule};
pub use table::OpeTable;
pub use types::{Generator, Ground, HwGround, Mode, PbwMonomial, State};
