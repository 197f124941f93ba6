//! Exact symbolic computation with vertex operator algebras presented by OPE
//! tables: the Bershadsky–Polyakov algebra, the Zamolodchikov W₃ algebra, the
//! half-lattice algebra Π, the realisation of the former inside the tensor
//! product of the latter two, and the relaxed modules this produces.

pub mod algebra;
pub mod combo;
pub mod error;
pub mod fields;
pub mod lattice;
pub mod partition;
pub mod presentations;
pub mod qseries;
pub mod realisation;
pub mod repr;
pub mod voa;
pub mod weight;

pub use bpvoa_exact as exact;
pub use combo::Combo;
pub use error::{Error, Result};
pub use weight::HalfInt;
