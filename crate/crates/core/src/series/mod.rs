//! Truncated Puiseux/Hahn series and the valuation homomorphisms out of them.

pub mod hom;
mod trunc;

pub use hom::{hom_check, Domain, HomDescriptor, HomKind, HomReport, SourceValue};
pub use trunc::{gauss_elem, SeriesTrunc};
