//! Exact computation with hyperfields, tropical extensions and enriched
//! valuations: hypersums, polynomial roots and multiplicities, verification
//! harnesses, and fine tropical plane curves.

pub mod error;
pub mod extension;
pub mod hfcore;
pub mod json;
pub mod ordgroup;
pub mod poly;
pub mod rat;
pub mod series;
pub mod solve;
pub mod tropgeo;

pub use error::{Error, Result};
pub use extension::ExtSet;
pub use hfcore::{FieldKind, HElem, Hyperfield, SetValue};
pub use ordgroup::GroupElem;
pub use rat::Rational;
pub use series::{Domain, HomDescriptor, SeriesTrunc};
