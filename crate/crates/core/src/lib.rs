//! Exact computer algebra for algebras whose operations are indexed by
//! elements of a semigroup or dimonoid.

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod free;
pub mod index;
pub mod json;
pub mod linear;
pub mod report;

pub use error::{Error, Result};
pub use linear::{LinComb, Scalar};
pub use report::Report;
