//! Exact computations with differential graded algebras and modules.

pub mod catalog;
pub mod dga;
pub mod dgmod;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod random;
pub mod report;
pub mod structure;

pub use error::{DgError, Result};
