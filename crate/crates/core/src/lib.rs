//! Numerical laboratory for non-elliptic semigroups of holomorphic self-maps
//! of the unit disk, driven by closed-form Koenigs models.

pub use num_complex::Complex64 as Complex;

pub mod boundary;
pub mod certify;
pub mod classify;
pub mod domain;
pub mod error;
pub mod invariants;
pub mod metric;
pub mod quadrature;
pub mod report;
pub mod scenario;
pub mod semigroup;
pub mod suite;

pub use domain::{build_model, catalog, CatalogEntry, KoenigsModel, ModelSpec};
pub use error::{Error, Result};
