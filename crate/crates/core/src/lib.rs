//! Exact finite-field machinery for flag varieties, their twisted forms,
//! vector-bundle charts on rational maps between them, and cyclic algebras.

pub mod autgroup;
pub mod brauer;
pub mod bundles;
pub mod error;
pub mod fields;
pub mod flags;
pub mod linalg;

pub use error::{Error, Result};
