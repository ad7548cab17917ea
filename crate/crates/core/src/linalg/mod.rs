//! Exact linear algebra over a [`FiniteField`](crate::fields::FiniteField).

mod decomposition;
mod matrix;
mod quotient;
mod semilinear;
mod subspace;

pub use decomposition::Decomposition;
pub use matrix::{Matrix, RowEchelon};
pub use quotient::QuotientChart;
pub use semilinear::SemilinearMap;
pub use subspace::Subspace;
