//! Exact linear algebra for r-spin topological field theories.

pub mod constructors;
pub mod error;
pub mod io;
pub mod lambda_frobenius;
pub mod lg;
pub mod matrix;
pub mod scalars;
pub mod superlinalg;
pub mod surface;

pub use error::{Error, Result};
