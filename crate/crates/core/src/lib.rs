//! Diagonal Chisholm approximants of two-variable power series and diagonal
//! Padé approximants of one-variable series, with exact rational and binary64
//! backends.

pub mod chisholm;
pub mod demos;
pub mod error;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod pade;
pub mod precise;
pub mod scalar;
pub mod series;
pub mod workflow;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
