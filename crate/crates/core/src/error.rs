use std::fmt;

use thiserror::Error;

/// Errors raised while building, fitting or evaluating approximants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular system at column {column}: the approximant does not exist at this order")]
    SingularSystem { column: usize },

    #[error("Equations may not give solutions for all solve variables: missing coefficients {}", MissingList(.missing))]
    InsufficientTerms { missing: Vec<(usize, usize)> },

    #[error("series is not normalized: {0}")]
    NotNormalized(String),

    #[error("evaluation point is a pole of the approximant")]
    PoleHit,

    #[error("parameter {name} = {value} hits a pole")]
    ParameterPole { name: String, value: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

struct MissingList<'a>(&'a [(usize, usize)]);

impl fmt::Display for MissingList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 12;
        for (i, (m, n)) in self.0.iter().take(SHOWN).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({m},{n})")?;
        }
        if self.0.len() > SHOWN {
            write!(f, ", ... ({} total)", self.0.len())?;
        }
        Ok(())
    }
}
