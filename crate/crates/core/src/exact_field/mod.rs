//! Pisot numbers given by integer polynomials and exact arithmetic in Q(β).
//!
//! Every comparison is decided on rational dyadic brackets of β, so results
//! never depend on floating point.

mod element;
mod pisot;
pub(crate) mod poly;
mod roots;

pub use element::{FieldElement, FieldElementRepr};
pub use pisot::PisotNumber;
pub use roots::{DISK_TOLERANCE, UNIT_MARGIN};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("polynomial degree {0} is below 2")]
    DegreeTooLow(usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("some conjugate has modulus at least 1 - {}", UNIT_MARGIN)]
    NotPisot,
    #[error("no real root above 1 dominates the other roots")]
    NoDominantRealRoot,
    #[error("root disks could not be certified to tolerance {}", DISK_TOLERANCE)]
    Uncertified,
    #[error("the dominant root is an integer")]
    IntegralRoot,
    #[error("elements belong to different fields")]
    MixedParents,
    #[error("element is not in Z[beta]")]
    NotIntegral,
    #[error("operation needs degree {expected}, field has degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinate does not fit in 64 bits")]
    Overflow,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Parses a coefficient list written highest degree first, e.g. `"1,-3,2,-2"`.
pub fn parse_coeffs(s: &str) -> Result<Vec<i64>, FieldError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| FieldError::Parse(format!("{t:?}: {e}"))))
        .collect()
}
