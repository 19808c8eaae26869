//! The families `p_n`, `q_{n,b,c}`, `r_{n,c}` and finiteness checks on them.

mod akiyama;
mod checks;
mod scan;

pub use akiyama::{akiyama_set, AkiyamaElement, AkiyamaReport};
pub use checks::{
    check_suff, is_rotation, q_family_checks, q_one_minus_2alpha_word, q_one_minus_alpha_word, r_family_checks, r_period_word,
    QReport, RReport, SuffReport, SuffVerdict,
};
pub use scan::{residue_row, residue_table, scan_f1, scan_family, F1Report, NonFinite, ResidueRow};

use crate::beta_dynamics::BetaError;
use crate::exact_field::{FieldError, PisotNumber};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("the polynomial of {0} has no certified Pisot root")]
    NotPisot(FamilySpec),
    #[error("the expansion of 1 is infinite")]
    InfiniteExpansionOfOne,
    #[error("conjugate embedding not certified: {0}")]
    ComplexEmbeddingUncertified(String),
    #[error("operation needs degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Beta(#[from] BetaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    P { n: i64 },
    Q { n: i64, b: i64, c: i64 },
    R { n: i64, c: i64 },
}

impl FamilySpec {
    pub fn p(n: i64) -> Result<FamilySpec, FamilyError> {
        FamilySpec::P { n }.validated()
    }

    pub fn q(n: i64, b: i64, c: i64) -> Result<FamilySpec, FamilyError> {
        FamilySpec::Q { n, b, c }.validated()
    }

    pub fn r(n: i64, c: i64) -> Result<FamilySpec, FamilyError> {
        FamilySpec::R { n, c }.validated()
    }

    pub fn validated(self) -> Result<FamilySpec, FamilyError> {
        let bad = |s: String| Err(FamilyError::ConstraintViolation(s));
        match self {
            FamilySpec::P { n } if n < 2 => bad(format!("p: n = {n} < 2")),
            FamilySpec::Q { n, b, c } if n < 2 || b <= 0 || b > c || b + c != n => {
                bad(format!("q: need 0 < b <= c, b + c = n >= 2, got n={n} b={b} c={c}"))
            }
            FamilySpec::R { n, c } if n < 2 || c == 0 || c.abs() >= n => {
                bad(format!("r: need n >= 2 and 1 <= |c| < n, got n={n} c={c}"))
            }
            s => Ok(s),
        }
    }

    pub fn n(&self) -> i64 {
        match *self {
            FamilySpec::P { n } | FamilySpec::Q { n, .. } | FamilySpec::R { n, .. } => n,
        }
    }

    /// Minimal polynomial, highest degree first.
    pub fn coeffs(&self) -> Vec<i64> {
        match *self {
            FamilySpec::P { n } => vec![1, -(n + 1), n, -n],
            FamilySpec::Q { n, b, c } => vec![1, -n, 0, -b, -c],
            FamilySpec::R { n, c } => vec![1, -n, 1, -n, c, -c],
        }
    }

    /// `⌊β⌋` predicted by the family shape.
    pub fn expected_floor(&self) -> i64 {
        match *self {
            FamilySpec::P { n } | FamilySpec::Q { n, .. } => n,
            FamilySpec::R { n, .. } => n - 1,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::P { n } => write!(f, "p{{n={n}}}"),
            FamilySpec::Q { n, b, c } => write!(f, "q{{n={n},b={b},c={c}}}"),
            FamilySpec::R { n, c } => write!(f, "r{{n={n},c={c}}}"),
        }
    }
}

/// Builds the family member and certifies it as Pisot.
pub fn build(spec: FamilySpec) -> Result<PisotNumber, FamilyError> {
    let spec = spec.validated()?;
    match PisotNumber::make(&spec.coeffs()) {
        Ok(b) => Ok(b),
        Err(FieldError::NotPisot) | Err(FieldError::NoDominantRealRoot) => Err(FamilyError::NotPisot(spec)),
        Err(e) => Err(e.into()),
    }
}

/// Like [`build`], but falls back to the dominant real root when the
/// polynomial is not Pisot (most of the `r` family).
pub fn build_dominant(spec: FamilySpec) -> Result<PisotNumber, FamilyError> {
    match build(spec) {
        Err(FamilyError::NotPisot(_)) => Ok(PisotNumber::dominant_root(&spec.coeffs())?),
        r => r,
    }
}

/// A named claim and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub holds: bool,
}

impl Check {
    pub fn new(claim: impl Into<String>, holds: bool) -> Check {
        Check { claim: claim.into(), holds }
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}

#[cfg(test)]
mod tests;
