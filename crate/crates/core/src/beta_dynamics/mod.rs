//! The β-transformation, greedy expansions, admissibility and the
//! classification of the expansion of 1.

mod admissible;
mod expand;
mod word;

pub use admissible::{classify_digits, classify_one_expansion, is_admissible, OneClass, ParryBound};
pub use expand::{
    expand, expansion_of_one, fractional_part, integer_split, is_fin, t_beta_step, ExpansionOracle,
    OrbitClassification, OrbitKind, DEFAULT_CAP,
};
pub use word::{render_digits, DigitWord};

pub(crate) use expand::{beta_pow, minimize};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BetaError {
    #[error("state outside [0, 1)")]
    OutOfDomain,
    #[error("negative input")]
    NegativeInput,
    #[error("the expansion of 1 is infinite")]
    InfiniteExpansionOfOne,
}

#[cfg(test)]
mod tests;
