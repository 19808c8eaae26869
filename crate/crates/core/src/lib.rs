//! Exact β-expansions for Pisot numbers, a word calculus for rewriting
//! representations, the lattice map conjugate to the β-transformation, and
//! finiteness checks for the cubic, quartic and quintic families.

pub mod beta_dynamics;
pub mod exact_field;
pub mod families_finiteness;
pub mod lattice_tau;
pub mod word_calculus;

pub use exact_field::{FieldElement, FieldError, PisotNumber};
