//! Exact computation of graded cohomology for color Lie algebras.
//!
//! Scalars live in a cyclotomic field ℚ(ζ_N); every dimension reported by the
//! crate comes from exact elimination.

pub mod ce_cohomology;
pub mod color_lie;
pub mod enveloping;
pub mod error;
pub mod fixtures;
pub mod gmodules;
pub mod grading;
pub mod hochschild;
pub mod lincomb;
pub mod report;
pub mod scalars;

pub use color_lie::{validate_color_lie, BasisVector, ColorLieAlgebra, LieElement};
pub use error::{Error, Result};
pub use grading::{
    chi_eval, group_op, validate_bicharacter, Bicharacter, GroupElement, GroupOp, GroupSpec,
};
pub use lincomb::LinComb;
pub use report::{Check, ValidationReport};
pub use scalars::{CyclotomicField, ExactMatrix, Rational, Scalar};
