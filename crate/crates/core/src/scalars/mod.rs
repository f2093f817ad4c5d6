//! Exact scalars in ℚ(ζ_N) and dense exact linear algebra over them.

mod field;
mod literal;
mod matrix;

pub use field::{cyclotomic_polynomial, CyclotomicField, Rational, Scalar};
pub use literal::{format_scalar, parse_scalar};
pub use matrix::ExactMatrix;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with explicit errors for division by zero and mismatched fields.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// ζ_N^k in canonical form.
pub fn root_of_unity(n: u32, k: i64) -> Result<Scalar> {
    Ok(CyclotomicField::get(n)?.root(k))
}

/// `(rank, kernel_dim)` of a matrix by exact elimination.
pub fn matrix_rank_kernel(m: &ExactMatrix) -> (usize, usize) {
    m.rank_kernel()
}
