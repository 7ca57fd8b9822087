//! Exact and floating polynomial arithmetic.
//!
//! * [`UPolyZ`]: univariate, integer coefficients (Chebyshev polynomials,
//!   the canonical-component polynomial before evaluation).
//! * [`MPolyZ`]: sparse bivariate, integer coefficients (the `Q_m`
//!   sequence and A-polynomials).
//! * [`CPoly`]: univariate, complex coefficients (root finding).
//! * [`ZPoly`] and [`resultant_z`]: elimination of an auxiliary variable.

mod cpoly;
mod mpoly;
mod resultant;
mod upoly;

pub use cpoly::CPoly;
pub use mpoly::{MPolyZ, Vars};
pub use resultant::{resultant_z, ZPoly};
pub use upoly::UPolyZ;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Ring operation on two polynomials over the same variables.
pub fn arith(a: &MPolyZ, b: &MPolyZ, op: ArithOp) -> Result<MPolyZ> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}
