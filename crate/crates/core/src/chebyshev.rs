//! Chebyshev polynomials of the second kind.
//!
//! `S_0 = 1`, `S_1 = v` and `S_j = v S_{j-1} - S_{j-2}` for every integer
//! `j`. Running the recurrence backwards from `(S_0, S_{-1}) = (1, 0)` gives
//! the negative indices, e.g. `S_{-1} = 0` and `S_{-2} = -1`.
//!
//! Everything here is generic over the ring the argument lives in, so the
//! same code evaluates at complex points, at exact rationals, and
//! symbolically (with `v` an integer polynomial).

use std::ops::{Mul, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::polyring::UPolyZ;

/// Determinant tolerance for [`sl2_power`].
pub const UNIMODULAR_TOL: f64 = 1e-9;

/// `(S_j(v), S_{j-1}(v))` in any commutative ring.
pub fn cheb_values<T>(j: i64, v: &T) -> (T, T)
where
    T: Clone + Zero + One + Sub<Output = T> + Mul<Output = T>,
{
    let (mut cur, mut prev) = (T::one(), T::zero());
    if j >= 0 {
        for _ in 0..j {
            let next = v.clone() * cur.clone() - prev;
            prev = cur;
            cur = next;
        }
    } else {
        for _ in 0..j.unsigned_abs() {
            let before = v.clone() * prev.clone() - cur;
            cur = prev;
            prev = before;
        }
    }
    (cur, prev)
}

/// Consecutive Chebyshev values `(S_j(v), S_{j-1}(v))` at a complex point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChebPair {
    pub j: i64,
    pub v: Complex64,
    pub s_j: Complex64,
    pub s_jm1: Complex64,
}

impl ChebPair {
    pub fn new(j: i64, v: Complex64) -> Self {
        let (s_j, s_jm1) = cheb_values(j, &v);
        ChebPair { j, v, s_j, s_jm1 }
    }

    /// The pair at `j + 1`.
    pub fn next(&self) -> ChebPair {
        ChebPair {
            j: self.j + 1,
            v: self.v,
            s_j: self.v * self.s_j - self.s_jm1,
            s_jm1: self.s_j,
        }
    }

    /// The pair at `j - 1`.
    pub fn prev(&self) -> ChebPair {
        ChebPair {
            j: self.j - 1,
            v: self.v,
            s_j: self.s_jm1,
            s_jm1: self.v * self.s_jm1 - self.s_j,
        }
    }

    /// `S_j^2 + S_{j-1}^2 - v S_j S_{j-1}`, which is identically 1.
    pub fn quadratic_form(&self) -> Complex64 {
        self.s_j * self.s_j + self.s_jm1 * self.s_jm1 - self.v * self.s_j * self.s_jm1
    }
}

pub fn cheb_pair(j: i64, v: Complex64) -> ChebPair {
    ChebPair::new(j, v)
}

/// Exact integer coefficients of `S_j`.
pub fn cheb_upoly(j: i64) -> UPolyZ {
    cheb_values(j, &UPolyZ::var()).0
}

/// `V^j` through `V^j = S_j(tr V) 1 - S_{j-1}(tr V) V^{-1}`.
pub fn sl2_power(v: &Mat2, j: i64) -> Result<Mat2> {
    let det_err = (v.det() - Complex64::one()).norm();
    if det_err >= UNIMODULAR_TOL {
        return Err(Error::NotUnimodular(det_err));
    }
    let p = ChebPair::new(j, v.trace());
    // for det 1 the inverse is the adjugate
    let adj = Mat2::new(v.m22, -v.m12, -v.m21, v.m11);
    Ok(Mat2::scalar(p.s_j).sub(&adj.scale(p.s_jm1)))
}

/// Relative residual of `S_j^2 + S_{j-1}^2 - v S_j S_{j-1} = 1`.
pub fn quadratic_form_residual(j: i64, v: Complex64) -> f64 {
    let p = ChebPair::new(j, v);
    (p.quadratic_form() - 1.0).norm() / (1.0 + p.s_j.norm_sqr())
}

/// Relative residual of
/// `S_j S_{j-1} = (v^2 - 2) S_{j-1} S_{j-2} - S_{j-2} S_{j-3} + v`.
pub fn product_recurrence_residual(j: i64, v: Complex64) -> f64 {
    let p0 = ChebPair::new(j, v);
    let p1 = p0.prev();
    let p2 = p1.prev();
    let lhs = p0.s_j * p0.s_jm1;
    let rhs = (v * v - 2.0) * p1.s_j * p1.s_jm1 - p2.s_j * p2.s_jm1 + v;
    (lhs - rhs).norm() / (1.0 + lhs.norm())
}

/// Relative gap between [`sl2_power`] and repeated multiplication.
pub fn matrix_power_residual(v: &Mat2, j: i64) -> Result<f64> {
    let closed = sl2_power(v, j)?;
    let direct = v.pow(j);
    Ok(closed.max_abs_diff(&direct) / direct.max_abs().max(1.0))
}
