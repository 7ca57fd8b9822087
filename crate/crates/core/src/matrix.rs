//! 2×2 complex matrices, just enough for SL(2,C) word evaluation.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, Zero};

#[derive(Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Mat2 {
    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Mat2::scalar(Complex64::one())
    }

    pub fn scalar(c: Complex64) -> Self {
        Mat2::new(c, Complex64::zero(), Complex64::zero(), c)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    /// Adjugate divided by the determinant.
    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)
    }

    pub fn scale(&self, c: Complex64) -> Mat2 {
        Mat2::new(self.m11 * c, self.m12 * c, self.m21 * c, self.m22 * c)
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        Mat2::new(
            self.m11 - other.m11,
            self.m12 - other.m12,
            self.m21 - other.m21,
            self.m22 - other.m22,
        )
    }

    /// Integer power by repeated multiplication (negative powers use the inverse).
    pub fn pow(&self, j: i64) -> Mat2 {
        let base = if j < 0 { self.inverse() } else { *self };
        (0..j.unsigned_abs()).fold(Mat2::identity(), |acc, _| acc * base)
    }

    pub fn max_abs(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.sub(other).max_abs()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * rhs.m11 + self.m12 * rhs.m21,
            self.m11 * rhs.m12 + self.m12 * rhs.m22,
            self.m21 * rhs.m11 + self.m22 * rhs.m21,
            self.m21 * rhs.m12 + self.m22 * rhs.m22,
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_and_powers() {
        let a = Mat2::new(c(2.0, 1.0), c(1.0, 0.0), c(0.5, -0.5), c(1.0, 0.25));
        let prod = a * a.inverse();
        assert!(prod.max_abs_diff(&Mat2::identity()) < 1e-14);
        assert!(a.pow(3).max_abs_diff(&(a * a * a)) < 1e-12);
        assert!((a.pow(-2) * a.pow(2)).max_abs_diff(&Mat2::identity()) < 1e-12);
        assert_eq!(a.pow(0), Mat2::identity());
    }
}
