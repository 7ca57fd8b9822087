use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending degree. The highest stored coefficient is nonzero;
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPolyZ {
    coeffs: Vec<BigInt>,
}

impl UPolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPolyZ { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UPolyZ::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial `v`.
    pub fn var() -> Self {
        UPolyZ::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> UPolyZ {
        UPolyZ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Horner evaluation over any ring the integers embed into.
    pub fn eval_with<T, F>(&self, v: &T, embed: F) -> T
    where
        T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
        F: Fn(&BigInt) -> T,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * v.clone() + embed(c))
    }

    pub fn eval_complex(&self, v: Complex64) -> Complex64 {
        self.eval_with(&v, |c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> UPolyZ {
        UPolyZ::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl Zero for UPolyZ {
    fn zero() -> Self {
        UPolyZ { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UPolyZ {
    fn one() -> Self {
        UPolyZ::from_i64(&[1])
    }
}

impl Add for UPolyZ {
    type Output = UPolyZ;

    fn add(self, rhs: UPolyZ) -> UPolyZ {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        UPolyZ::new(long)
    }
}

impl Neg for UPolyZ {
    type Output = UPolyZ;

    fn neg(self) -> UPolyZ {
        UPolyZ {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for UPolyZ {
    type Output = UPolyZ;

    fn sub(self, rhs: UPolyZ) -> UPolyZ {
        self + (-rhs)
    }
}

impl Mul for UPolyZ {
    type Output = UPolyZ;

    fn mul(self, rhs: UPolyZ) -> UPolyZ {
        &self * &rhs
    }
}

impl Mul for &UPolyZ {
    type Output = UPolyZ;

    fn mul(self, rhs: &UPolyZ) -> UPolyZ {
        if self.is_zero() || rhs.is_zero() {
            return UPolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPolyZ::new(out)
    }
}

impl fmt::Debug for UPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Descending powers of `v`, e.g. `v^3 - 2*v`.
impl fmt::Display for UPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("v")?,
                1 => write!(f, "{mag}*v")?,
                _ if unit => write!(f, "v^{k}")?,
                _ => write!(f, "{mag}*v^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_trims_and_multiplies() {
        let a = UPolyZ::from_i64(&[1, 1]);
        let b = UPolyZ::from_i64(&[-1, 1]);
        assert_eq!(a.clone() * b.clone(), UPolyZ::from_i64(&[-1, 0, 1]));
        assert!((a.clone() - a.clone()).is_zero());
        assert_eq!((a + b).degree(), Some(1));
        assert_eq!(UPolyZ::zero().degree(), None);
    }

    #[test]
    fn display_and_derivative() {
        let p = UPolyZ::from_i64(&[0, -2, 0, 1]);
        assert_eq!(p.to_string(), "v^3 - 2*v");
        assert_eq!(p.derivative(), UPolyZ::from_i64(&[-2, 0, 3]));
        assert_eq!(UPolyZ::from_i64(&[-1]).to_string(), "-1");
    }
}
