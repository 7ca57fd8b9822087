use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

/// Univariate polynomial with complex coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    coeffs: Vec<Complex64>,
}

impl CPoly {
    /// Trailing exact zeros are dropped so the stored leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        CPoly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Drops leading coefficients smaller than `rel` times the largest one.
    pub fn deflate(mut self, rel: f64) -> Self {
        let big = self.max_coeff();
        while self.coeffs.last().is_some_and(|c| c.norm() <= rel * big) {
            self.coeffs.pop();
        }
        self
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex64) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> CPoly {
        CPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// `Σ |c_k| |z|^k`, the scale against which residuals are judged.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }
}

impl Zero for CPoly {
    fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for CPoly {
    fn one() -> Self {
        CPoly::from_real(&[1.0])
    }
}

impl CPoly {
    /// The polynomial `z`.
    pub fn var() -> Self {
        CPoly::from_real(&[0.0, 1.0])
    }

    pub fn constant(c: Complex64) -> Self {
        CPoly::new(vec![c])
    }
}

impl Add for CPoly {
    type Output = CPoly;

    fn add(self, rhs: CPoly) -> CPoly {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        CPoly::new(long)
    }
}

impl Neg for CPoly {
    type Output = CPoly;

    fn neg(self) -> CPoly {
        CPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for CPoly {
    type Output = CPoly;

    fn sub(self, rhs: CPoly) -> CPoly {
        self + (-rhs)
    }
}

impl Mul for CPoly {
    type Output = CPoly;

    fn mul(self, rhs: CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }
}
