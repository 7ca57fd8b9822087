//! Polynomials in an auxiliary variable `z` whose coefficients are
//! [`MPolyZ`], and elimination of `z` by Sylvester resultants.

use num_bigint::BigInt;
use num_traits::One;

use super::mpoly::{MPolyZ, Vars};
use crate::error::{Error, Result};

/// `Σ coeffs[k] z^k` with bivariate integer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ZPoly {
    coeffs: Vec<MPolyZ>,
    vars: Vars,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<MPolyZ>, vars: Vars) -> Self {
        while coeffs.last().is_some_and(MPolyZ::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs, vars }
    }

    /// `lead * z - constant`.
    pub fn linear(lead: MPolyZ, constant: MPolyZ) -> Self {
        let vars = lead.vars();
        ZPoly::new(vec![-&constant, lead], vars)
    }

    pub fn coeffs(&self) -> &[MPolyZ] {
        &self.coeffs
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Homogenized substitution `z = num/den`, cleared by `den^deg`:
    /// returns `Σ c_k num^k den^(deg-k)`.
    pub fn substitute_fraction(&self, num: &MPolyZ, den: &MPolyZ) -> MPolyZ {
        let Some(deg) = self.degree() else {
            return MPolyZ::zero(self.vars);
        };
        let mut num_pows = vec![MPolyZ::constant(1, self.vars)];
        let mut den_pows = vec![MPolyZ::constant(1, self.vars)];
        for k in 1..=deg {
            num_pows.push(&num_pows[k - 1] * num);
            den_pows.push(&den_pows[k - 1] * den);
        }
        self.coeffs
            .iter()
            .enumerate()
            .fold(MPolyZ::zero(self.vars), |acc, (k, c)| {
                &acc + &(&(c * &num_pows[k]) * &den_pows[deg - k])
            })
    }
}

/// Sylvester resultant `Res_z(a, b)`, computed as a fraction-free (Bareiss)
/// determinant. Follows the convention `Res(z - f, z - g) = f - g`.
pub fn resultant_z(a: &ZPoly, b: &ZPoly) -> Result<MPolyZ> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::DegreeZero);
    };
    if da == 0 || db == 0 {
        return Err(Error::DegreeZero);
    }
    if a.vars != b.vars {
        return Err(Error::VarMismatch(a.vars, b.vars));
    }
    let vars = a.vars;
    let n = da + db;
    let zero = MPolyZ::zero(vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    for row in 0..db {
        for (k, c) in a.coeffs.iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in b.coeffs.iter().rev().enumerate() {
            m[db + row][row + k] = c.clone();
        }
    }
    Ok(bareiss_det(m, vars))
}

fn bareiss_det(mut m: Vec<Vec<MPolyZ>>, vars: Vars) -> MPolyZ {
    let n = m.len();
    let mut negate = false;
    let mut prev = MPolyZ::constant(1, vars);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MPolyZ::zero(vars);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross
                    .div_exact(&prev)
                    .expect("Bareiss quotients are exact over an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.scale(&-BigInt::one())
    } else {
        det
    }
}
