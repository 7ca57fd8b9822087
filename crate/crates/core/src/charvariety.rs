//! Nonabelian SL(2,C) representations of the double twist link
//! `J(2m+1, 2n+1)` and the canonical component of `J(2m+1, 2m+1)`.
//!
//! The link group is `<a, b | a w = w a>` with
//! `w = (b^-1 a)^m [(b a^-1)^m b a (b^-1 a)^m]^n`. Up to conjugation a
//! nonabelian representation sends
//!
//! ```text
//! a -> [[s1, 1], [0, 1/s1]]      b -> [[s2, 0], [u, 1/s2]]
//! ```
//!
//! and everything is expressed through the traces `x = tr a`, `y = tr b`,
//! `z = tr ab^-1` and `t = tr d`, where `c = (b^-1 a)^m` and
//! `d = b c^-1 a c` so that `w = c d^n`.
//!
//! Closed forms here are checked against literal word products in
//! [`literal_word`] and [`literal_word_bar`].

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::chebyshev::{cheb_values, ChebPair};
use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::polyring::{CPoly, UPolyZ};

/// Residual threshold for [`w11_canonical`].
pub const ON_VARIETY_TOL: f64 = 1e-6;

/// Twist parameters of `J(2m+1, 2n+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DtlParams {
    pub m: i64,
    pub n: i64,
}

impl DtlParams {
    pub fn new(m: i64, n: i64) -> Self {
        DtlParams { m, n }
    }

    /// `L_m = J(2m+1, 2m+1)`; rejects `m = -1, 0`.
    pub fn canonical(m: i64) -> Result<Self> {
        check_canonical_index(m)?;
        Ok(DtlParams { m, n: m })
    }
}

pub(crate) fn check_canonical_index(m: i64) -> Result<()> {
    if m == 0 || m == -1 {
        Err(Error::BadIndex(m))
    } else {
        Ok(())
    }
}

/// A representation in normal form, parameterized by `(s1, s2, u)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepPoint {
    pub s1: Complex64,
    pub s2: Complex64,
    pub u: Complex64,
}

impl RepPoint {
    pub fn new(s1: Complex64, s2: Complex64, u: Complex64) -> Result<Self> {
        for (name, v) in [("s1", s1), ("s2", s2), ("u", u)] {
            if v.is_zero() {
                return Err(Error::DegenerateParameter(name));
            }
        }
        Ok(RepPoint { s1, s2, u })
    }

    /// The point with meridian eigenvalues `s1, s2` and trace `tr ab^-1 = z`.
    pub fn from_traces(s1: Complex64, s2: Complex64, z: Complex64) -> Result<Self> {
        RepPoint::new(s1, s2, s1 / s2 + s2 / s1 - z)
    }

    pub fn x(&self) -> Complex64 {
        self.s1 + self.s1.inv()
    }

    pub fn y(&self) -> Complex64 {
        self.s2 + self.s2.inv()
    }

    pub fn z(&self) -> Complex64 {
        self.s1 / self.s2 + self.s2 / self.s1 - self.u
    }

    pub fn t(&self, m: i64) -> Complex64 {
        trace_t(self.x(), self.y(), self.z(), m)
    }

    pub fn rho_a(&self) -> Mat2 {
        Mat2::new(self.s1, Complex64::one(), Complex64::zero(), self.s1.inv())
    }

    pub fn rho_b(&self) -> Mat2 {
        Mat2::new(self.s2, Complex64::zero(), self.u, self.s2.inv())
    }
}

/// `t = (xy - z)(S_m(z)^2 + S_{m-1}(z)^2) - (x^2 + y^2 - 4) S_m(z) S_{m-1}(z)`.
pub fn trace_t(x: Complex64, y: Complex64, z: Complex64, m: i64) -> Complex64 {
    let p = ChebPair::new(m, z);
    (x * y - z) * (p.s_j * p.s_j + p.s_jm1 * p.s_jm1) - (x * x + y * y - 4.0) * p.s_j * p.s_jm1
}

/// The Riley polynomial `S_m(z) S_{n-1}(t) - S_{m-1}(z) S_n(t)`.
pub fn riley_value(params: DtlParams, x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    let t = trace_t(x, y, z, params.m);
    let pz = ChebPair::new(params.m, z);
    let pt = ChebPair::new(params.n, t);
    pz.s_j * pt.s_jm1 - pz.s_jm1 * pt.s_j
}

/// The Riley polynomial as a polynomial in `z` for fixed `x`, `y`.
pub fn riley_poly_in_z(params: DtlParams, x: Complex64, y: Complex64) -> CPoly {
    let z = CPoly::var();
    let (sm, sm1) = cheb_values(params.m, &z);
    let xy = CPoly::constant(x * y);
    let quad = CPoly::constant(x * x + y * y - 4.0);
    let t = (xy - z) * (sm.clone() * sm.clone() + sm1.clone() * sm1.clone())
        - quad * sm.clone() * sm1.clone();
    let (sn, sn1) = cheb_values(params.n, &t);
    sm * sn1 - sm1 * sn
}

/// Roots in `z` of the Riley polynomial for fixed `x`, `y`.
///
/// Roots of the expanded polynomial are refined by Newton steps on
/// [`riley_value`], which avoids the cancellation in the expanded
/// coefficients.
pub fn riley_roots(params: DtlParams, x: Complex64, y: Complex64) -> Result<Vec<Complex64>> {
    let p = riley_poly_in_z(params, x, y);
    let dp = p.derivative();
    let roots = crate::rootfinder::all_roots(&p, 1e-12)?.roots;
    Ok(roots
        .into_iter()
        .map(|mut z| {
            let mut best = riley_value(params, x, y, z).norm();
            for _ in 0..6 {
                let cand = z - riley_value(params, x, y, z) / dp.eval(z);
                let r = riley_value(params, x, y, cand).norm();
                if r.is_nan() || r >= best {
                    break;
                }
                z = cand;
                best = r;
            }
            z
        })
        .collect())
}

/// Closed-form images of the words used in the presentation.
#[derive(Clone, Copy, Debug)]
pub struct WordMatrices {
    pub rho_a: Mat2,
    pub rho_b: Mat2,
    pub rho_c: Mat2,
    pub rho_d: Mat2,
    pub rho_w: Mat2,
    /// Upper-left entry of `rho(w)` from its closed form (valid everywhere).
    pub w11: Complex64,
    /// Lower-left entry of `rho(w)`, `u s1 w'_21`.
    pub w21: Complex64,
    /// Upper-left entry of `rho(w-bar)` on the representation variety.
    pub ow11: Complex64,
    pub t: Complex64,
}

/// Fills every matrix from the Chebyshev closed forms.
///
/// The lower-left entry of `rho(w)` factors as `u * s1 * w'_21` where
/// `w'_21` is the Riley polynomial.
pub fn build_matrices(p: &RepPoint, params: DtlParams) -> Result<WordMatrices> {
    let RepPoint { s1, s2, u } = RepPoint::new(p.s1, p.s2, p.u)?;
    let (x, y, z) = (p.x(), p.y(), p.z());
    let (m, n) = (params.m, params.n);
    let pz = ChebPair::new(m, z);
    let (sm, sm1) = (pz.s_j, pz.s_jm1);
    let (is1, is2) = (s1.inv(), s2.inv());

    let rho_c = Mat2::new(
        sm - (is1 * s2 - u) * sm1,
        is2 * sm1,
        -s1 * u * sm1,
        sm - s1 * is2 * sm1,
    );

    let (sm_sq, smm1, sm1_sq) = (sm * sm, sm * sm1, sm1 * sm1);
    let rho_d = Mat2::new(
        s1 * s2 * sm_sq - (s1 * s1 + s2 * s2) * smm1 + (s1 * s2 + u) * sm1_sq,
        s2 * sm_sq - x * smm1 + is2 * sm1_sq,
        u * (s1 * sm_sq - y * smm1 + is1 * sm1_sq),
        (is1 * is2 + u) * sm_sq - (is1 * is1 + is2 * is2) * smm1 + is1 * is2 * sm1_sq,
    );

    let t = trace_t(x, y, z, m);
    let pt = ChebPair::new(n, t);
    let (sn, sn1) = (pt.s_j, pt.s_jm1);
    let d_pow = Mat2::new(
        sn - rho_d.m22 * sn1,
        rho_d.m12 * sn1,
        rho_d.m21 * sn1,
        sn - rho_d.m11 * sn1,
    );
    let rho_w = rho_c * d_pow;

    let w21 = u * s1 * (sm * sn1 - sm1 * sn);
    let w11 = -sn1 * ((s1 * is2 + is1 * s2 + is1 * is2 - z) * sm - is1 * is1 * sm1)
        + sn * (sm + (s1 * is2 - z) * sm1);
    let ow11 = -sn1 * ((s1 * is2 + is1 * is2) * sm - is2 * is2 * sm1) + sn * sm;

    Ok(WordMatrices {
        rho_a: p.rho_a(),
        rho_b: p.rho_b(),
        rho_c,
        rho_d,
        rho_w,
        w11,
        w21,
        ow11,
        t,
    })
}

/// Upper-left entry of `rho(w)` in the simplified form that holds on the
/// representation variety (where the Riley polynomial vanishes).
pub fn w11_on_variety(p: &RepPoint, params: DtlParams) -> Complex64 {
    let (s1, s2) = (p.s1, p.s2);
    let z = p.z();
    let pz = ChebPair::new(params.m, z);
    let pt = ChebPair::new(params.n, p.t(params.m));
    -pt.s_jm1 * ((s2 / s1 + (s1 * s2).inv()) * pz.s_j - pz.s_jm1 / (s1 * s1)) + pt.s_j * pz.s_j
}

/// `rho(w)` by multiplying out the word letter by letter.
pub fn literal_word(p: &RepPoint, params: DtlParams) -> Mat2 {
    let a = p.rho_a();
    let b = p.rho_b();
    word_product(a, b, params)
}

/// `rho(w-bar)`, the word with `a` and `b` exchanged.
pub fn literal_word_bar(p: &RepPoint, params: DtlParams) -> Mat2 {
    let a = p.rho_a();
    let b = p.rho_b();
    word_product(b, a, params)
}

fn word_product(a: Mat2, b: Mat2, params: DtlParams) -> Mat2 {
    let (ai, bi) = (a.inverse(), b.inverse());
    let c = (bi * a).pow(params.m);
    let inner = (b * ai).pow(params.m) * b * a * c;
    c * inner.pow(params.n)
}

/// `‖ρ(a)ρ(w) − ρ(w)ρ(a)‖` relative to `‖ρ(a)‖ ‖ρ(w)‖`.
pub fn commutation_residual(wm: &WordMatrices) -> f64 {
    let lhs = wm.rho_a * wm.rho_w;
    let rhs = wm.rho_w * wm.rho_a;
    lhs.max_abs_diff(&rhs) / (wm.rho_a.max_abs() * wm.rho_w.max_abs()).max(1.0)
}

/// `R_{L_m}(s, z)` written as `q U(z) + V(z)` with `q = s^2 + s^-2`:
/// `U = (S_m - S_{m-1})^2` and `V = (2 - z)(S_m^2 + S_{m-1}^2) - z`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalPoly {
    pub m: i64,
    q_part: UPolyZ,
    rest: UPolyZ,
    q_part_f: Vec<f64>,
    rest_f: Vec<f64>,
}

impl CanonicalPoly {
    fn expand(m: i64) -> Self {
        let (sm, sm1) = cheb_values(m, &UPolyZ::var());
        let diff = sm.clone() - sm1.clone();
        let q_part = &diff * &diff;
        let sq_sum = &sm * &sm + &sm1 * &sm1;
        let rest = UPolyZ::from_i64(&[2, -1]) * sq_sum - UPolyZ::var();
        CanonicalPoly {
            m,
            q_part_f: q_part.to_f64_coeffs(),
            rest_f: rest.to_f64_coeffs(),
            q_part,
            rest,
        }
    }

    /// Coefficient of `q`, exact.
    pub fn q_part(&self) -> &UPolyZ {
        &self.q_part
    }

    /// The `q`-free part, exact.
    pub fn rest(&self) -> &UPolyZ {
        &self.rest
    }

    pub fn degree(&self) -> usize {
        self.rest
            .degree()
            .unwrap_or(0)
            .max(self.q_part.degree().unwrap_or(0))
    }

    pub fn at_q(&self, q: Complex64) -> CPoly {
        let n = self.q_part_f.len().max(self.rest_f.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.q_part_f.get(k).copied().unwrap_or(0.0);
                let b = self.rest_f.get(k).copied().unwrap_or(0.0);
                q * a + b
            })
            .collect();
        CPoly::new(coeffs)
    }

    pub fn at_s(&self, s: Complex64) -> CPoly {
        self.at_q(q_of_s(s))
    }

    /// Specialization at `s = e^{iω/2}`, i.e. `q = 2 cos ω`.
    pub fn at_omega(&self, omega: f64) -> CPoly {
        self.at_q(Complex64::new(2.0 * omega.cos(), 0.0))
    }

    /// `|R(q, z)|` divided by the coefficient-weighted size of `z`.
    pub fn scaled_residual(&self, q: Complex64, z: Complex64) -> f64 {
        let p = self.at_q(q);
        p.eval(z).norm() / p.eval_scale(z).max(f64::MIN_POSITIVE)
    }
}

pub fn q_of_s(s: Complex64) -> Complex64 {
    s * s + (s * s).inv()
}

/// The expanded canonical-component polynomial for `m`, shared per process.
pub fn canonical_family(m: i64) -> Result<Arc<CanonicalPoly>> {
    check_canonical_index(m)?;
    static CACHE: OnceLock<RwLock<HashMap<i64, Arc<CanonicalPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cache lock").get(&m) {
        return Ok(Arc::clone(p));
    }
    let fresh = Arc::new(CanonicalPoly::expand(m));
    let mut guard = cache.write().expect("cache lock");
    Ok(Arc::clone(guard.entry(m).or_insert(fresh)))
}

/// `R_{L_m}(s, ·)` as a polynomial in `z`:
/// `(s^2 + s^-2 + 2 - z)(S_m^2 + S_{m-1}^2) - 2(s^2 + s^-2) S_m S_{m-1} - z`.
pub fn canonical_poly(m: i64, s: Complex64) -> Result<CPoly> {
    if s.is_zero() {
        return Err(Error::DegenerateParameter("s"));
    }
    Ok(canonical_family(m)?.at_s(s))
}

/// `w11 = (S_m - S_{m-1})(S_m - s^-2 S_{m-1})` at a point of the canonical
/// component with `s1 = s2 = s`.
pub fn w11_canonical(m: i64, s: Complex64, z: Complex64) -> Result<Complex64> {
    let fam = canonical_family(m)?;
    if s.is_zero() {
        return Err(Error::DegenerateParameter("s"));
    }
    let residual = fam.scaled_residual(q_of_s(s), z);
    if residual.is_nan() || residual >= ON_VARIETY_TOL {
        return Err(Error::NotOnVariety { residual });
    }
    let p = ChebPair::new(m, z);
    Ok((p.s_j - p.s_jm1) * (p.s_j - p.s_jm1 / (s * s)))
}

/// Residuals of the identities that hold on the canonical component.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CanonicalResiduals {
    /// `w11^2 = (S_m - s^-2 S_{m-1}) / (S_m - s^2 S_{m-1})`.
    pub w11_square_ratio: f64,
    /// `(S_m - S_{m-1})^2 (S_m - s^2 S_{m-1})(S_m - s^-2 S_{m-1}) = 1`.
    pub unit_product: f64,
    /// `S_m S_{m-1} = (2z - (q + 2)) / ((z - 2)(q - z))`.
    pub product_closed_form: f64,
    /// `S_m^2 + S_{m-1}^2 = (z^2 - 2q) / ((z - 2)(q - z))`.
    pub square_sum_closed_form: f64,
}

impl CanonicalResiduals {
    pub fn worst(&self) -> f64 {
        self.w11_square_ratio
            .max(self.unit_product)
            .max(self.product_closed_form)
            .max(self.square_sum_closed_form)
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

pub fn canonical_residuals(m: i64, s: Complex64, z: Complex64) -> Result<CanonicalResiduals> {
    let w11 = w11_canonical(m, s, z)?;
    let p = ChebPair::new(m, z);
    let (sm, sm1) = (p.s_j, p.s_jm1);
    let s2 = s * s;
    let q = q_of_s(s);
    let pole = (z - 2.0) * (q - z);
    let plus = sm - s2 * sm1;
    let minus = sm - sm1 / s2;
    Ok(CanonicalResiduals {
        w11_square_ratio: rel(w11 * w11, minus / plus),
        unit_product: rel((sm - sm1) * (sm - sm1) * plus * minus, Complex64::one()),
        product_closed_form: rel(sm * sm1, (2.0 * z - (q + 2.0)) / pole),
        square_sum_closed_form: rel(sm * sm + sm1 * sm1, (z * z - 2.0 * q) / pole),
    })
}
