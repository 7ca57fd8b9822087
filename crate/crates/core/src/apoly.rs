//! The A-polynomial of the canonical component of `L_m`.
//!
//! Put `w = w11`, the eigenvalue of `ρ(w)` on the fixed vector of
//! `ρ(a)`, and `s = s1`. On the component where `s2 = 1` and `z ≠ x` the
//! relation is `P_m(x, z) = 2 + (z - x) S_m(z) S_{m-1}(z) = 0`, and `z` is a
//! rational function of `(s, w)`:
//!
//! ```text
//! z = 2(r + 1/r) - x,   r = (s^2 w + 1) / (s (w + 1)),   x = s + 1/s.
//! ```
//!
//! Clearing the denominator `D = s (w + 1)(s^2 w + 1)` gives polynomials
//! `Q̂_j = D^{2j} P_j`. They obey
//!
//! ```text
//! Q̂_j = α Q̂_{j-1} - D^4 Q̂_{j-2} + D^{2(j-1)} β,   Q̂_0 = 2,   Q̂_1 = 2α + β - 2 D^2,
//! ```
//!
//! with `α = D^2 (z^2 - 2)` and `β = D^2 (8 - z(z + x))` as in
//! [`alpha_beta`]. The A-polynomial is `(L - 1) Q̂_m(M, L M^{2m})` up to a
//! monomial unit.
//!
//! [`q_poly`] keeps the plain recurrence `Q_j = α Q_{j-1} - Q_{j-2} + β`
//! from `Q_{-1} = Q_0 = 2`. It agrees with `Q̂` only for `j ≤ 1` and does
//! not vanish on the representation variety beyond that.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::charvariety::{literal_word, literal_word_bar, RepPoint};
use crate::chebyshev::{cheb_values, ChebPair};
use crate::error::{Error, Result};
use crate::polyring::{resultant_z, CPoly, MPolyZ, UPolyZ, Vars, ZPoly};
use crate::rootfinder::all_roots;

fn sw(text: &str) -> MPolyZ {
    MPolyZ::parse(text, Vars::SW).expect("literal polynomial")
}

fn check_m(m: i64) -> Result<u32> {
    if m >= 1 {
        Ok(u32::try_from(m).map_err(|_| Error::Unsupported(format!("m = {m} is too large")))?)
    } else {
        Err(Error::Unsupported(format!(
            "A-polynomial construction needs m >= 1, got {m}"
        )))
    }
}

/// `(α, β)` in `(s, w)`.
pub fn alpha_beta() -> (MPolyZ, MPolyZ) {
    let alpha = sw(
        "s^8*w^4 + s^4*w^4 - 2*s^8*w^3 + 6*s^6*w^3 + 6*s^4*w^3 - 2*s^2*w^3 \
         + s^8*w^2 - 12*s^6*w^2 + 34*s^4*w^2 - 12*s^2*w^2 + w^2 \
         - 2*s^6*w + 6*s^4*w + 6*s^2*w - 2*w + s^4 + 1",
    );
    let inner = sw("s^4*w^4 - s^4*w^3 - s^2*w^3 - 6*s^2*w^2 - s^2*w - w + 1");
    let beta = &sw("s^2 - 1").pow(2).scale(&BigInt::from(-2)) * &inner;
    (alpha, beta)
}

/// `D^2 = s^2 (w + 1)^2 (s^2 w + 1)^2`.
pub fn weight() -> MPolyZ {
    denominator().pow(2)
}

fn denominator() -> MPolyZ {
    &(&sw("s") * &sw("w + 1")) * &sw("s^2*w + 1")
}

/// Consecutive members `Q_j` of a sequence, starting at `first_index`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSequence {
    pub first_index: i64,
    pub entries: Vec<MPolyZ>,
}

impl QSequence {
    pub fn get(&self, j: i64) -> Option<&MPolyZ> {
        usize::try_from(j - self.first_index)
            .ok()
            .and_then(|k| self.entries.get(k))
    }

    pub fn last(&self) -> &MPolyZ {
        self.entries.last().expect("sequences are never empty")
    }
}

/// `Q_{-1}, ..., Q_m` from `Q_j = α Q_{j-1} - Q_{j-2} + β` with
/// `Q_{-1} = Q_0 = 2`.
pub fn q_poly(m: i64) -> Result<QSequence> {
    check_m(m)?;
    let (alpha, beta) = alpha_beta();
    let two = MPolyZ::constant(2, Vars::SW);
    let mut entries = vec![two.clone(), two];
    for _ in 1..=m {
        let k = entries.len();
        let next = &(&(&alpha * &entries[k - 1]) - &entries[k - 2]) + &beta;
        entries.push(next);
    }
    Ok(QSequence {
        first_index: -1,
        entries,
    })
}

/// `Q̂_0, ..., Q̂_m` with `Q̂_j = D^{2j} P_j(x, z(s, w))`.
pub fn cleared_sequence(m: i64) -> Result<QSequence> {
    check_m(m)?;
    let (alpha, beta) = alpha_beta();
    let d2 = weight();
    let d4 = d2.pow(2);
    let first = &(&alpha.scale(&BigInt::from(2)) + &beta) - &d2.scale(&BigInt::from(2));
    let mut entries = vec![MPolyZ::constant(2, Vars::SW), first];
    let mut d2_pow = d2.clone();
    for _ in 2..=m {
        let k = entries.len();
        let next = &(&(&alpha * &entries[k - 1]) - &(&d4 * &entries[k - 2])) + &(&d2_pow * &beta);
        entries.push(next);
        d2_pow = &d2_pow * &d2;
    }
    entries.truncate(m as usize + 1);
    Ok(QSequence {
        first_index: 0,
        entries,
    })
}

fn upoly_in_z(p: &UPolyZ) -> MPolyZ {
    MPolyZ::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (0u32, k as u32, c.clone())),
        Vars::XZ,
    )
}

/// `P_m(x, z) = 2 + (z - x) S_m(z) S_{m-1}(z)` expanded from the definition.
pub fn p_poly_direct(m: i64) -> MPolyZ {
    let (sm, sm1) = cheb_values(m, &UPolyZ::var());
    let prod = upoly_in_z(&(&sm * &sm1));
    let z_minus_x = &MPolyZ::second(Vars::XZ) - &MPolyZ::first(Vars::XZ);
    &MPolyZ::constant(2, Vars::XZ) + &(&z_minus_x * &prod)
}

/// `P_m(x, z)` in variables `(x, z)`, by
/// `P_j = (z^2 - 2) P_{j-1} - P_{j-2} + 8 - z(z + x)` from
/// `P_{-1} = P_0 = 2` for `m ≥ 1`, and from the definition otherwise.
pub fn p_poly(m: i64) -> MPolyZ {
    if m < 1 {
        return p_poly_direct(m);
    }
    let xz = |t: &str| MPolyZ::parse(t, Vars::XZ).expect("literal polynomial");
    let a = xz("z^2 - 2");
    let b = xz("8 - z^2 - x*z");
    let (mut prev, mut cur) = (xz("2"), xz("2"));
    for _ in 0..m {
        let next = &(&(&a * &cur) - &prev) + &b;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApolyTuple {
    pub m: i64,
    pub a_first: MPolyZ,
    pub a_second: MPolyZ,
}

/// The A-polynomial pair of `L_m`, normalized up to `± M^a L^b`.
///
/// The two link components are exchanged by a symmetry, so both entries
/// are the same polynomial.
///
/// ```
/// let a = twistlink::apoly::a_polynomial(1).unwrap();
/// assert_eq!(a.a_first, a.a_second);
/// assert_eq!(a.a_first.eval(2.0.into(), 1.0.into()).norm(), 0.0);
/// ```
pub fn a_polynomial(m: i64) -> Result<ApolyTuple> {
    let shift = 2 * i64::from(check_m(m)?);
    let q = cleared_sequence(m)?.last().substitute_monomial(shift);
    let l_minus_one = MPolyZ::parse("L - 1", Vars::ML).expect("literal polynomial");
    let a = (&l_minus_one * &q).normalize_unit()?;
    Ok(ApolyTuple {
        m,
        a_first: a.clone(),
        a_second: a,
    })
}

/// The A-polynomial by elimination, independent of the recurrences:
/// `Res_z(s P_m(x, z), D z - N)` with `z = N / D`, times the factor
/// `w - s^{2m}` of the branch `z = x`, then `(s, w) -> (M, L M^{2m})`.
pub fn oracle_eliminate(m: i64) -> Result<MPolyZ> {
    let mu = check_m(m)?;
    let p = p_poly_direct(m);
    let deg_z = p.degree_second();
    let s_times_x = sw("s^2 + 1");
    let s = sw("s");
    let mut coeffs = vec![MPolyZ::zero(Vars::SW); deg_z as usize + 1];
    for ((ex, ez), c) in p.terms() {
        let base = match ex {
            0 => &s,
            1 => &s_times_x,
            _ => unreachable!("P_m is linear in x"),
        };
        coeffs[ez as usize] = &coeffs[ez as usize] + &base.scale(c);
    }
    let sp = ZPoly::new(coeffs, Vars::SW);
    let num = sw("2*s^4*w^2 + 4*s^2*w + 2 + 2*s^2*w^2 + 4*s^2*w + 2*s^2 \
         - s^4*w^2 - s^4*w - s^2*w^2 - 2*s^2*w - s^2 - w - 1");
    let lin = ZPoly::linear(denominator(), num);
    let res = resultant_z(&sp, &lin)?;
    let branch = &MPolyZ::second(Vars::SW) - &MPolyZ::monomial(1, 2 * mu, 0, Vars::SW);
    (&branch * &res)
        .substitute_monomial(2 * i64::from(mu))
        .normalize_unit()
}

/// Outcome of sampling the representation variety.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VarietyReport {
    pub m: i64,
    /// Samples taken with `s1 = ±1` and `s2` free, using `b` and `w-bar`.
    pub mirrored: bool,
    pub requested: usize,
    pub evaluated: usize,
    /// Largest `|A(M, L)|` relative to `Σ |c| |M|^i |L|^j`.
    pub max_scaled_residual: f64,
    /// Largest relative commutator of the peripheral pair.
    pub max_commutation: f64,
    /// Largest `|ow11 + 1|` over samples with `s2 = 1` (unmirrored only).
    pub max_ow11_deviation: f64,
    /// One line per sample that could not be produced.
    pub failures: Vec<String>,
}

struct SampleSpec {
    free: Complex64,
    sign: f64,
    pick: u64,
}

struct SampleOutcome {
    residual: f64,
    commutation: f64,
    ow11_deviation: Option<f64>,
}

/// Samples `count` points on the canonical component and evaluates the
/// A-polynomial at their eigenvalues.
///
/// One meridian eigenvalue is drawn at random (on and off the unit circle),
/// the other is fixed at `±1`. Then `t = z` is solved for `z`, roots on the
/// branch `2 + (z ∓ x) S_m S_{m-1} = 0` are kept, and `ρ(w)` is built by
/// multiplying out the word.
pub fn verify_on_variety(m: i64, count: usize, seed: u64, mirrored: bool) -> Result<VarietyReport> {
    let a = a_polynomial(m)?.a_first;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<SampleSpec> = (0..count)
        .map(|i| {
            let theta = rng.random_range(0.15..std::f64::consts::PI - 0.15);
            let radius = if i % 2 == 0 {
                1.0
            } else {
                rng.random_range(0.6..1.6)
            };
            SampleSpec {
                free: Complex64::from_polar(radius, theta),
                sign: if i % 4 < 2 { 1.0 } else { -1.0 },
                pick: rng.random(),
            }
        })
        .collect();
    let outcomes: Vec<std::result::Result<SampleOutcome, String>> = specs
        .par_iter()
        .map(|spec| sample(m, &a, spec, mirrored))
        .collect();
    let mut report = VarietyReport {
        m,
        mirrored,
        requested: count,
        ..Default::default()
    };
    for (i, out) in outcomes.into_iter().enumerate() {
        match out {
            Ok(o) => {
                report.evaluated += 1;
                report.max_scaled_residual = report.max_scaled_residual.max(o.residual);
                report.max_commutation = report.max_commutation.max(o.commutation);
                if let Some(d) = o.ow11_deviation {
                    report.max_ow11_deviation = report.max_ow11_deviation.max(d);
                }
            }
            Err(e) => report.failures.push(format!("sample {i}: {e}")),
        }
    }
    Ok(report)
}

fn sample(
    m: i64,
    a: &MPolyZ,
    spec: &SampleSpec,
    mirrored: bool,
) -> std::result::Result<SampleOutcome, String> {
    let sign = Complex64::new(spec.sign, 0.0);
    let (s1, s2) = if mirrored {
        (sign, spec.free)
    } else {
        (spec.free, sign)
    };
    let (x, y) = (s1 + s1.inv(), s2 + s2.inv());
    let free_trace = if mirrored { y } else { x };

    let z = CPoly::var();
    let (sm, sm1) = cheb_values(m, &z);
    let t = (CPoly::constant(x * y) - z.clone())
        * (sm.clone() * sm.clone() + sm1.clone() * sm1.clone())
        - CPoly::constant(x * x + y * y - 4.0) * sm * sm1;
    let roots = all_roots(&(t - z), 1e-13).map_err(|e| e.to_string())?.roots;
    let on_branch: Vec<Complex64> = roots
        .into_iter()
        .filter(|&z| {
            let p = ChebPair::new(m, z);
            let lin = z - spec.sign * free_trace;
            let prod = lin * p.s_j * p.s_jm1;
            (prod + 2.0).norm() / (2.0 + prod.norm()) < 1e-8
        })
        .collect();
    if on_branch.is_empty() {
        return Err("no root of t = z on the sampled branch".into());
    }
    let z = on_branch[(spec.pick % on_branch.len() as u64) as usize];
    let rep = RepPoint::from_traces(s1, s2, z).map_err(|e| e.to_string())?;
    let params = crate::charvariety::DtlParams::new(m, m);
    let (word, peripheral, meridian) = if mirrored {
        (literal_word_bar(&rep, params), rep.rho_b(), s2)
    } else {
        (literal_word(&rep, params), rep.rho_a(), s1)
    };
    let commutation = (peripheral * word).max_abs_diff(&(word * peripheral))
        / (peripheral.max_abs() * word.max_abs()).max(1.0);
    let l = word.m11 * meridian.powi(-2 * m as i32);
    let residual = a.eval(meridian, l).norm() / a.eval_scale(meridian, l);
    let ow11_deviation =
        (!mirrored && spec.sign > 0.0).then(|| (literal_word_bar(&rep, params).m11 + 1.0).norm());
    Ok(SampleOutcome {
        residual,
        commutation,
        ow11_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_beta_coefficients() {
        let (alpha, beta) = alpha_beta();
        assert_eq!(alpha.coeff_of_second(4), sw("s^8 + s^4"));
        assert_eq!(alpha.coeff_of_second(0), sw("s^4 + 1"));
        assert_eq!(
            beta.coeff_of_second(0),
            sw("s^2 - 1").pow(2).scale(&BigInt::from(-2))
        );
    }

    #[test]
    fn first_terms_of_q() {
        let q = q_poly(1).unwrap();
        let (alpha, beta) = alpha_beta();
        assert_eq!(q.get(0).unwrap(), &MPolyZ::constant(2, Vars::SW));
        assert_eq!(q.get(-1).unwrap(), &MPolyZ::constant(2, Vars::SW));
        let expect = &(&alpha.scale(&BigInt::from(2)) - &MPolyZ::constant(2, Vars::SW)) + &beta;
        assert_eq!(q.get(1).unwrap(), &expect);
    }

    #[test]
    fn p_small_cases() {
        let xz = |t| MPolyZ::parse(t, Vars::XZ).unwrap();
        assert_eq!(p_poly(0), xz("2"));
        assert_eq!(p_poly(-1), xz("2"));
        assert_eq!(p_poly(1), xz("2 + z^2 - x*z"));
        for m in 1..=6 {
            assert_eq!(p_poly(m), p_poly_direct(m), "m = {m}");
        }
    }

    #[test]
    fn non_positive_m_is_unsupported() {
        assert!(matches!(a_polynomial(0), Err(Error::Unsupported(_))));
        assert!(matches!(q_poly(-2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn elimination_agrees_for_m1() {
        assert_eq!(
            oracle_eliminate(1).unwrap(),
            a_polynomial(1).unwrap().a_first
        );
    }
}
