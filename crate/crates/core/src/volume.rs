//! Cone-manifold volumes of `L_m = J(2m+1, 2m+1)` with both cone angles
//! equal to `α`.
//!
//! For `0 < α < α_max` the volume is
//!
//! ```text
//! Vol(α) = ∫_α^π log| (S_m(z) - e^{-iω} S_{m-1}(z)) / (S_m(z) - e^{iω} S_{m-1}(z)) | dω
//! ```
//!
//! where `z = z(ω)` is a root of `R_{L_m}(e^{iω/2}, z)`, followed
//! continuously in `ω`. Which root is meant is decided by integrating along
//! every branch and keeping the largest result.
//!
//! Each branch is followed from `ω = π - ε` down to `α`. The interval
//! `[α, π]` is cut at the angles where two roots collide on the real axis;
//! between consecutive cuts a branch is either real (no contribution) or a
//! member of a conjugate pair, and the admissible member has a nonnegative
//! integrand. Near a cut the root behaves like a square root of the
//! distance, so each piece is integrated in the variable `t` with
//! `ω = a + (b - a)(3t^2 - 2t^3)`, which removes the endpoint singularity.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charvariety::{canonical_family, CanonicalPoly};
use crate::chebyshev::ChebPair;
use crate::error::{Error, Result};
use crate::polyring::CPoly;
use crate::quadrature::{integrate, QuadScheme};
use crate::rootfinder::{all_roots, continue_all, newton, BranchPath, StepControl};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Below this `|Im z|` the integrand is taken to be exactly 0.
pub const REAL_AXIS_CLAMP: f64 = 1e-10;

/// Branches are seeded at `ω = π - SEED_OFFSET`.
pub const SEED_OFFSET: f64 = 1e-4;

/// `log|S_m - e^{-iω} S_{m-1}| - log|S_m - e^{iω} S_{m-1}|` at `z`.
pub fn integrand(m: i64, omega: f64, z: Complex64) -> Result<f64> {
    let p = ChebPair::new(m, z);
    let e = Complex64::from_polar(1.0, omega);
    let num = (p.s_j - e.conj() * p.s_jm1).norm();
    let den = (p.s_j - e * p.s_jm1).norm();
    if num == 0.0 || den == 0.0 {
        return Err(Error::SingularPoint { omega });
    }
    if z.im.abs() < REAL_AXIS_CLAMP {
        return Ok(0.0);
    }
    Ok(num.ln() - den.ln())
}

/// `Im(conj(S_{m-1}(z)) S_m(z))`; the integrand has the sign of this times
/// `sin ω`.
pub fn admissibility_form(m: i64, z: Complex64) -> f64 {
    let p = ChebPair::new(m, z);
    (p.s_jm1.conj() * p.s_j).im
}

/// Whether `z` gives a nonnegative integrand for `0 < ω < π`.
pub fn is_admissible(m: i64, z: Complex64) -> bool {
    z.im.abs() < REAL_AXIS_CLAMP || admissibility_form(m, z) >= 0.0
}

/// An angle where two roots of `R_{L_m}(e^{iω/2}, ·)` coincide.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchPoint {
    pub omega: f64,
    pub z: f64,
}

/// Angles in `(0, π)` at which two real roots of the canonical polynomial
/// collide, sorted by angle.
///
/// Writing `R = q U(z) + V(z)` with `q = 2 cos ω`, a double root is a
/// critical point of `q(z) = -V/U`. With `U = E^2` these are the real roots
/// of `V' E - 2 V E'`.
pub fn real_branch_points(m: i64) -> Result<Vec<BranchPoint>> {
    let fam = canonical_family(m)?;
    let (sm, sm1) = crate::chebyshev::cheb_values(m, &crate::polyring::UPolyZ::var());
    let e = sm - sm1;
    let v = fam.rest().clone();
    let crit = v.derivative() * e.clone()
        - crate::polyring::UPolyZ::from_i64(&[2]) * v.clone() * e.derivative();
    let crit_f = CPoly::from_real(&crit.to_f64_coeffs());
    let dcrit = crit_f.derivative();
    let u = CPoly::from_real(&fam.q_part().to_f64_coeffs());
    let v = CPoly::from_real(&v.to_f64_coeffs());
    let mut out: Vec<BranchPoint> = Vec::new();
    for z in all_roots(&crit_f, 1e-13)?.roots {
        if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
            continue;
        }
        let mut x = z.re;
        for _ in 0..8 {
            let d = dcrit.eval(Complex64::new(x, 0.0)).re;
            if d == 0.0 {
                break;
            }
            x -= crit_f.eval(Complex64::new(x, 0.0)).re / d;
        }
        let ux = u.eval(Complex64::new(x, 0.0)).re;
        if ux == 0.0 {
            continue;
        }
        let q = -v.eval(Complex64::new(x, 0.0)).re / ux;
        if q.abs() >= 2.0 {
            continue;
        }
        let omega = (q / 2.0).acos();
        if !out.iter().any(|b| (b.omega - omega).abs() < 1e-12) {
            out.push(BranchPoint { omega, z: x });
        }
    }
    out.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeOptions {
    pub tol: f64,
    pub step: StepControl,
    pub seed_offset: f64,
    pub scheme: QuadScheme,
}

impl Default for VolumeOptions {
    fn default() -> Self {
        VolumeOptions {
            tol: DEFAULT_TOL,
            step: StepControl::default(),
            seed_offset: SEED_OFFSET,
            scheme: QuadScheme::GaussKronrod,
        }
    }
}

impl VolumeOptions {
    pub fn with_tol(tol: f64) -> Self {
        VolumeOptions {
            tol,
            ..Default::default()
        }
    }
}

/// Integral of the admissible part of one branch over `[α, π]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct BranchIntegral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Every tracked branch with its integral, and the winner.
#[derive(Clone, Debug)]
pub struct BranchSelection {
    pub m: i64,
    pub alpha: f64,
    pub paths: Vec<BranchPath>,
    pub integrals: Vec<BranchIntegral>,
    pub breakpoints: Vec<f64>,
    pub chosen: usize,
}

impl BranchSelection {
    pub fn chosen_path(&self) -> &BranchPath {
        &self.paths[self.chosen]
    }

    pub fn chosen_integral(&self) -> BranchIntegral {
        self.integrals[self.chosen]
    }
}

fn check_angle(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < PI {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "cone angle {alpha} is outside (0, pi)"
        )))
    }
}

/// The root of `p` that continues `guess`.
fn root_near(p: &CPoly, guess: Complex64) -> Result<Complex64> {
    if let Some((z, _)) = newton(p, guess, 40) {
        if (z - guess).norm() <= 0.1 * (1.0 + guess.norm()) {
            return Ok(z);
        }
    }
    let rs = all_roots(p, 1e-13)?;
    Ok(rs.roots[rs.nearest(guess).expect("degree >= 1")])
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Piece {
    Skip,
    /// Admissible throughout: integrate `|f|`, which does not care which
    /// member of the conjugate pair the solver lands on.
    Absolute,
    /// Admissibility changes inside: integrate `max(f, 0)` on the branch
    /// itself.
    Positive,
}

fn classify(
    m: i64,
    fam: &CanonicalPoly,
    path: &BranchPath,
    a: f64,
    b: f64,
    ctl: &StepControl,
) -> Result<Piece> {
    let mid = 0.5 * (a + b);
    let z_mid = root_near(&fam.at_omega(mid), path.interpolate(mid))?;
    if z_mid.im.abs() < REAL_AXIS_CLAMP {
        return Ok(Piece::Skip);
    }
    let margin = (5.0 * ctl.max_step).max(0.01 * (b - a)).min(0.25 * (b - a));
    let inner: Vec<bool> = path
        .samples
        .iter()
        .zip(&path.admissible_at)
        .filter(|((w, _), _)| *w > a + margin && *w < b - margin)
        .map(|(_, &f)| f)
        .collect();
    let (yes, no) = if inner.is_empty() {
        let f = is_admissible(m, z_mid);
        (usize::from(f), usize::from(!f))
    } else {
        let yes = inner.iter().filter(|&&f| f).count();
        (yes, inner.len() - yes)
    };
    Ok(match (yes, no) {
        (0, _) => Piece::Skip,
        (_, 0) => Piece::Absolute,
        _ => Piece::Positive,
    })
}

fn integrate_branch(
    m: i64,
    fam: &CanonicalPoly,
    path: &BranchPath,
    cuts: &[f64],
    opts: &VolumeOptions,
) -> Result<BranchIntegral> {
    let pieces = cuts.len() - 1;
    let piece_tol = opts.tol / pieces as f64;
    let mut total = BranchIntegral::default();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mode = classify(m, fam, path, a, b, &opts.step)?;
        if mode == Piece::Skip {
            continue;
        }
        let value_at = |omega: f64| -> Result<f64> {
            let guess = path.interpolate(omega);
            let z = root_near(&fam.at_omega(omega), guess)?;
            if z.im.abs() < REAL_AXIS_CLAMP {
                return Ok(0.0);
            }
            match mode {
                Piece::Absolute => Ok(integrand(m, omega, z)?.abs()),
                _ => {
                    let own = if (z - guess.conj()).norm() < (z - guess).norm() {
                        z.conj()
                    } else {
                        z
                    };
                    Ok(integrand(m, omega, own)?.max(0.0))
                }
            }
        };
        let width = b - a;
        let g = |t: f64| -> Result<f64> {
            let omega = a + width * t * t * (3.0 - 2.0 * t);
            let jac = 6.0 * width * t * (1.0 - t);
            if jac == 0.0 {
                return Ok(0.0);
            }
            Ok(value_at(omega)? * jac)
        };
        let q = integrate(g, 0.0, 1.0, piece_tol, opts.scheme)?;
        total.value += q.value;
        total.error_estimate += q.error_estimate;
        total.evaluations += q.evaluations;
    }
    Ok(total)
}

/// Tracks every root from `π - ε` down to `α`, integrates the admissible
/// part of each branch, and picks the largest (smallest index on ties).
///
/// Fails with `NoAdmissibleBranch` when no branch has a positive integral,
/// which is what happens for `α ≥ α_max`.
pub fn select_branch(m: i64, alpha: f64, opts: &VolumeOptions) -> Result<BranchSelection> {
    check_angle(alpha)?;
    let fam = canonical_family(m)?;
    let top = PI - opts.seed_offset;
    let start = top.max(alpha);
    let mut paths = continue_all(|w| fam.at_omega(w), start, alpha, &opts.step)?;
    for path in &mut paths {
        path.flag(|_, z| is_admissible(m, z));
    }
    let mut cuts = vec![alpha];
    cuts.extend(
        real_branch_points(m)?
            .into_iter()
            .map(|b| b.omega)
            .filter(|&w| w > alpha && w < PI),
    );
    cuts.push(PI);

    let integrals = paths
        .par_iter()
        .map(|path| integrate_branch(m, &fam, path, &cuts, opts))
        .collect::<Result<Vec<_>>>()?;

    let best = integrals.iter().map(|b| b.value).fold(0.0, f64::max);
    if best.is_nan() || best <= 0.0 {
        return Err(Error::NoAdmissibleBranch { alpha });
    }
    let tie = 1e-12 * (1.0 + best);
    let chosen = integrals
        .iter()
        .position(|b| b.value >= best - tie)
        .expect("the maximum is attained");
    Ok(BranchSelection {
        m,
        alpha,
        paths,
        integrals,
        breakpoints: cuts,
        chosen,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeStatus {
    Hyperbolic,
    NonHyperbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub m: i64,
    pub alpha: f64,
    pub volume: f64,
    pub status: VolumeStatus,
    pub branch_id: Option<usize>,
    pub quad_error_estimate: f64,
    pub samples_used: usize,
}

/// Volume of the cone-manifold `E_{L_m}(α)`.
///
/// Returns a `NonHyperbolic` result with volume 0 when no branch is
/// admissible, i.e. for `α ≥ α_max`.
///
/// ```
/// let v = twistlink::volume::volume(1, 2.0 * std::f64::consts::PI / 3.0, 1e-9).unwrap();
/// assert!((v.volume - 0.5277222202082709).abs() < 1e-8);
/// ```
pub fn volume(m: i64, alpha: f64, tol: f64) -> Result<VolumeResult> {
    volume_with(m, alpha, &VolumeOptions::with_tol(tol))
}

pub fn volume_with(m: i64, alpha: f64, opts: &VolumeOptions) -> Result<VolumeResult> {
    match select_branch(m, alpha, opts) {
        Ok(sel) => {
            let b = sel.chosen_integral();
            if b.error_estimate >= opts.tol {
                return Err(Error::QuadratureFailure {
                    error_estimate: b.error_estimate,
                });
            }
            Ok(VolumeResult {
                m,
                alpha,
                volume: b.value,
                status: VolumeStatus::Hyperbolic,
                branch_id: Some(sel.chosen),
                quad_error_estimate: b.error_estimate,
                samples_used: b.evaluations,
            })
        }
        Err(Error::NoAdmissibleBranch { .. }) => Ok(VolumeResult {
            m,
            alpha,
            volume: 0.0,
            status: VolumeStatus::NonHyperbolic,
            branch_id: None,
            quad_error_estimate: 0.0,
            samples_used: 0,
        }),
        Err(e) => Err(e),
    }
}

/// The cone angle `2π/k` used for the `k`-fold cyclic cover.
pub fn cover_angle(k: i64) -> f64 {
    2.0 * PI / k as f64
}

/// Volume of the `k`-fold cyclic cover of the 3-sphere branched over `L_m`,
/// `k · Vol(2π/k)`.
pub fn cyclic_cover_volume(m: i64, k: i64, tol: f64) -> Result<f64> {
    if k < 3 {
        return Err(Error::Unsupported(format!(
            "cover degree k = {k} must be at least 3"
        )));
    }
    Ok(k as f64 * volume(m, cover_angle(k), tol)?.volume)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaMaxEstimate {
    pub m: i64,
    pub alpha_max: f64,
    pub bracket_width: f64,
}

/// Bisection for the largest cone angle with a hyperbolic structure, on
/// the predicate "some branch has positive volume", starting from the
/// bracket `[2π/3, π - ε]`. If the predicate does not change sign on the
/// bracket, the matching endpoint is returned.
pub fn estimate_alpha_max(m: i64, tol: f64) -> Result<AlphaMaxEstimate> {
    canonical_family(m)?;
    let opts = VolumeOptions::with_tol(1e-6);
    let hyperbolic = |a: f64| select_branch(m, a, &opts).is_ok();
    let (mut lo, mut hi) = (2.0 * PI / 3.0, PI - SEED_OFFSET);
    if !hyperbolic(lo) {
        return Ok(AlphaMaxEstimate {
            m,
            alpha_max: lo,
            bracket_width: hi - lo,
        });
    }
    if hyperbolic(hi) {
        return Ok(AlphaMaxEstimate {
            m,
            alpha_max: hi,
            bracket_width: PI - hi,
        });
    }
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if hyperbolic(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AlphaMaxEstimate {
        m,
        alpha_max: 0.5 * (lo + hi),
        bracket_width: hi - lo,
    })
}

/// [`volume`] at each angle, in input order.
pub fn volume_table(m: i64, angles: &[f64], tol: f64) -> Vec<Result<VolumeResult>> {
    angles.par_iter().map(|&a| volume(m, a, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrand_vanishes_on_real_axis_and_at_pi() {
        assert_eq!(integrand(2, 1.3, Complex64::new(0.7, 0.0)).unwrap(), 0.0);
        assert!(integrand(1, PI, Complex64::new(0.3, 0.8)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn branch_points_match_frozen_values() {
        let b1 = real_branch_points(1).unwrap();
        assert_eq!(b1.len(), 1);
        assert!((b1[0].omega - 2.507077676815449).abs() < 1e-12);
        assert!((b1[0].z + 0.521379706804568).abs() < 1e-9);
        let b2 = real_branch_points(2).unwrap();
        let top = b2.last().unwrap();
        assert!((top.omega - 2.9343408222499728).abs() < 1e-12);
        assert!(b2
            .iter()
            .any(|b| (b.omega - PI / 2.0).abs() < 1e-12 && (b.z - 1.0).abs() < 1e-9));
    }

    #[test]
    fn m1_small_angle_endpoint() {
        let sel = select_branch(1, 0.01, &VolumeOptions::default()).unwrap();
        let z = sel.chosen_path().end().1;
        let expect = Complex64::new(1.0, 1.0);
        assert!(
            (z - expect).norm() < 0.05 || (z.conj() - expect).norm() < 0.05,
            "{z}"
        );
    }

    #[test]
    fn near_pi_is_not_hyperbolic() {
        let v = volume(1, 0.999 * PI, 1e-9).unwrap();
        assert_eq!(v.status, VolumeStatus::NonHyperbolic);
        assert_eq!(v.volume, 0.0);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(volume(1, 0.0, 1e-9), Err(Error::Unsupported(_))));
        assert_eq!(volume(0, 1.0, 1e-9), Err(Error::BadIndex(0)));
        assert!(matches!(
            cyclic_cover_volume(1, 2, 1e-9),
            Err(Error::Unsupported(_))
        ));
        assert!(volume_table(1, &[], 1e-9).is_empty());
    }
}
