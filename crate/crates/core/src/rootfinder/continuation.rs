use std::f64::consts::PI;

use num_complex::Complex64;

use super::aberth::{aberth_sweeps, all_roots, newton_polish};
use crate::error::{Error, Result};
use crate::polyring::CPoly;

/// Step-size policy for continuation in ω.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl {
    pub initial_step: f64,
    pub max_step: f64,
    /// Abort once the step has been halved below this.
    pub min_step: f64,
    /// The corrector may use at most this many Newton iterations.
    pub max_newton: usize,
    /// Largest accepted distance between prediction and corrected root,
    /// relative to `1 + |prediction|`.
    pub max_jump: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            initial_step: PI / 2000.0,
            max_step: PI / 2000.0,
            min_step: 1e-9,
            max_newton: 5,
            max_jump: 0.25,
        }
    }
}

/// One tracked root as a function of ω.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchPath {
    /// `(ω, z)` in the order visited.
    pub samples: Vec<(f64, Complex64)>,
    /// Per-sample admissibility, empty until [`BranchPath::flag`] is called.
    pub admissible_at: Vec<bool>,
}

impl BranchPath {
    pub fn new(samples: Vec<(f64, Complex64)>) -> Self {
        BranchPath {
            samples,
            admissible_at: Vec::new(),
        }
    }

    pub fn start(&self) -> (f64, Complex64) {
        self.samples[0]
    }

    pub fn end(&self) -> (f64, Complex64) {
        *self.samples.last().expect("paths are never empty")
    }

    /// Recomputes every admissibility flag from `(ω, z)`.
    pub fn flag<F: Fn(f64, Complex64) -> bool>(&mut self, f: F) {
        self.admissible_at = self.samples.iter().map(|&(w, z)| f(w, z)).collect();
    }

    /// Piecewise-linear value at `omega`; constant beyond the sampled range.
    pub fn interpolate(&self, omega: f64) -> Complex64 {
        let s = &self.samples;
        if s.len() == 1 {
            return s[0].1;
        }
        let decreasing = s[0].0 > s[s.len() - 1].0;
        let key = |w: f64| if decreasing { -w } else { w };
        let target = key(omega);
        let idx = s.partition_point(|&(w, _)| key(w) <= target);
        if idx == 0 {
            return s[0].1;
        }
        if idx == s.len() {
            return s[s.len() - 1].1;
        }
        let (w0, z0) = s[idx - 1];
        let (w1, z1) = s[idx];
        let f = (omega - w0) / (w1 - w0);
        z0 + (z1 - z0) * f
    }
}

fn scaled_residual(p: &CPoly, z: Complex64) -> f64 {
    p.eval(z).norm() / p.eval_scale(z).max(f64::MIN_POSITIVE)
}

pub(crate) fn newton(p: &CPoly, mut z: Complex64, max_iter: usize) -> Option<(Complex64, usize)> {
    for it in 1..=max_iter {
        let (pv, dv) = p.eval_with_derivative(z);
        if pv.norm() <= 4.0 * f64::EPSILON * p.eval_scale(z) {
            return Some((z, it - 1));
        }
        let dz = pv / dv;
        if !dz.is_finite() {
            return None;
        }
        z -= dz;
        if dz.norm() <= 1e-14 * (1.0 + z.norm()) {
            return Some((z, it));
        }
    }
    None
}

/// Follows the root of `family(ω)` that starts at `z0` from `omega0` to
/// `omega1`, with a linear predictor and a Newton corrector.
///
/// The step is halved when Newton needs more than `max_newton` iterations
/// or lands further than `max_jump` from the prediction. When the step
/// falls below `min_step` the call fails with `BranchJump` if the last
/// rejection was a jump and `StepUnderflow` otherwise.
pub fn continue_branch<F>(
    family: F,
    z0: Complex64,
    omega0: f64,
    omega1: f64,
    ctl: &StepControl,
) -> Result<BranchPath>
where
    F: Fn(f64) -> CPoly,
{
    let p0 = family(omega0);
    let start = newton_polish(&p0, z0, 5);
    if !(scaled_residual(&p0, z0) < 1e-8 || scaled_residual(&p0, start) < 1e-8) {
        return Err(Error::Unsupported(format!(
            "continuation start {z0} is not a root at omega = {omega0}"
        )));
    }
    let dir = (omega1 - omega0).signum();
    let mut samples = vec![(omega0, start)];
    let mut h = ctl.initial_step;
    let mut last_step: Option<f64> = None;
    let (mut w, mut z) = (omega0, start);
    while (omega1 - w) * dir > 0.0 {
        let step = h.min((omega1 - w).abs());
        let w_new = if step == (omega1 - w).abs() {
            omega1
        } else {
            w + dir * step
        };
        let pred = match (last_step, samples.len()) {
            (Some(prev), n) if n >= 2 => z + (z - samples[n - 2].1) * (step / prev),
            _ => z,
        };
        let p = family(w_new);
        let outcome = newton(&p, pred, ctl.max_newton);
        let rejected_jump = match outcome {
            Some((z_new, iters)) => {
                let distance = (z_new - pred).norm();
                if distance <= ctl.max_jump * (1.0 + pred.norm()) {
                    samples.push((w_new, z_new));
                    last_step = Some(step);
                    w = w_new;
                    z = z_new;
                    if iters <= 2 {
                        h = (2.0 * h).min(ctl.max_step);
                    }
                    continue;
                }
                Some(distance)
            }
            None => None,
        };
        h /= 2.0;
        if h < ctl.min_step {
            return Err(match rejected_jump {
                Some(distance) => Error::BranchJump {
                    omega: w_new,
                    distance,
                },
                None => Error::StepUnderflow { omega: w, step: h },
            });
        }
    }
    Ok(BranchPath::new(samples))
}

/// Tracks every root of `family(ω)` from `omega0` to `omega1` at once.
///
/// Each step warm-starts a simultaneous (Aberth) iteration from the
/// predicted positions, nudged off the real axis so that real roots can
/// pass through a collision and leave as a conjugate pair. A step is
/// accepted when every root is at least as close to its own prediction as
/// half its distance to the nearest root overall; labels can therefore only
/// swap among roots that are colliding. Paths are numbered in the order of
/// [`all_roots`] at `omega0`.
pub fn continue_all<F>(
    family: F,
    omega0: f64,
    omega1: f64,
    ctl: &StepControl,
) -> Result<Vec<BranchPath>>
where
    F: Fn(f64) -> CPoly,
{
    let seeds = all_roots(&family(omega0), 1e-13)?.roots;
    let n = seeds.len();
    let mut paths: Vec<Vec<(f64, Complex64)>> = seeds.iter().map(|&z| vec![(omega0, z)]).collect();
    let dir = (omega1 - omega0).signum();
    let mut h = ctl.initial_step;
    let mut last_step: Option<f64> = None;
    let mut w = omega0;
    let mut cur = seeds;
    let mut prev: Option<Vec<Complex64>> = None;
    while (omega1 - w) * dir > 0.0 {
        let step = h.min((omega1 - w).abs());
        let w_new = if step == (omega1 - w).abs() {
            omega1
        } else {
            w + dir * step
        };
        let preds: Vec<Complex64> = match (&prev, last_step) {
            (Some(pz), Some(ls)) => cur
                .iter()
                .zip(pz)
                .map(|(c, p)| c + (c - p) * (step / ls))
                .collect(),
            _ => cur.clone(),
        };
        let guesses = preds
            .iter()
            .enumerate()
            .map(|(i, z)| {
                z + Complex64::from_polar(1e-6 * (1.0 + z.norm()), 1.0 + 2.399963 * i as f64)
            })
            .collect();
        let p = family(w_new);
        let accepted = match aberth_sweeps(&p, guesses, 60, 1e-14) {
            Ok((found, sweeps)) if consistent(&preds, &found, ctl.max_jump) => {
                Some((found, sweeps))
            }
            _ => None,
        };
        match accepted {
            Some((found, sweeps)) => {
                let found: Vec<Complex64> =
                    found.into_iter().map(|z| newton_polish(&p, z, 2)).collect();
                for (path, z) in paths.iter_mut().zip(&found) {
                    path.push((w_new, *z));
                }
                prev = Some(std::mem::replace(&mut cur, found));
                last_step = Some(step);
                w = w_new;
                if sweeps <= 6 {
                    h = (2.0 * h).min(ctl.max_step);
                }
            }
            None => {
                h /= 2.0;
                if h < ctl.min_step {
                    return Err(Error::StepUnderflow { omega: w, step: h });
                }
            }
        }
    }
    debug_assert_eq!(paths.len(), n);
    Ok(paths.into_iter().map(BranchPath::new).collect())
}

fn consistent(preds: &[Complex64], found: &[Complex64], max_jump: f64) -> bool {
    preds.iter().zip(found).all(|(p, z)| {
        let own = (z - p).norm();
        let nearest = found
            .iter()
            .map(|f| (f - p).norm())
            .fold(f64::INFINITY, f64::min);
        own.is_finite() && own <= max_jump * (1.0 + p.norm()) && own <= 2.0 * nearest + 1e-12
    })
}
