use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::CPoly;

/// Roots closer than this are reported as one repeated value.
pub const CLUSTER_TOL: f64 = 1e-7;

const MAX_ITER: usize = 500;

/// All roots of a polynomial, with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|p(root)|` for each root.
    pub residuals: Vec<f64>,
    pub degree: usize,
}

impl RootSet {
    /// Index of the root closest to `z`.
    pub fn nearest(&self, z: Complex64) -> Option<usize> {
        (0..self.roots.len()).min_by(|&a, &b| {
            (self.roots[a] - z)
                .norm()
                .total_cmp(&(self.roots[b] - z).norm())
        })
    }
}

/// Roots by Aberth–Ehrlich iteration, Newton-polished, sorted by real then
/// imaginary part.
///
/// A root counts as converged once its Aberth correction is below
/// `tol * (1 + |z|)` or its residual reaches rounding level, and the final
/// residual of every root must be below `max(tol, 1e-14)` times the
/// coefficient scale at that root.
pub fn all_roots(p: &CPoly, tol: f64) -> Result<RootSet> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Unsupported("root finding needs degree >= 1".into())),
    };
    let lead = p.leading().expect("nonzero polynomial");
    let monic = p.scale(lead.inv());
    let guesses = initial_guesses(&monic);
    let mut roots = aberth_refine(&monic, guesses, MAX_ITER, tol)?;
    for z in roots.iter_mut() {
        *z = newton_polish(&monic, *z, 3);
    }
    merge_clusters(&mut roots);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let bound = tol.max(1e-14);
    let mut residuals = Vec::with_capacity(degree);
    for z in &roots {
        let r = p.eval(*z).norm();
        if r > bound * p.eval_scale(*z) {
            return Err(Error::NoConvergence {
                iterations: MAX_ITER,
            });
        }
        residuals.push(r);
    }
    Ok(RootSet {
        roots,
        residuals,
        degree,
    })
}

fn initial_guesses(monic: &CPoly) -> Vec<Complex64> {
    let c = monic.coeffs();
    let n = c.len() - 1;
    let radius = (0..n)
        .map(|k| c[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Aberth iteration from the given starting points (Gauss–Seidel sweep).
///
/// Fails with `NoConvergence` if some root has not settled after
/// `max_iter` sweeps.
pub fn aberth_refine(
    p: &CPoly,
    z: Vec<Complex64>,
    max_iter: usize,
    tol: f64,
) -> Result<Vec<Complex64>> {
    aberth_sweeps(p, z, max_iter, tol).map(|(z, _)| z)
}

/// [`aberth_refine`] that also reports how many sweeps were needed.
pub(crate) fn aberth_sweeps(
    p: &CPoly,
    mut z: Vec<Complex64>,
    max_iter: usize,
    tol: f64,
) -> Result<(Vec<Complex64>, usize)> {
    let n = z.len();
    let mut done = vec![false; n];
    for sweep in 1..=max_iter {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pv, dv) = p.eval_with_derivative(z[i]);
            if pv.is_zero() || pv.norm() <= 4.0 * f64::EPSILON * p.eval_scale(z[i]) {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let denom = dv - pv * repulsion;
            if !denom.is_finite() || denom.is_zero() {
                let kick = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += kick;
                continue;
            }
            let step = pv / denom;
            z[i] -= step;
            if step.norm() <= tol * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok((z, sweep));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
    })
}

/// Up to `steps` Newton steps, each kept only if it lowers `|p|`.
pub fn newton_polish(p: &CPoly, mut z: Complex64, steps: usize) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..steps {
        let (pv, dv) = p.eval_with_derivative(z);
        if dv.is_zero() || pv.is_zero() {
            break;
        }
        let cand = z - pv / dv;
        let r = p.eval(cand).norm();
        if r.is_nan() || r >= best {
            break;
        }
        z = cand;
        best = r;
    }
    z
}

fn merge_clusters(roots: &mut [Complex64]) {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < CLUSTER_TOL {
                let (gi, gj) = (group[i], group[j]);
                for g in group.iter_mut() {
                    if *g == gj {
                        *g = gi;
                    }
                }
            }
        }
    }
    for g in 0..n {
        let members: Vec<usize> = (0..n).filter(|&k| group[k] == g).collect();
        if members.len() > 1 {
            let mean = members.iter().map(|&k| roots[k]).sum::<Complex64>() / members.len() as f64;
            for k in members {
                roots[k] = mean;
            }
        }
    }
}
