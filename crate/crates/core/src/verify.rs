//! Identity suites that check the closed forms against independent
//! computations: recurrences against their identities, closed-form
//! matrices against literal word products, the canonical-component
//! identities at sampled points, and the A-polynomial against elimination
//! and against sampled representations.
//!
//! Every suite is seeded, and the result does not depend on the number of
//! threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apoly::{a_polynomial, oracle_eliminate, verify_on_variety};
use crate::charvariety::{
    build_matrices, canonical_family, canonical_residuals, commutation_residual, literal_word,
    q_of_s, riley_roots, DtlParams, RepPoint,
};
use crate::chebyshev::{
    matrix_power_residual, product_recurrence_residual, quadratic_form_residual,
};
use crate::error::Result;
use crate::matrix::Mat2;
use crate::quadrature::QuadScheme;
use crate::rootfinder::all_roots;
use crate::volume::{integrand, is_admissible, select_branch, volume, volume_with, VolumeOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub m: Option<i64>,
    pub samples: usize,
    /// Worst residual seen (0 or 1 for yes/no checks).
    pub worst: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(suite: &str, m: Option<i64>, samples: usize, worst: f64, threshold: f64) -> Self {
        SuiteResult {
            suite: suite.to_string(),
            m,
            samples,
            worst,
            threshold,
            passed: worst < threshold,
        }
    }

    fn check(suite: &str, m: Option<i64>, ok: bool) -> Self {
        SuiteResult {
            suite: suite.to_string(),
            m,
            samples: 1,
            worst: if ok { 0.0 } else { 1.0 },
            threshold: 0.5,
            passed: ok,
        }
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_nan() {
            f64::INFINITY
        } else {
            acc.max(v)
        }
    })
}

fn random_c(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.random_range(-r..r), rng.random_range(-r..r))
}

/// `s` drawn on the unit circle or in an annulus around it.
fn random_eigenvalue(rng: &mut ChaCha8Rng) -> Complex64 {
    let radius = if rng.random_bool(0.5) {
        1.0
    } else {
        rng.random_range(0.6..1.6)
    };
    Complex64::from_polar(radius, rng.random_range(0.1..3.0))
}

/// The three Chebyshev identities: the quadratic form, the product
/// recurrence (1000 random `v`, `|j| ≤ 12`) and matrix powers (100 random
/// unimodular matrices, `|j| ≤ 10`).
pub fn chebyshev_suites(seed: u64) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs: Vec<Complex64> = (0..1000).map(|_| random_c(&mut rng, 2.5)).collect();
    let js: Vec<i64> = (-12..=12).collect();
    let quad = worst(
        vs.par_iter()
            .map(|&v| worst(js.iter().map(|&j| quadratic_form_residual(j, v))))
            .collect::<Vec<_>>(),
    );
    let prod = worst(
        vs.par_iter()
            .map(|&v| worst(js.iter().map(|&j| product_recurrence_residual(j, v))))
            .collect::<Vec<_>>(),
    );
    let mats: Vec<Mat2> = (0..100)
        .map(|_| {
            let (a, b, c) = (
                random_c(&mut rng, 1.5) + 0.5,
                random_c(&mut rng, 1.5),
                random_c(&mut rng, 1.5),
            );
            Mat2::new(a, b, c, (1.0 + b * c) / a)
        })
        .collect();
    let pow = worst(
        mats.par_iter()
            .map(|v| {
                worst((-10..=10).map(|j| matrix_power_residual(v, j).unwrap_or(f64::INFINITY)))
            })
            .collect::<Vec<_>>(),
    );
    vec![
        SuiteResult::new(
            "chebyshev-quadratic-form",
            None,
            vs.len() * js.len(),
            quad,
            1e-9,
        ),
        SuiteResult::new(
            "chebyshev-product-recurrence",
            None,
            vs.len() * js.len(),
            prod,
            1e-9,
        ),
        SuiteResult::new("chebyshev-matrix-power", None, mats.len() * 21, pow, 1e-10),
    ]
}

struct RileySample {
    commutation: f64,
    word_gap: f64,
    trace_gap: f64,
}

/// Commutation `ρ(a)ρ(w) = ρ(w)ρ(a)` at `count` roots of the Riley
/// polynomial, and the closed forms of `ρ(d)`, `tr ρ(d)` and `ρ(w)` against
/// literal products.
pub fn representation_suites(m: i64, count: usize, seed: u64) -> Vec<SuiteResult> {
    let params = DtlParams::new(m, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0001 ^ (m as u64));
    let specs: Vec<(Complex64, Complex64, u64)> = (0..count)
        .map(|_| {
            (
                random_eigenvalue(&mut rng),
                random_eigenvalue(&mut rng),
                rng.random(),
            )
        })
        .collect();
    let samples: Vec<Option<RileySample>> = specs
        .par_iter()
        .map(|&(s1, s2, pick)| {
            let x = s1 + s1.inv();
            let y = s2 + s2.inv();
            let roots = riley_roots(params, x, y).ok()?;
            let z = roots[(pick % roots.len() as u64) as usize];
            let rep = RepPoint::from_traces(s1, s2, z).ok()?;
            let wm = build_matrices(&rep, params).ok()?;
            let lit = literal_word(&rep, params);
            let d_lit = wm.rho_b * wm.rho_c.inverse() * wm.rho_a * wm.rho_c;
            Some(RileySample {
                commutation: commutation_residual(&wm),
                word_gap: wm.rho_w.max_abs_diff(&lit) / lit.max_abs().max(1.0),
                trace_gap: (wm.rho_d.max_abs_diff(&d_lit) / d_lit.max_abs().max(1.0))
                    .max((wm.t - d_lit.trace()).norm() / (1.0 + d_lit.trace().norm())),
            })
        })
        .collect();
    let missing = samples.iter().filter(|s| s.is_none()).count();
    let ok: Vec<&RileySample> = samples.iter().flatten().collect();
    let penalty = if missing > 0 { f64::INFINITY } else { 0.0 };
    vec![
        SuiteResult::new(
            "riley-commutation",
            Some(m),
            count,
            worst(ok.iter().map(|s| s.commutation)).max(penalty),
            1e-8,
        ),
        SuiteResult::new(
            "word-closed-form",
            Some(m),
            count,
            worst(ok.iter().map(|s| s.word_gap)).max(penalty),
            1e-10,
        ),
        SuiteResult::new(
            "d-closed-form",
            Some(m),
            count,
            worst(ok.iter().map(|s| s.trace_gap)).max(penalty),
            1e-10,
        ),
    ]
}

/// The four identities that hold on the canonical component, at `count`
/// points `(s, z)` with `|s| = 1` and `R_{L_m}(s, z) = 0`, away from the
/// poles `z = 2` and `z = s^2 + s^-2`.
pub fn canonical_suites(m: i64, count: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    let fam = canonical_family(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0002 ^ (m as u64));
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let s = Complex64::from_polar(
            1.0,
            rng.random_range(0.02..std::f64::consts::FRAC_PI_2 - 0.02),
        );
        let roots = all_roots(&fam.at_s(s), 1e-13)?.roots;
        let z = roots[rng.random_range(0..roots.len())];
        let q = q_of_s(s);
        if ((z - 2.0) * (q - z)).norm() > 1e-6 {
            points.push((s, z));
        }
    }
    let res = points
        .par_iter()
        .map(|&(s, z)| canonical_residuals(m, s, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        SuiteResult::new(
            "canonical-w11-square",
            Some(m),
            count,
            worst(res.iter().map(|r| r.w11_square_ratio)),
            1e-8,
        ),
        SuiteResult::new(
            "canonical-unit-product",
            Some(m),
            count,
            worst(res.iter().map(|r| r.unit_product)),
            1e-8,
        ),
        SuiteResult::new(
            "canonical-product-closed-form",
            Some(m),
            count,
            worst(res.iter().map(|r| r.product_closed_form)),
            1e-8,
        ),
        SuiteResult::new(
            "canonical-square-sum-closed-form",
            Some(m),
            count,
            worst(res.iter().map(|r| r.square_sum_closed_form)),
            1e-8,
        ),
    ])
}

/// The A-polynomial against elimination, and against sampled
/// representations in both orientations.
pub fn apoly_suites(m: i64, count: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    let tuple = a_polynomial(m)?;
    let a = &tuple.a_first;
    let oracle = oracle_eliminate(m)?;
    let mut out = vec![
        SuiteResult::check("apoly-elimination-oracle", Some(m), *a == oracle),
        SuiteResult::check(
            "apoly-tuple-symmetric",
            Some(m),
            tuple.a_first == tuple.a_second,
        ),
        SuiteResult::check("apoly-primitive", Some(m), a.primitive().as_ref() == Ok(a)),
    ];
    for mirrored in [false, true] {
        let r = verify_on_variety(m, count, seed, mirrored)?;
        let penalty = if r.failures.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
        let name = if mirrored {
            "apoly-variety-mirrored"
        } else {
            "apoly-variety"
        };
        out.push(SuiteResult::new(
            name,
            Some(m),
            count,
            r.max_scaled_residual.max(penalty),
            1e-6,
        ));
    }
    Ok(out)
}

/// Consistency of the volume computation for `L_m`: two quadrature
/// schemes, two tolerances, the integrand against `2 log|w11|`, and the sign
/// of the integrand on admissible samples of the chosen branch.
pub fn volume_suites(m: i64, seed: u64) -> Result<Vec<SuiteResult>> {
    use std::f64::consts::PI;
    let angles = [2.0 * PI / 3.0, 2.0 * PI / 5.0, 0.5];
    let tol = 1e-9;
    let simpson = VolumeOptions {
        tol: 1e-11,
        scheme: QuadScheme::Simpson,
        ..Default::default()
    };
    let mut dual = 0.0f64;
    let mut refine = 0.0f64;
    for &a in &angles {
        let gk = volume(m, a, tol)?.volume;
        dual = dual.max((gk - volume_with(m, a, &simpson)?.volume).abs());
        refine = refine.max((gk - volume(m, a, tol / 10.0)?.volume).abs());
    }

    let sel = select_branch(m, 0.3, &VolumeOptions::default())?;
    let path = sel.chosen_path();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0003 ^ (m as u64));
    let mut matrix_gap = 0.0f64;
    for _ in 0..20 {
        let k = rng.random_range(0..path.samples.len());
        let (w, z) = path.samples[k];
        let s = Complex64::from_polar(1.0, w / 2.0);
        let w11 = crate::charvariety::w11_canonical(m, s, z)?;
        let f = integrand(m, w, z)?;
        let expect = if z.im.abs() < crate::volume::REAL_AXIS_CLAMP {
            0.0
        } else {
            2.0 * w11.norm().ln()
        };
        matrix_gap = matrix_gap.max((f - expect).abs());
    }
    let mut negative = 0.0f64;
    for &(w, z) in &path.samples {
        let f = integrand(m, w, z)?;
        if is_admissible(m, z) && f < 0.0 {
            negative = negative.max(-f);
        }
    }
    Ok(vec![
        SuiteResult::new("volume-dual-quadrature", Some(m), angles.len(), dual, 1e-8),
        SuiteResult::new(
            "volume-tolerance-refinement",
            Some(m),
            angles.len(),
            refine,
            2.0 * tol,
        ),
        SuiteResult::new("volume-integrand-matrix", Some(m), 20, matrix_gap, 1e-8),
        SuiteResult::new(
            "volume-integrand-nonnegative",
            Some(m),
            path.samples.len(),
            negative,
            1e-12,
        ),
    ])
}

/// The algebraic suites for each `m` in `ms`, plus the volume suites when
/// `with_volume` is set.
pub fn run_all(ms: &[i64], seed: u64, with_volume: bool) -> Result<Vec<SuiteResult>> {
    let mut out = chebyshev_suites(seed);
    for &m in ms {
        out.extend(representation_suites(m, 50, seed));
        out.extend(canonical_suites(m, 100, seed)?);
        if m >= 1 {
            out.extend(apoly_suites(m, 200, seed)?);
        }
        if with_volume {
            out.extend(volume_suites(m, seed)?);
        }
    }
    Ok(out)
}
