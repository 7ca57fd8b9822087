use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use twistlink::charvariety::canonical_family;
use twistlink::polyring::CPoly;
use twistlink::rootfinder::{all_roots, continue_all, StepControl};

/// Eigenvalues of the companion matrix of a real polynomial.
fn companion_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -coeffs[i] / lead;
    }
    c.complex_eigenvalues().iter().copied().collect()
}

fn max_matching_gap(found: &[Complex64], expect: &[Complex64]) -> f64 {
    let mut left: Vec<Complex64> = expect.to_vec();
    let mut worst: f64 = 0.0;
    for z in found {
        let (k, d) = left
            .iter()
            .enumerate()
            .map(|(k, e)| (k, (e - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("same count");
        worst = worst.max(d);
        left.swap_remove(k);
    }
    worst
}

#[test]
fn canonical_polynomials_match_companion_eigenvalues() {
    for m in 1..=4 {
        let fam = canonical_family(m).unwrap();
        for omega in [0.3, 1.1, 2.0, 2.9] {
            let p = fam.at_omega(omega);
            let real: Vec<f64> = p.coeffs().iter().map(|c| c.re).collect();
            let rs = all_roots(&p, 1e-13).unwrap();
            assert_eq!(rs.degree, 2 * m as usize + 1);
            let gap = max_matching_gap(&rs.roots, &companion_roots(&real));
            assert!(gap < 1e-8, "m={m} omega={omega} gap {gap:e}");
        }
    }
}

#[test]
fn degree_nine_against_companion() {
    let coeffs = [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, -2.0, 6.0, 5.0, -3.0];
    let p = CPoly::from_real(&coeffs);
    let rs = all_roots(&p, 1e-13).unwrap();
    assert_eq!(rs.roots.len(), 9);
    assert!(max_matching_gap(&rs.roots, &companion_roots(&coeffs)) < 1e-9);
}

#[test]
fn roots_come_sorted() {
    let p = canonical_family(3).unwrap().at_omega(1.7);
    let rs = all_roots(&p, 1e-13).unwrap();
    for w in rs.roots.windows(2) {
        assert!((w[0].re, w[0].im) <= (w[1].re, w[1].im));
    }
}

#[test]
fn tracked_roots_stay_on_their_polynomial() {
    let fam = canonical_family(2).unwrap();
    let paths = continue_all(|w| fam.at_omega(w), 3.1, 0.5, &StepControl::default()).unwrap();
    assert_eq!(paths.len(), 5);
    for path in &paths {
        for &(w, z) in &path.samples {
            let p = fam.at_omega(w);
            assert!(p.eval(z).norm() <= 1e-9 * p.eval_scale(z), "omega {w}");
        }
    }
}

#[test]
fn admissibility_flags_depend_only_on_the_sample() {
    let fam = canonical_family(1).unwrap();
    let mut paths = continue_all(|w| fam.at_omega(w), 3.1, 1.0, &StepControl::default()).unwrap();
    for path in &mut paths {
        path.flag(|_, z| twistlink::volume::is_admissible(1, z));
        let first = path.admissible_at.clone();
        path.samples.reverse();
        path.flag(|_, z| twistlink::volume::is_admissible(1, z));
        path.admissible_at.reverse();
        assert_eq!(first, path.admissible_at);
    }
}

fn root_strategy() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..8)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn from_roots(roots: &[Complex64]) -> CPoly {
    roots.iter().fold(CPoly::from_real(&[1.0]), |acc, &r| {
        acc * CPoly::new(vec![-r, Complex64::new(1.0, 0.0)])
    })
}

fn well_separated(roots: &[Complex64]) -> bool {
    roots
        .iter()
        .enumerate()
        .all(|(i, a)| roots[i + 1..].iter().all(|b| (a - b).norm() > 0.05))
}

proptest! {
    #[test]
    fn recovers_planted_roots(roots in root_strategy().prop_filter("separated", |r| well_separated(r))) {
        let rs = all_roots(&from_roots(&roots), 1e-12).unwrap();
        prop_assert!(max_matching_gap(&rs.roots, &roots) < 1e-7);
    }

    #[test]
    fn scaling_the_variable_scales_the_roots(
        roots in root_strategy().prop_filter("separated", |r| well_separated(r)),
        c in 0.3f64..3.0,
    ) {
        // p(c z) has roots r / c
        let p = from_roots(&roots);
        let scaled = CPoly::new(
            p.coeffs().iter().enumerate().map(|(k, a)| a * c.powi(k as i32)).collect(),
        );
        let a = all_roots(&p, 1e-12).unwrap();
        let b = all_roots(&scaled, 1e-12).unwrap();
        let expect: Vec<Complex64> = a.roots.iter().map(|r| r / c).collect();
        prop_assert!(max_matching_gap(&b.roots, &expect) < 1e-7 * (1.0 + 1.0 / c));
    }

    #[test]
    fn leading_coefficient_does_not_matter(
        roots in root_strategy().prop_filter("separated", |r| well_separated(r)),
        k in (0.1f64..10.0, -3.0f64..3.0),
    ) {
        let p = from_roots(&roots);
        let a = all_roots(&p, 1e-12).unwrap();
        let b = all_roots(&p.scale(Complex64::new(k.0, k.1)), 1e-12).unwrap();
        prop_assert!(max_matching_gap(&a.roots, &b.roots) < 1e-9);
    }
}
