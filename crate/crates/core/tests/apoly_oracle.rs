use num_bigint::BigInt;
use num_complex::Complex64;
use twistlink::apoly::{
    a_polynomial, cleared_sequence, oracle_eliminate, p_poly, q_poly, verify_on_variety, weight,
};
use twistlink::polyring::{MPolyZ, Vars, ZPoly};

fn sw(text: &str) -> MPolyZ {
    MPolyZ::parse(text, Vars::SW).unwrap()
}

const A1: &str = "M^12*L^5 - 2*M^12*L^4 + M^12*L^3 + 3*M^10*L^4 - 2*M^10*L^3 - M^10*L^2 \
    + 3*M^8*L^4 - 10*M^8*L^3 + 7*M^8*L^2 - M^6*L^4 + 19*M^6*L^3 - 19*M^6*L^2 + M^6*L \
    - 7*M^4*L^3 + 10*M^4*L^2 - 3*M^4*L + M^2*L^3 + 2*M^2*L^2 - 3*M^2*L - L^2 + 2*L - 1";

/// `s P_m(s + 1/s, N/D)` cleared by `D^{2m}`, built from the trace form.
fn weighted_p(m: i64) -> MPolyZ {
    let p = p_poly(m);
    let mut coeffs = vec![MPolyZ::zero(Vars::SW); p.degree_second() as usize + 1];
    for ((ex, ez), c) in p.terms() {
        let base = if ex == 0 { sw("s") } else { sw("s^2 + 1") };
        coeffs[ez as usize] = &coeffs[ez as usize] + &base.scale(c);
    }
    let num = sw("s^4*w^2 - s^4*w + s^2*w^2 + 6*s^2*w + s^2 - w + 1");
    let den = sw("s^3*w^2 + s^3*w + s*w + s");
    ZPoly::new(coeffs, Vars::SW).substitute_fraction(&num, &den)
}

#[test]
fn m1_polynomial_is_pinned() {
    let a = a_polynomial(1).unwrap();
    assert_eq!(a.a_first, MPolyZ::parse(A1, Vars::ML).unwrap());
    assert_eq!(a.a_first.len(), 22);
}

#[test]
fn recurrence_matches_elimination() {
    for m in 1..=3 {
        let a = a_polynomial(m).unwrap();
        assert_eq!(a.a_first, oracle_eliminate(m).unwrap(), "m = {m}");
        assert_eq!(a.a_first, a.a_second);
        assert_eq!(a.a_first.content(), BigInt::from(1));
        assert_eq!(a.a_first.monomial_content(), (0, 0));
    }
}

#[test]
fn cleared_sequence_is_the_weighted_trace_polynomial() {
    for m in 1..=3 {
        let q = cleared_sequence(m).unwrap();
        let expect = &sw("s") * q.last();
        assert_eq!(weighted_p(m), expect, "m = {m}");
    }
}

#[test]
fn weight_identity_at_random_points() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let num = sw("s^4*w^2 - s^4*w + s^2*w^2 + 6*s^2*w + s^2 - w + 1");
    let den = sw("s^3*w^2 + s^3*w + s*w + s");
    for m in 1..=3 {
        let q = cleared_sequence(m).unwrap();
        let p = p_poly(m);
        for _ in 0..100 {
            let s = Complex64::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..6.2));
            let w = Complex64::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..6.2));
            let d = den.eval(s, w);
            let z = num.eval(s, w) / d;
            let lhs = d.powi(2 * m as i32) * p.eval(s + s.inv(), z);
            let rhs = q.last().eval(s, w);
            let scale = 1.0 + q.last().eval_scale(s, w);
            assert!((lhs - rhs).norm() < 1e-8 * scale, "m={m} s={s} w={w}");
        }
    }
}

#[test]
fn literal_sequence_satisfies_its_recurrence() {
    let (alpha, beta) = twistlink::apoly::alpha_beta();
    let q = q_poly(4).unwrap();
    for j in 1..=4 {
        let (cur, p1, p2) = (
            q.get(j).unwrap(),
            q.get(j - 1).unwrap(),
            q.get(j - 2).unwrap(),
        );
        assert!(
            (&(&(cur - &(&alpha * p1)) + p2) - &beta).is_zero(),
            "j = {j}"
        );
    }
}

#[test]
fn outputs_are_primitive() {
    for m in 1..=3 {
        let a = a_polynomial(m).unwrap().a_first;
        assert_eq!(a.primitive().unwrap(), a);
        assert_eq!(a.normalize_unit().unwrap(), a);
    }
}

#[test]
fn weight_is_the_squared_denominator() {
    assert_eq!(weight(), sw("s^3*w^2 + s^3*w + s*w + s").pow(2));
}

#[test]
fn literal_recurrence_is_not_the_eliminant() {
    // the uncleared recurrence does not give the A-polynomial
    for m in 1..=2 {
        let literal = q_poly(m).unwrap();
        let l_minus_one = MPolyZ::parse("L - 1", Vars::ML).unwrap();
        let candidate = (&l_minus_one * &literal.last().substitute_monomial(2 * m))
            .normalize_unit()
            .unwrap();
        assert_ne!(candidate, oracle_eliminate(m).unwrap(), "m = {m}");
    }
}

#[test]
fn trivial_branch_vanishes_identically() {
    for m in 1..=3 {
        let a = a_polynomial(m).unwrap().a_first;
        let mut sums = std::collections::BTreeMap::<u32, BigInt>::new();
        for ((e_m, _), c) in a.terms() {
            *sums.entry(e_m).or_default() += c;
        }
        assert!(sums.values().all(|c| *c == BigInt::from(0)), "m = {m}");
        for t in [0.3, 1.0, 2.7] {
            let (x, one) = (Complex64::new(t, 0.0), Complex64::new(1.0, 0.0));
            assert!(a.eval(x, one).norm() <= 1e-14 * a.eval_scale(x, one));
        }
    }
}

#[test]
fn vanishes_at_sampled_representations() {
    for m in 1..=3 {
        for mirrored in [false, true] {
            let r = verify_on_variety(m, 60, 11, mirrored).unwrap();
            assert!(r.failures.is_empty(), "{:?}", r.failures);
            assert_eq!(r.evaluated, 60);
            assert!(
                r.max_scaled_residual < 1e-8,
                "m={m}: {}",
                r.max_scaled_residual
            );
            assert!(r.max_commutation < 1e-8);
        }
    }
}

#[test]
fn sampling_is_reproducible() {
    assert_eq!(
        verify_on_variety(2, 30, 5, false).unwrap(),
        verify_on_variety(2, 30, 5, false).unwrap()
    );
}
