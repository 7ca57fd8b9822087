//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_complex::Complex64;
use twistlink::apoly::{a_polynomial, alpha_beta, oracle_eliminate, q_poly, verify_on_variety};
use twistlink::charvariety::canonical_poly;
use twistlink::polyring::{MPolyZ, Vars};
use twistlink::rootfinder::all_roots;
use twistlink::verify::{
    canonical_suites, chebyshev_suites, representation_suites, volume_suites, SuiteResult,
};
use twistlink::volume::{
    cover_angle, cyclic_cover_volume, estimate_alpha_max, volume, volume_table, VolumeStatus,
};

const SEED: u64 = 20240607;

/// Complete volumes of the 8/3, 24/5 and 48/7 two-bridge links, computed
/// externally with SnapPy.
const COMPLETE_VOLUME: [(i64, f64); 3] = [(1, 3.6638623767), (2, 5.87591808267), (3, 6.5593358827)];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn suites_pass(rows: &[SuiteResult]) -> Check {
    let worst = rows.iter().map(|r| r.worst).fold(0.0, f64::max);
    match rows.iter().find(|r| !r.passed) {
        Some(r) => Err(format!(
            "{} m={:?} worst {:.2e} >= {:.0e}",
            r.suite, r.m, r.worst, r.threshold
        )),
        None => Ok(format!("{} suites, worst residual {worst:.2e}", rows.len())),
    }
}

fn criterion_1() -> Check {
    suites_pass(&chebyshev_suites(SEED))
}

fn criterion_2() -> Check {
    let rows: Vec<SuiteResult> = (1..=3)
        .flat_map(|m| representation_suites(m, 50, SEED))
        .collect();
    suites_pass(&rows)
}

fn criterion_3() -> Check {
    let mut rows = Vec::new();
    for m in 1..=3 {
        rows.extend(canonical_suites(m, 100, SEED).map_err(|e| e.to_string())?);
    }
    suites_pass(&rows)
}

fn match_roots(s: Complex64, expect: &[Complex64]) -> Result<f64, String> {
    let p = canonical_poly(1, s).map_err(|e| e.to_string())?;
    let rs = all_roots(&p, 1e-14).map_err(|e| e.to_string())?;
    if rs.roots.len() != expect.len() {
        return Err(format!("{} roots at s = {s}", rs.roots.len()));
    }
    let mut gap: f64 = 0.0;
    for e in expect {
        let k = rs.nearest(*e).expect("nonempty");
        gap = gap.max((rs.roots[k] - e).norm());
    }
    Ok(gap)
}

fn criterion_4() -> Check {
    let c = Complex64::new;
    let r2 = 2f64.sqrt();
    let g1 = match_roots(Complex64::i(), &[c(-r2, 0.0), c(0.0, 0.0), c(r2, 0.0)])?;
    let g2 = match_roots(c(1.0, 0.0), &[c(2.0, 0.0), c(1.0, 1.0), c(1.0, -1.0)])?;
    let gap = g1.max(g2);
    if gap < 1e-10 {
        Ok(format!("max root error {gap:.2e}"))
    } else {
        Err(format!("max root error {gap:.2e}"))
    }
}

fn criterion_5() -> Check {
    let tol = 1e-9;
    let mut notes = Vec::new();
    for m in [1, 2] {
        let amax = estimate_alpha_max(m, 1e-10)
            .map_err(|e| e.to_string())?
            .alpha_max;
        let (lo, hi) = (0.05, amax - 1e-7);
        let grid: Vec<f64> = (0..50).map(|i| lo + (hi - lo) * i as f64 / 49.0).collect();
        let vols = volume_table(m, &grid, tol)
            .into_iter()
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        if let Some(v) = vols
            .iter()
            .find(|v| v.status != VolumeStatus::Hyperbolic || v.volume < 0.0)
        {
            return Err(format!(
                "m={m}: alpha={} gave {:?} volume {}",
                v.alpha, v.status, v.volume
            ));
        }
        // nonincreasing up to the quadrature tolerance
        if let Some(w) = vols
            .windows(2)
            .find(|w| w[1].volume > w[0].volume + 2.0 * tol)
        {
            return Err(format!("m={m}: not monotone at alpha={}", w[1].alpha));
        }
        let tail = vols.last().expect("nonempty grid").volume;
        if tail >= 1e-6 {
            return Err(format!("m={m}: volume {tail:.2e} at alpha_max - 1e-7"));
        }
        let past = volume(m, amax + 1e-7, tol).map_err(|e| e.to_string())?;
        if past.status != VolumeStatus::NonHyperbolic {
            return Err(format!("m={m}: still hyperbolic just past alpha_max"));
        }
        let rows = volume_suites(m, SEED).map_err(|e| e.to_string())?;
        for name in ["volume-dual-quadrature", "volume-tolerance-refinement"] {
            let r = rows.iter().find(|r| r.suite == name).expect("suite exists");
            if !r.passed {
                return Err(format!("m={m}: {name} worst {:.2e}", r.worst));
            }
            notes.push(format!("m={m} {name} {:.1e}", r.worst));
        }
        notes.push(format!("m={m} V(alpha_max-) {tail:.1e}"));
    }
    Ok(notes.join(", "))
}

fn criterion_6() -> Check {
    let mut notes = Vec::new();
    for (m, reference) in COMPLETE_VOLUME {
        let v = volume(m, 1e-3, 1e-9).map_err(|e| e.to_string())?.volume;
        let gap = (v - reference).abs();
        let note = format!("m={m} V(1e-3)={v:.10} vs {reference} (gap {gap:.1e})");
        if gap >= 1e-4 {
            return Err(note);
        }
        notes.push(note);
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Check {
    for m in [1, 2] {
        let mut previous = 0.0;
        for k in 3..=10 {
            let cover = cyclic_cover_volume(m, k, 1e-9).map_err(|e| e.to_string())?;
            let base = volume(m, cover_angle(k), 1e-9)
                .map_err(|e| e.to_string())?
                .volume;
            if cover != k as f64 * base {
                return Err(format!("m={m} k={k}: {cover} != {k} * {base}"));
            }
            let per_sheet = cover / k as f64;
            if per_sheet <= previous {
                return Err(format!("m={m} k={k}: cover/k did not increase"));
            }
            previous = per_sheet;
        }
    }
    Ok("m=1,2 k=3..10 exact, cover/k increasing".into())
}

fn vanishes_at_l_one(a: &MPolyZ) -> bool {
    let mut by_m: BTreeMap<u32, BigInt> = BTreeMap::new();
    for ((e_m, _), c) in a.terms() {
        *by_m.entry(e_m).or_default() += c;
    }
    by_m.values().all(|c| *c == BigInt::from(0))
}

fn criterion_8() -> Check {
    let mut notes = Vec::new();
    for m in [1, 2] {
        let tuple = a_polynomial(m).map_err(|e| e.to_string())?;
        let oracle = oracle_eliminate(m).map_err(|e| e.to_string())?;
        if tuple.a_first != oracle {
            return Err(format!("m={m}: a_polynomial differs from the eliminant"));
        }
        if tuple.a_first != tuple.a_second {
            return Err(format!("m={m}: tuple entries differ"));
        }
        if tuple.a_first.content() != BigInt::from(1) {
            return Err(format!("m={m}: coefficients not coprime"));
        }
        if !vanishes_at_l_one(&tuple.a_first) {
            return Err(format!("m={m}: A(M, 1) is not identically zero"));
        }
        let mut worst: f64 = 0.0;
        for mirrored in [false, true] {
            let r = verify_on_variety(m, 200, SEED, mirrored).map_err(|e| e.to_string())?;
            if !r.failures.is_empty() || r.evaluated != 200 {
                return Err(format!("m={m}: {} of 200 samples evaluated", r.evaluated));
            }
            worst = worst.max(r.max_scaled_residual);
        }
        if worst >= 1e-6 {
            return Err(format!("m={m}: max scaled |A| = {worst:.2e}"));
        }
        notes.push(format!(
            "m={m} {} terms, max scaled |A| {worst:.1e}",
            tuple.a_first.len()
        ));
    }
    let q = q_poly(1).map_err(|e| e.to_string())?;
    let (alpha, beta) = alpha_beta();
    let two = MPolyZ::constant(2, Vars::SW);
    let q1 = &(&alpha.scale(&BigInt::from(2)) - &two) + &beta;
    if q.get(0) != Some(&two) || q.get(1) != Some(&q1) {
        return Err("Q_0 or Q_1 differs from the stated initial terms".into());
    }
    notes.push("Q_0, Q_1 exact".into());
    Ok(notes.join(", "))
}

fn run_cli(args: &[&str], threads: &str) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_twistlink"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion_9() -> Check {
    let seed = SEED.to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["volume", "-m", "2", "--alpha", "2pi/5"],
        vec!["volume", "-m", "1", "--alpha", "0.95pi"],
        vec!["table", "-m", "1", "--angles", "0.1,1,pi/2,2pi/3"],
        vec!["cover", "-m", "1", "-k", "3..6"],
        vec!["alphamax", "-m", "1"],
        vec!["apoly", "-m", "2"],
        vec!["roots", "-m", "3", "--alpha", "1.3"],
        vec!["verify", "--all", "-m", "1..2"],
    ];
    let mut runs = 0;
    for cmd in &commands {
        for format in ["json", "csv", "text"] {
            let mut args = cmd.clone();
            args.extend(["--format", format, "--seed", &seed]);
            let reference = run_cli(&args, "1")?;
            for threads in ["1", "4", "8"] {
                runs += 1;
                if run_cli(&args, threads)? != reference {
                    return Err(format!(
                        "`{}` differs with {threads} threads",
                        args.join(" ")
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{} commands x 3 formats, {runs} repeated runs byte-identical",
        commands.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Chebyshev identities", criterion_1),
        ("representation consistency", criterion_2),
        ("canonical-component identities", criterion_3),
        ("exact roots of the canonical polynomial", criterion_4),
        ("volume behavior", criterion_5),
        ("complete-volume cross-check", criterion_6),
        ("cyclic covers", criterion_7),
        ("A-polynomial", criterion_8),
        ("determinism across thread counts", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
