use std::collections::BTreeSet;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use twistlink::apoly::a_polynomial;
use twistlink::charvariety::canonical_poly;
use twistlink::rootfinder::all_roots;
use twistlink::verify::{run_all, SuiteResult};
use twistlink::volume::{
    cover_angle, cyclic_cover_volume, estimate_alpha_max, integrand, is_admissible, volume,
    volume_table, VolumeStatus,
};

mod parse;
mod report;

use parse::{parse_angle, parse_int_list};
use report::{Format, Report};

const EXIT_FAILURE: u8 = 1;
const EXIT_NON_HYPERBOLIC: u8 = 2;

/// Cone-manifold volumes and A-polynomials of the double twist links
/// J(2m+1, 2m+1).
///
/// Angles are radians or multiples of pi such as 2pi/3 or 0.95pi.
#[derive(Debug, Parser)]
#[command(name = "twistlink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Absolute tolerance (quadrature error, or bracket width for alphamax).
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,

    /// Seed for the randomized checks in `verify`.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume of the cone-manifold with both cone angles equal to alpha.
    Volume {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_parser = parse_angle, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Volumes at a comma-separated list of angles.
    Table {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_parser = parse_angle, value_delimiter = ',', required = true)]
        angles: Vec<f64>,
    },
    /// Volume of the k-fold cyclic cover branched over the link (k, a..b or a,b,c).
    Cover {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
        #[arg(short = 'k')]
        k: String,
    },
    /// Largest cone angle with a hyperbolic structure.
    Alphamax {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
    },
    /// A-polynomial of the canonical component.
    Apoly {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
    },
    /// Roots in z of the canonical-component polynomial at s = exp(i alpha / 2).
    Roots {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_parser = parse_angle, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Identity suites; with --all also the volume consistency suites.
    Verify {
        #[arg(long)]
        all: bool,
        /// m, a range a..b, or a list a,b,c.
        #[arg(short = 'm', default_value = "1..3", allow_hyphen_values = true)]
        m: String,
    },
}

#[derive(Serialize)]
struct CoverRecord {
    m: i64,
    k: i64,
    alpha: f64,
    cover_volume: f64,
}

#[derive(Serialize)]
struct RootRecord {
    index: usize,
    re: f64,
    im: f64,
    residual: f64,
    admissible: bool,
    integrand: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_FAILURE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return ExitCode::from(EXIT_FAILURE);
    }
    let (report, code) = run(&cli);
    let mut out = io::stdout().lock();
    let written = match (&cli.command, cli.format) {
        (Command::Verify { .. }, Format::Text) => write_matrix(&report, &mut out),
        _ => report.write(cli.format, &mut out),
    };
    if written.and_then(|_| out.flush()).is_err() {
        return ExitCode::from(EXIT_FAILURE);
    }
    for e in &report.errors {
        eprintln!("error: {}", e["message"].as_str().unwrap_or_default());
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> (Report, u8) {
    let tol = cli.tol;
    match &cli.command {
        Command::Volume { m, alpha } => {
            let mut rep = Report::new("volume")
                .param("m", m)
                .param("alpha", alpha)
                .param("tol", tol);
            let code = match volume(*m, *alpha, tol) {
                Ok(v) => {
                    rep.push(v);
                    if v.status == VolumeStatus::NonHyperbolic {
                        EXIT_NON_HYPERBOLIC
                    } else {
                        0
                    }
                }
                Err(e) => {
                    rep.error("volume", e);
                    EXIT_FAILURE
                }
            };
            (rep, code)
        }
        Command::Table { m, angles } => {
            let mut rep = Report::new("table")
                .param("m", m)
                .param("angles", angles)
                .param("tol", tol);
            for (alpha, row) in angles.iter().zip(volume_table(*m, angles, tol)) {
                match row {
                    Ok(v) => rep.push(v),
                    Err(e) => rep.error(format!("alpha = {alpha}"), e),
                }
            }
            let code = if rep.errors.is_empty() {
                0
            } else {
                EXIT_FAILURE
            };
            (rep, code)
        }
        Command::Cover { m, k } => {
            let mut rep = Report::new("cover")
                .param("m", m)
                .param("k", k)
                .param("tol", tol);
            match parse_int_list(k) {
                Ok(ks) => {
                    for k in ks {
                        match cyclic_cover_volume(*m, k, tol) {
                            Ok(v) => rep.push(CoverRecord {
                                m: *m,
                                k,
                                alpha: cover_angle(k),
                                cover_volume: v,
                            }),
                            Err(e) => rep.error(format!("k = {k}"), e),
                        }
                    }
                }
                Err(e) => rep.error("-k", e),
            }
            let code = if rep.errors.is_empty() {
                0
            } else {
                EXIT_FAILURE
            };
            (rep, code)
        }
        Command::Alphamax { m } => {
            let mut rep = Report::new("alphamax").param("m", m).param("tol", tol);
            let code = match estimate_alpha_max(*m, tol) {
                Ok(a) => {
                    rep.push(a);
                    0
                }
                Err(e) => {
                    rep.error("alphamax", e);
                    EXIT_FAILURE
                }
            };
            (rep, code)
        }
        Command::Apoly { m } => {
            let mut rep = Report::new("apoly").param("m", m);
            let code = match a_polynomial(*m) {
                Ok(a) => {
                    rep.push(a);
                    0
                }
                Err(e) => {
                    rep.error("apoly", e);
                    EXIT_FAILURE
                }
            };
            (rep, code)
        }
        Command::Roots { m, alpha } => {
            let mut rep = Report::new("roots").param("m", m).param("alpha", alpha);
            let s = Complex64::from_polar(1.0, alpha / 2.0);
            let found = canonical_poly(*m, s).and_then(|p| Ok((all_roots(&p, 1e-13)?, p)));
            let code = match found {
                Ok((rs, _)) => {
                    for (index, (z, residual)) in rs.roots.iter().zip(&rs.residuals).enumerate() {
                        rep.push(RootRecord {
                            index,
                            re: z.re,
                            im: z.im,
                            residual: *residual,
                            admissible: is_admissible(*m, *z),
                            integrand: integrand(*m, *alpha, *z).ok(),
                        });
                    }
                    0
                }
                Err(e) => {
                    rep.error("roots", e);
                    EXIT_FAILURE
                }
            };
            (rep, code)
        }
        Command::Verify { all, m } => {
            let mut rep = Report::new("verify")
                .param("m", m)
                .param("all", all)
                .param("seed", cli.seed);
            let code = match parse_int_list(m) {
                Ok(ms) => match run_all(&ms, cli.seed, *all) {
                    Ok(results) => {
                        let failed = results.iter().any(|r| !r.passed);
                        for r in results {
                            rep.push(r);
                        }
                        if failed {
                            EXIT_FAILURE
                        } else {
                            0
                        }
                    }
                    Err(e) => {
                        rep.error("verify", e);
                        EXIT_FAILURE
                    }
                },
                Err(e) => {
                    rep.error("-m", e);
                    EXIT_FAILURE
                }
            };
            (rep, code)
        }
    }
}

/// Suites down the side, `m` across the top.
fn write_matrix(rep: &Report, out: &mut impl Write) -> io::Result<()> {
    let rows: Vec<SuiteResult> = rep
        .results
        .iter()
        .filter_map(|v| serde_json::from_value(v.clone()).ok())
        .collect();
    let mut suites: Vec<&str> = Vec::new();
    for r in &rows {
        if !suites.contains(&r.suite.as_str()) {
            suites.push(&r.suite);
        }
    }
    let ms: BTreeSet<Option<i64>> = rows.iter().map(|r| r.m).collect();
    let width = suites.iter().map(|s| s.len()).max().unwrap_or(5);
    write!(out, "{:<width$}", "suite")?;
    for m in &ms {
        let head = m.map_or("all".to_string(), |m| format!("m={m}"));
        write!(out, "  {head:>6}")?;
    }
    writeln!(out)?;
    for suite in suites {
        write!(out, "{suite:<width$}")?;
        for m in &ms {
            let cell = match rows.iter().find(|r| r.suite == suite && r.m == *m) {
                Some(r) if r.passed => "pass",
                Some(_) => "FAIL",
                None => "-",
            };
            write!(out, "  {cell:>6}")?;
        }
        writeln!(out)?;
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    writeln!(out)?;
    writeln!(out, "{} suites, {} failed", rows.len(), failed)?;
    for e in &rep.errors {
        writeln!(out, "error: {}", e["message"].as_str().unwrap_or_default())?;
    }
    Ok(())
}
