//! Adaptive one-dimensional quadrature.
//!
//! Two independent schemes: globally adaptive Gauss–Kronrod (7/15 points)
//! and recursive adaptive Simpson with Richardson correction. Both take a
//! fallible integrand and stop on the first error it reports.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Which rule [`integrate`] uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadScheme {
    #[default]
    GaussKronrod,
    Simpson,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const MAX_INTERVALS: usize = 4000;
const MAX_DEPTH: u32 = 48;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64, scheme: QuadScheme) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    match scheme {
        QuadScheme::GaussKronrod => gauss_kronrod(f, a, b, tol),
        QuadScheme::Simpson => adaptive_simpson(f, a, b, tol),
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

fn gk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for k in 0..7 {
        let dx = h * XGK[k];
        let pair = f(c - dx)? + f(c + dx)?;
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    })
}

/// Globally adaptive 15-point Gauss–Kronrod with `|K15 - G7|` per panel as
/// the error estimate; the worst panel is bisected until the summed
/// estimate is below `tol`.
pub fn gauss_kronrod<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(Quadrature::default());
    }
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&mut f, a, b)?);
    let mut evaluations = 15;
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= tol {
            // sum in a fixed order so the value does not depend on heap layout
            let mut panels: Vec<&Panel> = heap.iter().collect();
            panels.sort_by(|x, y| x.a.total_cmp(&y.a));
            let value = panels.iter().map(|p| p.value).sum();
            return Ok(Quadrature {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure {
                error_estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gk15(&mut f, worst.a, mid)?);
        heap.push(gk15(&mut f, mid, worst.b)?);
        evaluations += 30;
    }
}

/// Recursive adaptive Simpson: a panel is accepted when the two-half
/// estimate differs from the whole-panel one by at most `15 tol`, and the
/// difference divided by 15 is added back.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(Quadrature::default());
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut out = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 3,
    };
    simpson_step(&mut f, (a, fa), (m, fm), (b, fb), whole, tol, 0, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    (a, fa): (f64, f64),
    (m, fm): (f64, f64),
    (b, fb): (f64, f64),
    whole: f64,
    tol: f64,
    depth: u32,
    out: &mut Quadrature,
) -> Result<()> {
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    out.evaluations += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        out.value += left + right + delta / 15.0;
        out.error_estimate += delta.abs() / 15.0;
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailure {
            error_estimate: delta.abs() / 15.0,
        });
    }
    simpson_step(
        f,
        (a, fa),
        (lm, flm),
        (m, fm),
        left,
        tol / 2.0,
        depth + 1,
        out,
    )?;
    simpson_step(
        f,
        (m, fm),
        (rm, frm),
        (b, fb),
        right,
        tol / 2.0,
        depth + 1,
        out,
    )
}
