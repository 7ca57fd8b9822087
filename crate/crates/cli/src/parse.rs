use std::f64::consts::PI;

/// An angle in radians: a plain decimal (`1.2`) or a multiple of π written
/// `Npi/D`, `Npi` or `pi/D` (`2pi/3`, `0.999pi`, `pi/2`).
///
/// `Npi/D` is evaluated as `(N * π) / D`, the same expression the library
/// uses for `2π/k`, so both give the identical float.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim().to_ascii_lowercase().replace('π', "pi");
    let bad = || format!("cannot read {text:?} as an angle (use radians or forms like 2pi/3)");
    let Some((before, after)) = t.split_once("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let n = match before {
        "" | "+" => 1.0,
        "-" => -1.0,
        b => b.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
    };
    let d = match after {
        "" => 1.0,
        a => a
            .strip_prefix('/')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?,
    };
    if d == 0.0 {
        return Err(bad());
    }
    Ok(n * PI / d)
}

/// `3`, `-2`, `1..3` (inclusive) or `1,2,5`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>, String> {
    let bad = || format!("cannot read {text:?} as an integer, range a..b, or list");
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    t.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
        .collect()
}
