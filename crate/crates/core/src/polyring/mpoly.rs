use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered pair of variable labels. The first variable dominates the
/// lexicographic term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Vars(pub &'static str, pub &'static str);

impl Vars {
    /// Representation coordinates: meridian eigenvalue `s` and `w = w11`.
    pub const SW: Vars = Vars("s", "w");
    /// Peripheral eigenvalues.
    pub const ML: Vars = Vars("M", "L");
    /// Traces `x = tr a`, `z = tr ab^-1`.
    pub const XZ: Vars = Vars("x", "z");
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Sparse polynomial in two variables over the integers.
///
/// Terms live in a `BTreeMap` keyed by the exponent pair, so iteration in
/// reverse is descending lex order with the first variable dominant. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPolyZ {
    terms: BTreeMap<(u32, u32), BigInt>,
    vars: Vars,
}

impl MPolyZ {
    pub fn zero(vars: Vars) -> Self {
        MPolyZ {
            terms: BTreeMap::new(),
            vars,
        }
    }

    pub fn constant(c: impl Into<BigInt>, vars: Vars) -> Self {
        MPolyZ::monomial(c, 0, 0, vars)
    }

    pub fn monomial(c: impl Into<BigInt>, e1: u32, e2: u32, vars: Vars) -> Self {
        let mut p = MPolyZ::zero(vars);
        p.add_term((e1, e2), c.into());
        p
    }

    /// The first variable as a polynomial.
    pub fn first(vars: Vars) -> Self {
        MPolyZ::monomial(1, 1, 0, vars)
    }

    /// The second variable as a polynomial.
    pub fn second(vars: Vars) -> Self {
        MPolyZ::monomial(1, 0, 1, vars)
    }

    /// Builds a polynomial from `(e1, e2, coeff)` triples; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I, vars: Vars) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = MPolyZ::zero(vars);
        for (e1, e2, c) in terms {
            p.add_term((e1, e2), c.into());
        }
        p
    }

    fn add_term(&mut self, exps: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Same terms, relabelled variables.
    pub fn with_vars(mut self, vars: Vars) -> Self {
        self.vars = vars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> BigInt {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    /// Terms in descending lex order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn degree_first(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_second(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    /// Lex-leading term, first variable dominant.
    pub fn leading_term(&self) -> Option<((u32, u32), &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `second^k`, as a polynomial in the first variable
    /// (kept in the same two-variable ring).
    pub fn coeff_of_second(&self, k: u32) -> MPolyZ {
        MPolyZ::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 == k)
                .map(|(e, c)| (e.0, 0, c.clone())),
            self.vars,
        )
    }

    fn check_vars(&self, other: &MPolyZ) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.vars, other.vars))
        }
    }

    pub fn checked_add(&self, other: &MPolyZ) -> Result<MPolyZ> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPolyZ) -> Result<MPolyZ> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPolyZ) -> Result<MPolyZ> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry((ea.0 + eb.0, ea.1 + eb.1)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MPolyZ {
            terms: acc,
            vars: self.vars,
        })
    }

    pub fn scale(&self, k: &BigInt) -> MPolyZ {
        if k.is_zero() {
            return MPolyZ::zero(self.vars);
        }
        MPolyZ {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
            vars: self.vars,
        }
    }

    pub fn pow(&self, n: u32) -> MPolyZ {
        let mut out = MPolyZ::constant(1, self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Multiply by `first^a * second^b`.
    pub fn shift(&self, a: u32, b: u32) -> MPolyZ {
        MPolyZ {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 + a, e.1 + b), c.clone()))
                .collect(),
            vars: self.vars,
        }
    }

    /// Substitutes `first -> M`, `second -> L * M^shift`, landing in `(M, L)`.
    ///
    /// For negative `shift` the result is multiplied through by
    /// `M^(|shift| * deg_second)` so that every exponent stays nonnegative.
    pub fn substitute_monomial(&self, shift: i64) -> MPolyZ {
        let lift = if shift < 0 {
            shift.unsigned_abs() * u64::from(self.degree_second())
        } else {
            0
        };
        let terms = self.terms.iter().map(|(e, c)| {
            let m_exp = i64::from(e.0) + shift * i64::from(e.1) + lift as i64;
            let m_exp = u32::try_from(m_exp).expect("exponent stays nonnegative after lift");
            (m_exp, e.1, c.clone())
        });
        MPolyZ::from_terms(terms, Vars::ML)
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the integer content and fixes the sign so the lex-leading
    /// coefficient is positive.
    pub fn primitive(&self) -> Result<MPolyZ> {
        let (_, lead) = self.leading_term().ok_or(Error::ZeroPolynomial)?;
        let mut g = self.content();
        if lead.is_negative() {
            g = -g;
        }
        Ok(MPolyZ {
            terms: self.terms.iter().map(|(e, c)| (*e, c / &g)).collect(),
            vars: self.vars,
        })
    }

    /// Exponents of the largest monomial dividing every term.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    /// Removes the common monomial factor.
    pub fn strip_monomial(&self) -> MPolyZ {
        let (a, b) = self.monomial_content();
        MPolyZ {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 - a, e.1 - b), c.clone()))
                .collect(),
            vars: self.vars,
        }
    }

    /// Canonical representative up to `± M^a L^b`: monomial factor stripped,
    /// content removed, lex-leading coefficient positive.
    pub fn normalize_unit(&self) -> Result<MPolyZ> {
        self.strip_monomial().primitive()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPolyZ) -> Option<MPolyZ> {
        if self.vars != d.vars {
            return None;
        }
        let ((d1, d2), dc) = d.leading_term()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = MPolyZ::zero(self.vars);
        while let Some(((r1, r2), rc)) = rem.leading_term() {
            if r1 < d1 || r2 < d2 {
                return None;
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let step = MPolyZ::monomial(q, r1 - d1, r2 - d2, self.vars);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    pub fn eval(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| a.powu(e.0) * b.powu(e.1) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// `Σ |c| |a|^i |b|^j`: the natural scale for judging `|eval(a, b)|`.
    pub fn eval_scale(&self, a: Complex64, b: Complex64) -> f64 {
        let (na, nb) = (a.norm(), b.norm());
        self.terms
            .iter()
            .map(|(e, c)| {
                c.abs().to_f64().unwrap_or(f64::INFINITY)
                    * na.powi(e.0 as i32)
                    * nb.powi(e.1 as i32)
            })
            .sum()
    }

    /// Parses the text format produced by `Display`.
    pub fn parse(text: &str, vars: Vars) -> Result<MPolyZ> {
        let bad = || Error::Unsupported(format!("cannot parse polynomial {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(MPolyZ::zero(vars));
        }
        let mut out = MPolyZ::zero(vars);
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                chunks.push(&compact[start..i]);
                start = i;
            }
        }
        chunks.push(&compact[start..]);
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes().first() {
                Some(b'-') => (-1, &chunk[1..]),
                Some(b'+') => (1, &chunk[1..]),
                _ => (1, chunk),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = BigInt::from(sign);
            let (mut e1, mut e2) = (0u32, 0u32);
            for factor in body.split('*') {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                if name == vars.0 {
                    e1 += exp;
                } else if name == vars.1 {
                    e2 += exp;
                } else {
                    let k: BigInt = name.parse().map_err(|_| bad())?;
                    coeff *= k;
                }
            }
            out.add_term((e1, e2), coeff);
        }
        Ok(out)
    }
}

struct TermsView<'a>(&'a MPolyZ);

struct TermView<'a> {
    vars: Vars,
    exps: (u32, u32),
    coeff: &'a BigInt,
}

impl Serialize for TermView<'_> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(3))?;
        map.serialize_entry(&format!("e_{}", self.vars.0), &self.exps.0)?;
        map.serialize_entry(&format!("e_{}", self.vars.1), &self.exps.1)?;
        map.serialize_entry("coeff", &self.coeff.to_string())?;
        map.end()
    }
}

impl Serialize for TermsView<'_> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.0.terms().map(|(exps, coeff)| TermView {
            vars: self.0.vars,
            exps,
            coeff,
        }))
    }
}

/// `{"poly_text": ..., "terms": [{"e_M": 4, "e_L": 2, "coeff": "1"}, ...]}`
/// with terms in descending lexicographic order and coefficients as
/// decimal strings.
impl Serialize for MPolyZ {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("MPolyZ", 2)?;
        st.serialize_field("poly_text", &self.to_string())?;
        st.serialize_field("terms", &TermsView(self))?;
        st.end()
    }
}

impl Add for &MPolyZ {
    type Output = MPolyZ;

    /// Panics on mismatched variables; use [`MPolyZ::checked_add`] to get an error instead.
    fn add(self, rhs: &MPolyZ) -> MPolyZ {
        self.checked_add(rhs)
            .expect("polynomial variables must match")
    }
}

impl Sub for &MPolyZ {
    type Output = MPolyZ;

    fn sub(self, rhs: &MPolyZ) -> MPolyZ {
        self.checked_sub(rhs)
            .expect("polynomial variables must match")
    }
}

impl Mul for &MPolyZ {
    type Output = MPolyZ;

    fn mul(self, rhs: &MPolyZ) -> MPolyZ {
        self.checked_mul(rhs)
            .expect("polynomial variables must match")
    }
}

impl Neg for &MPolyZ {
    type Output = MPolyZ;

    fn neg(self) -> MPolyZ {
        MPolyZ {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            vars: self.vars,
        }
    }
}

impl fmt::Debug for MPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.vars)
    }
}

/// Text format: terms in descending lex order written as `c*X^a*Y^b`,
/// joined by ` + ` / ` - `, with unit coefficients and exponents omitted.
impl fmt::Display for MPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((e1, e2), c)) in self.terms().enumerate() {
            match (i == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::with_capacity(3);
            if !mag.is_one() || (e1 == 0 && e2 == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [(self.vars.0, e1), (self.vars.1, e2)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
