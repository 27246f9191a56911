//! Two-variable Laurent polynomials `Σ c·t^p·u^q` with big-integer coefficients.
//!
//! `t` tracks cohomological degree and `u` tracks weight. Terms are kept in
//! the same `(q, p)` order as Tate motives, so the text form of a Poincaré
//! polynomial lists summands in canonical order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    // keyed by (q, p)
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    /// `c·t^p·u^q`.
    pub fn monomial(c: impl Into<BigInt>, p: i64, q: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(p, q, c.into());
        out
    }

    pub fn add_term(&mut self, p: i64, q: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((q, p)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(q, p));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: i64, q: i64) -> BigInt {
        self.terms.get(&(q, p)).cloned().unwrap_or_default()
    }

    /// Terms as `(p, q, coefficient)` in canonical `(q, p)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&(q, p), c)| (p, q, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Drops every term of weight `q > max_weight`.
    pub fn truncate_weight(&self, max_weight: i64) -> Self {
        Self {
            terms: self
                .terms
                .range(..(max_weight + 1, i64::MIN))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Sum of all coefficients, i.e. the value at `t = u = 1`.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `t ↦ t^a·u^b`, `u ↦ t^c·u^d`.
    pub fn substitute(&self, t_to: (i64, i64), u_to: (i64, i64)) -> Self {
        let mut out = Self::zero();
        for (p, q, c) in self.terms() {
            out.add_term(p * t_to.0 + q * u_to.0, p * t_to.1 + q * u_to.1, c.clone());
        }
        out
    }

    /// Multiplies by `t^p·u^q`.
    pub fn shift(&self, p: i64, q: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(tq, tp), c)| ((tq + q, tp + p), c.clone()))
                .collect(),
        }
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (p, q, c) in rhs.terms() {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (p1, q1, c1) in self.terms() {
            for (p2, q2, c2) in rhs.terms() {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl std::iter::Sum for Poly2 {
    fn sum<I: Iterator<Item = Poly2>>(iter: I) -> Self {
        iter.fold(Poly2::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for Poly2 {
    fn product<I: Iterator<Item = Poly2>>(iter: I) -> Self {
        iter.fold(Poly2::one(), |acc, x| &acc * &x)
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, var: char, exp: i64) -> fmt::Result {
    match exp {
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{exp}"),
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (p, q, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = p == 0 && q == 0;
            if constant {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if p != 0 {
                write_var(f, 't', p)?;
                if q != 0 {
                    f.write_str("*")?;
                }
            }
            if q != 0 {
                write_var(f, 'u', q)?;
            }
        }
        Ok(())
    }
}

fn parse_term(raw: &str) -> Result<(i64, i64, BigInt), Error> {
    let bad = || Error::InvalidArgument(format!("cannot parse polynomial term {raw:?}"));
    let mut coeff = BigInt::one();
    let (mut p, mut q) = (0i64, 0i64);
    for factor in raw.split('*') {
        let factor = factor.trim();
        if let Some(rest) = factor.strip_prefix('t') {
            p += parse_exp(rest).ok_or_else(bad)?;
        } else if let Some(rest) = factor.strip_prefix('u') {
            q += parse_exp(rest).ok_or_else(bad)?;
        } else {
            coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
        }
    }
    Ok((p, q, coeff))
}

fn parse_exp(rest: &str) -> Option<i64> {
    if rest.is_empty() {
        Some(1)
    } else {
        rest.strip_prefix('^')?.parse().ok()
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    /// Parses the text form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut out = Poly2::zero();
        if s == "0" {
            return Ok(out);
        }
        let (mut sign, mut rest) = match s.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, s),
        };
        loop {
            let next = [rest.find(" + "), rest.find(" - ")]
                .into_iter()
                .flatten()
                .min();
            let (term, tail) = match next {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let (p, q, c) = parse_term(term)?;
            out.add_term(p, q, c * sign);
            match tail {
                Some(t) => {
                    sign = if t.starts_with(" - ") { -1 } else { 1 };
                    rest = &t[3..];
                }
                None => break,
            }
        }
        Ok(out)
    }
}

impl Serialize for Poly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
