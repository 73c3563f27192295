use std::fmt;

use serde::{Deserialize, Serialize};

use crate::approx::RealValued;
use crate::error::{Error, Result};

/// How much is known about a real beyond its floating-point value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case", deny_unknown_fields)]
pub enum Exactness {
    /// `num/den` in lowest terms with `den > 0`.
    Rational { num: i64, den: u64 },
    /// A known irrational, identified by its label.
    Irrational { label: String },
    Plain,
}

/// A real number with an exactness tag.
///
/// Point identity between tagged values never relies on float equality
/// across tags: two rationals are equal when their reduced fractions agree,
/// two irrationals when their labels agree, and plain values compare by
/// value only against other plain values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawTagged")]
pub struct TaggedReal {
    value: f64,
    exactness: Exactness,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTagged {
    value: f64,
    exactness: Exactness,
}

impl TryFrom<RawTagged> for TaggedReal {
    type Error = String;

    fn try_from(raw: RawTagged) -> std::result::Result<Self, String> {
        match raw.exactness {
            Exactness::Rational { num, den } => {
                let den = i64::try_from(den).map_err(|e| e.to_string())?;
                let r = Self::rational(num, den).map_err(|e| e.to_string())?;
                if r.fraction() != Some((num, den as u64)) || r.value != raw.value {
                    return Err(format!("{num}/{den} is not reduced or does not match value {}", raw.value));
                }
                Ok(r)
            }
            exactness => Ok(Self {
                value: raw.value,
                exactness,
            }),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TaggedReal {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parameter {
                name: "den",
                value: 0.0,
            });
        }
        let sign = if (num < 0) != (den < 0) && num != 0 { -1 } else { 1 };
        let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd(n, d).max(1);
        let (n, d) = (n / g, d / g);
        let num = sign * n as i64;
        Ok(Self {
            value: num as f64 / d as f64,
            exactness: Exactness::Rational { num, den: d },
        })
    }

    pub fn integer(k: i64) -> Self {
        Self {
            value: k as f64,
            exactness: Exactness::Rational { num: k, den: 1 },
        }
    }

    pub fn irrational(label: impl Into<String>, value: f64) -> Self {
        Self {
            value,
            exactness: Exactness::Irrational { label: label.into() },
        }
    }

    pub fn plain(value: f64) -> Self {
        Self {
            value,
            exactness: Exactness::Plain,
        }
    }

    pub fn sqrt2() -> Self {
        Self::irrational("sqrt(2)", std::f64::consts::SQRT_2)
    }

    pub fn pi() -> Self {
        Self::irrational("pi", std::f64::consts::PI)
    }

    /// `count` distinct irrational samples: `√k` for non-square `k ≥ 2`.
    pub fn irrational_samples(count: usize) -> Vec<Self> {
        (2u64..)
            .filter(|k| {
                let r = (*k as f64).sqrt().round() as u64;
                r * r != *k
            })
            .take(count)
            .map(|k| Self::irrational(format!("sqrt({k})"), (k as f64).sqrt()))
            .collect()
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exactness(&self) -> &Exactness {
        &self.exactness
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.exactness, Exactness::Rational { .. })
    }

    /// `(num, den)` for rational tags.
    pub fn fraction(&self) -> Option<(i64, u64)> {
        match self.exactness {
            Exactness::Rational { num, den } => Some((num, den)),
            _ => None,
        }
    }

    /// Exact point identity; see the type docs.
    pub fn same_point(&self, other: &Self) -> bool {
        match (&self.exactness, &other.exactness) {
            (Exactness::Rational { num: a, den: b }, Exactness::Rational { num: c, den: d }) => {
                a == c && b == d
            }
            (Exactness::Irrational { label: a }, Exactness::Irrational { label: b }) => a == b,
            (Exactness::Plain, Exactness::Plain) => self.value == other.value,
            _ => false,
        }
    }
}

impl RealValued for TaggedReal {
    fn real(&self) -> f64 {
        self.value
    }
}

impl fmt::Display for TaggedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exactness {
            Exactness::Rational { num, den: 1 } => write!(f, "{num}"),
            Exactness::Rational { num, den } => write!(f, "{num}/{den}"),
            Exactness::Irrational { label } => f.write_str(label),
            Exactness::Plain => write!(f, "{}", self.value),
        }
    }
}

fn totient(mut s: u64) -> u64 {
    let mut out = s;
    let mut p = 2;
    while p * p <= s {
        if s.is_multiple_of(p) {
            while s.is_multiple_of(p) {
                s /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if s > 1 {
        out -= out / s;
    }
    out
}

/// The `n`-th rational `r_n` (1-based).
///
/// `r_1 = 0`; then for `s = 2, 3, …` and `p = 1..s−1` with
/// `gcd(p, s − p) = 1`, emits `p/(s−p)` followed by `−p/(s−p)`.
pub fn rational_enumeration(n: usize) -> Result<TaggedReal> {
    if n == 0 {
        return Err(Error::Parameter {
            name: "n",
            value: 0.0,
        });
    }
    let mut rest = (n - 1) as u64;
    if rest == 0 {
        return Ok(TaggedReal::integer(0));
    }
    rest -= 1;
    let mut s = 2u64;
    loop {
        let block = 2 * totient(s);
        if rest < block {
            break;
        }
        rest -= block;
        s += 1;
    }
    let (rank, negative) = (rest / 2, rest % 2 == 1);
    let p = (1..s)
        .filter(|p| gcd(*p, s) == 1)
        .nth(rank as usize)
        .expect("rank below totient");
    let num = if negative { -(p as i64) } else { p as i64 };
    TaggedReal::rational(num, (s - p) as i64)
}

/// The first `n` rationals `r_1, …, r_n`.
pub fn rationals(n: usize) -> Vec<TaggedReal> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(TaggedReal::integer(0));
    let mut s = 2u64;
    while out.len() < n {
        for p in (1..s).filter(|p| gcd(*p, s) == 1) {
            for sign in [1i64, -1] {
                if out.len() < n {
                    let r = TaggedReal::rational(sign * p as i64, (s - p) as i64).expect("q ≥ 1");
                    out.push(r);
                }
            }
        }
        s += 1;
    }
    out
}

/// The index `k` with `r_k = y`, for rational tags.
pub fn rational_index(y: &TaggedReal) -> Option<usize> {
    let (num, den) = y.fraction()?;
    if num == 0 {
        return Some(1);
    }
    let p = num.unsigned_abs();
    let s = p + den;
    let before: u64 = (2..s).map(|t| 2 * totient(t)).sum();
    let rank = (1..p).filter(|q| gcd(*q, s) == 1).count() as u64;
    let offset = 2 * rank + u64::from(num < 0);
    Some((2 + before + offset) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn first_terms() {
        let got: Vec<String> = rationals(9).iter().map(|r| r.to_string()).collect();
        assert_eq!(got, ["0", "1", "-1", "1/2", "-1/2", "2", "-2", "1/3", "-1/3"]);
    }

    #[test]
    fn injective_and_indexed() {
        let list = rationals(10_000);
        let distinct: HashSet<_> = list.iter().map(|r| r.fraction().unwrap()).collect();
        assert_eq!(distinct.len(), 10_000);
        for (i, r) in list.iter().enumerate().step_by(97) {
            assert_eq!(rational_enumeration(i + 1).unwrap(), *r);
            assert_eq!(rational_index(r), Some(i + 1));
        }
    }

    #[test]
    fn rational_tag_is_exact() {
        for r in rationals(2_000) {
            let (p, q) = r.fraction().unwrap();
            assert_eq!(r.value(), p as f64 / q as f64);
            assert_eq!(gcd(p.unsigned_abs(), q), 1);
        }
    }

    #[test]
    fn reduction_and_identity() {
        let a = TaggedReal::rational(-6, -4).unwrap();
        assert_eq!(a.fraction(), Some((3, 2)));
        assert!(a.same_point(&TaggedReal::rational(3, 2).unwrap()));
        assert!(!a.same_point(&TaggedReal::plain(1.5)));
        assert!(TaggedReal::plain(1.5).same_point(&TaggedReal::plain(1.5)));
        assert!(!TaggedReal::sqrt2().same_point(&TaggedReal::pi()));
        assert_eq!(TaggedReal::rational(0, -5).unwrap().fraction(), Some((0, 1)));
    }

    #[test]
    fn deserialization_checks_rational_tags() {
        let ok: TaggedReal =
            serde_json::from_str(r#"{"value": -0.5, "exactness": {"tag": "rational", "num": -1, "den": 2}}"#).unwrap();
        assert_eq!(ok, TaggedReal::rational(-1, 2).unwrap());
        for bad in [
            r#"{"value": 0.5, "exactness": {"tag": "rational", "num": 2, "den": 4}}"#,
            r#"{"value": 0.4, "exactness": {"tag": "rational", "num": 1, "den": 2}}"#,
            r#"{"value": 0.0, "exactness": {"tag": "rational", "num": 0, "den": 0}}"#,
        ] {
            assert!(serde_json::from_str::<TaggedReal>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn irrational_samples_skip_squares() {
        let s = TaggedReal::irrational_samples(5);
        let labels: Vec<String> = s.iter().map(|r| r.to_string()).collect();
        assert_eq!(labels, ["sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(6)", "sqrt(7)"]);
    }
}
