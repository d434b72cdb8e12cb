//! Exact rational scalars and their textual form.
//!
//! Every scalar in the crate is a `Ratio<i64>`. Rationals are written as
//! `"p"` or `"p/q"` strings in configuration files and JSON output, so no
//! value ever passes through a float.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Serialize, Serializer};
use std::fmt;

/// The scalar field used throughout.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// `true` when `x` is one of 1, 2, 3, ...
pub fn is_positive_integer(x: &Q) -> bool {
    x.is_integer() && x.is_positive()
}

/// `true` when `x` is one of -1, -2, -3, ...
pub fn is_negative_integer(x: &Q) -> bool {
    x.is_integer() && x.is_negative()
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `"3"`, `"-3/2"`, `" 4 / 6 "`. Anything else (including complex
/// literals such as `"1+2i"` and decimals) is rejected.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| err())?;
    let d: i64 = d.parse().map_err(|_| err())?;
    if d == 0 {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

pub fn serialize_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(x))
}

pub fn serialize_q_vec<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<String> = xs.iter().map(format_q).collect();
    v.serialize(s)
}

pub fn serialize_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&format_q(x)),
        None => s.serialize_none(),
    }
}

struct QVisitor;

impl<'de> Visitor<'de> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a rational string such as \"-3/2\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
        Ok(q(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
        i64::try_from(v).map(q).map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
        parse_q(v).map_err(E::custom)
    }
}

pub fn deserialize_q<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    d.deserialize_any(QVisitor)
}

/// Newtype making `Q` usable inside `Vec`, `Option`, ... with serde.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_q(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_q(d).map(Rat)
    }
}

pub fn rats_to_q(v: &[Rat]) -> Vec<Q> {
    v.iter().map(|r| r.0).collect()
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_q("3").unwrap(), q(3));
        assert_eq!(parse_q("-3/2").unwrap(), qf(-3, 2));
        assert_eq!(parse_q(" 4 / 6 ").unwrap(), qf(2, 3));
    }

    #[test]
    fn parse_rejects_complex_and_decimal() {
        assert!(parse_q("1+2i").is_err());
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn format_round_trips() {
        for s in ["0", "-7", "5/3", "-1/2"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
    }

    #[test]
    fn integer_classes() {
        assert!(is_positive_integer(&q(2)));
        assert!(!is_positive_integer(&qf(1, 2)));
        assert!(is_negative_integer(&q(-1)));
        assert!(!is_negative_integer(&q(0)));
    }
}
