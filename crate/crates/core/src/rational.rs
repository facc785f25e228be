//! Exact rationals and their `"p/q"` string encoding.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Ratio::from_integer(n)
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not an exact rational"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
        None => {
            if s.contains('.') || s.contains('e') || s.contains('E') {
                // decimal and float notations are not accepted
                return Err(bad());
            }
            Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?))
        }
    }
}

pub fn serialize_q_vec<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_q))
}

pub fn deserialize_q_vec<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter()
        .map(|s| parse_q(s).map_err(serde::de::Error::custom))
        .collect()
}

pub fn serialize_q<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(v))
}

pub fn deserialize_q<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    let raw = String::deserialize(d)?;
    parse_q(&raw).map_err(serde::de::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_q(" -3/6 ").unwrap(), q(-1, 2));
        assert_eq!(parse_q("2").unwrap(), qi(2));
        assert!(parse_q("0.25").is_err());
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("pi").is_err());
        assert_eq!(format_q(&q(2, 8)), "1/4");
        assert_eq!(format_q(&qi(-3)), "-3");
    }
}
