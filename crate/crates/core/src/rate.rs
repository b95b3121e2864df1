//! Serde helpers accepting rates either as decimals (`0.04`) or percent
//! strings (`"4%"`). Values are always serialized back as plain decimals.

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use std::fmt;

/// Parses `"4%"`, `"4 %"`, `"0.04"` into a decimal rate.
pub fn parse_rate(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let text = match t.strip_suffix('%') {
        Some(b) if !b.trim().is_empty() && !b.contains(['e', 'E']) => format!("{}e-2", b.trim()),
        Some(_) => return Err(format!("cannot parse rate '{s}'")),
        None => t.to_string(),
    };
    let v: f64 = text
        .parse()
        .map_err(|_| format!("cannot parse rate '{s}'"))?;
    if !v.is_finite() {
        return Err(format!("rate '{s}' is not finite"));
    }
    Ok(v)
}

struct RateVisitor;

impl<'de> Visitor<'de> for RateVisitor {
    type Value = f64;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a decimal rate or a percent string such as \"4%\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
        Ok(v)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
        parse_rate(v).map_err(E::custom)
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    d.deserialize_any(RateVisitor)
}

pub fn deserialize_opt<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
    #[derive(Deserialize)]
    struct Wrap(#[serde(deserialize_with = "deserialize")] f64);
    Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
}

pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
    #[derive(Deserialize)]
    struct Wrap(#[serde(deserialize_with = "deserialize")] f64);
    Ok(Vec::<Wrap>::deserialize(d)?
        .into_iter()
        .map(|w| w.0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_strings() {
        assert_eq!(parse_rate("4%").unwrap(), 0.04);
        assert_eq!(parse_rate(" 1.5 %").unwrap(), 0.015);
        assert_eq!(parse_rate("0.03").unwrap(), 0.03);
        assert!(parse_rate("four").is_err());
        assert!(parse_rate("inf%").is_err());
    }
}
