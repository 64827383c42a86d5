//! Serde adapters that write big integers and rationals as decimal strings,
//! so JSON consumers never see the limb encoding of `BigInt`.

use super::int::{rat_to_string, Int, Rat};
use serde::ser::{SerializeSeq, Serializer};
use std::collections::BTreeSet;

/// Any `Display` value as a string.
pub fn display<S: Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn int<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn opt_int<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn ints<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn int_set<S: Serializer>(v: &BTreeSet<Int>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn rat<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(v))
}

pub fn rats<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&rat_to_string(x))?;
    }
    seq.end()
}

/// Pairs (coefficient, index) as `["-3", 2]`.
pub fn int_index_pairs<S: Serializer>(v: &[(Int, usize)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (c, j) in v {
        seq.serialize_element(&(c.to_string(), j))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize)]
    struct Probe {
        #[serde(serialize_with = "int")]
        a: Int,
        #[serde(serialize_with = "rats")]
        b: Vec<Rat>,
        #[serde(serialize_with = "opt_int")]
        c: Option<Int>,
    }

    #[test]
    fn writes_strings() {
        let p = Probe {
            a: "123456789012345678901234567890".parse().unwrap(),
            b: vec![Rat::new(Int::from(-3), Int::from(6))],
            c: None,
        };
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"a":"123456789012345678901234567890","b":["-1/2"],"c":null}"#);
    }
}
