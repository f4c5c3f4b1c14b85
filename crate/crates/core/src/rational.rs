//! "p/q" string encoding of exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serializer;

use crate::error::{Error, Result};

/// Integers print without a denominator: "8", "-1/3".
pub fn to_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(q))
}
