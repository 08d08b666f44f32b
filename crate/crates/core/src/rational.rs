//! Exact rational helpers: parsing, the `"p/q"` wire form, rounding and
//! square-root bounds.

use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Binary digits of precision used when a square root has to be bounded.
const SQRT_BITS: u32 = 48;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `base^exp` for a non-negative exponent.
pub fn qpow(base: &Q, exp: u64) -> Q {
    let mut acc = Q::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// `2^(2^n)` as an exact integer.
pub fn two_pow_two_pow(n: u32) -> BigInt {
    BigInt::one() << (1usize << n)
}

/// Formats as `numerator/denominator`; integers keep the `/1`.
pub fn fmt_q(value: &Q) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let value = match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Q::new(n, d)
        }
        None => Q::from_integer(BigInt::from_str(t).map_err(|_| bad())?),
    };
    Ok(value)
}

/// Parses a comma separated list such as `1,1/4,1/16`.
pub fn parse_q_list(text: &str) -> Result<Vec<Q>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_q)
        .collect()
}

pub fn floor_int(value: &Q) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil_int(value: &Q) -> BigInt {
    value.ceil().to_integer()
}

/// Saturating conversion used for integer thresholds.
pub fn clamp_i128(value: &BigInt) -> i128 {
    value.to_i128().unwrap_or(match value.sign() {
        Sign::Minus => i128::MIN,
        _ => i128::MAX,
    })
}

/// Largest integer `s` with `s^2 <= n`, for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Exact square root when `value` is the square of a rational.
pub fn sqrt_exact(value: &Q) -> Option<Q> {
    if value.is_negative() {
        return None;
    }
    let (n, d) = (value.numer(), value.denom());
    let (sn, sd) = (isqrt(n), isqrt(d));
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Q::new(sn, sd))
}

/// Rational `u` with `u >= sqrt(value)`; exact when the root is rational.
pub fn sqrt_upper(value: &Q) -> Q {
    if let Some(r) = sqrt_exact(value) {
        return r;
    }
    let scale = BigInt::one() << (2 * SQRT_BITS as usize);
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = value.numer() * value.denom() * &scale;
    let root = isqrt(&nd) + 1;
    Q::new(root, value.denom() * (BigInt::one() << SQRT_BITS as usize))
}

/// Rational `l` with `0 <= l <= sqrt(value)`; exact when the root is rational.
pub fn sqrt_lower(value: &Q) -> Q {
    if let Some(r) = sqrt_exact(value) {
        return r;
    }
    let scale = BigInt::one() << (2 * SQRT_BITS as usize);
    let nd = value.numer() * value.denom() * &scale;
    Q::new(
        isqrt(&nd),
        value.denom() * (BigInt::one() << SQRT_BITS as usize),
    )
}

pub fn to_f64(value: &Q) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Rational that travels as a `"p/q"` string in JSON.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Q);

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map(Rat).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for a single rational as a `"p/q"` string.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(values: &[Q], s: S) -> Result<S::Ok, S::Error> {
        values.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_q(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
