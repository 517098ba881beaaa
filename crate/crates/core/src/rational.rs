//! Exact rationals and their loss-free text form.
//!
//! Every rational crossing a text boundary is written as `numerator/denominator`,
//! including integers (`3/1`), so consumers never have to guess the format.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn to_text(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `n/d` or a bare integer `n`.
pub fn from_text(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

pub fn is_even_integer(q: &Rational) -> bool {
    q.is_integer() && q.numer().is_even()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Serde adapter writing rationals as `n/d` strings.
pub mod serde_text {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        from_text(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_text`] for optional values.
pub mod serde_text_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        q: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&to_text(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| from_text(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
