//! Exact rational values and their `"num/den"` string form.
//!
//! Every quantity in this crate is a [`Rational`]; floating point never
//! enters the pipeline. On the wire a rational is always a string such as
//! `"1/6"` or `"-1/6"`. Bare integers (`"3"`) are accepted on input and
//! written back as `"3/1"`. Decimal notation is rejected.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

/// Arbitrary precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Default limit on the decimal digits (numerator plus denominator) of a
/// single value produced while computing preimages and Bowen balls.
pub const DEFAULT_DIGIT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("`{0}` is not of the form num/den (decimal notation is not accepted)")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
    #[error("`{0}` has a negative denominator; put the sign on the numerator")]
    NegativeDenominator(String),
}

/// Raised when a value outgrows the digit guard.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rational value has about {digits} digits, over the limit of {limit}")]
pub struct DigitLimitExceeded {
    pub digits: u64,
    pub limit: u64,
}

/// Shorthand for `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

fn parse_int(text: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_owned()));
    }
    BigInt::from_str(text).map_err(|_| ParseRationalError::Malformed(whole.to_owned()))
}

/// Parses `"num/den"` (or a bare integer) exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text, text)?)),
        Some((num, den)) => {
            let num = parse_int(num.trim(), text)?;
            let den_text = den.trim();
            if den_text.starts_with('-') {
                return Err(ParseRationalError::NegativeDenominator(text.to_owned()));
            }
            let den = parse_int(den_text, text)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_owned()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical `"num/den"` form; integers keep their `/1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Display adapter that always prints `num/den`.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Rough decimal digit count of numerator plus denominator.
pub fn digit_count(value: &Rational) -> u64 {
    // log10(2) ~ 0.30103
    let bits = value.numer().bits() + value.denom().bits();
    bits * 30103 / 100000 + 1
}

pub fn check_digits(value: &Rational, limit: u64) -> Result<(), DigitLimitExceeded> {
    let digits = digit_count(value);
    if digits > limit {
        Err(DigitLimitExceeded { digits, limit })
    } else {
        Ok(())
    }
}

/// `x mod 1` in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Serde adapter for a `Rational` stored as `"num/den"`.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`, `null` when absent.
pub mod serde_opt_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(de::Error::custom))
            .transpose()
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_str_vec {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(de::Error::custom))
            .collect()
    }
}
