//! Decimal-string handling for exact rationals.
//!
//! All JSON interfaces carry rational numbers as strings ("3", "-2/7") so
//! that values survive pipelines without precision loss. Parsing also
//! accepts decimal and scientific notation ("0.25", "1e-4"), which is
//! convenient on the command line for tolerances.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Pow, Signed, Zero};

/// Render a rational as "p" or "p/q" (q > 0, fully reduced).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p", "p/q", "0.25" or "1e-4" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    // [sign] digits [. digits] [e [sign] digits]
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad exponent in {s:?}")))?;
            (m, e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['+', '-']);
    if (int_digits.is_empty() && frac_part.is_empty())
        || !int_digits.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::InvalidArgument(format!("cannot parse rational {s:?}")));
    }
    let digits = format!("{int_digits}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse rational {s:?}")))?
    };
    if negative {
        numer = -numer;
    }
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from(numer * ten.pow(shift as u64))
    } else {
        BigRational::new(numer, ten.pow((-shift) as u64))
    };
    Ok(value)
}

/// Convert to f64 for diagnostics; exact rationals stay authoritative.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    num::traits::ToPrimitive::to_f64(r).unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Serde adapter: rationals as decimal strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
