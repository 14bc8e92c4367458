//! Exact rationals and their textual form.
//!
//! Rationals render as `p/q` in lowest terms, or as a bare integer when the
//! denominator is one. Parsing accepts that form plus finite decimals such as
//! `-0.25`, so every rendered value parses back to the identical rational.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p / q`; panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn format_rational(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p).ok_or_else(bad)?;
        let q = parse_int(q).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) || whole.len() - digits.len() > 1 {
            return Err(bad());
        }
        let int_part = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(digits).map_err(|_| bad())?
        };
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = Rat::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    parse_int(s).map(Rat::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// The integral part `[r]`: floor for nonnegative values, ceiling otherwise.
pub fn integral_part(x: &Rat) -> Rat {
    if x.is_negative() {
        x.ceil()
    } else {
        x.floor()
    }
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}
