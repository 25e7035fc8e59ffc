//! Exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`: arbitrary-precision numerator
//! and a positive denominator, reduced after every operation.

use alloc::string::String;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational text")]
    Empty,
    #[error("malformed rational `{0}`: expected `p`, `p/q` or a decimal like `1.25`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// `num / den` as a reduced rational. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow_int(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn pow_uint(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Parses `p`, `p/q` (optionally signed), or a plain decimal such as
/// `-1.32133`. Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if t.contains('.') {
        return parse_decimal(t);
    }
    let malformed = || ParseRationalError::Malformed(String::from(t));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if !is_signed_digits(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return Err(malformed());
    }
    let num = BigInt::from_str(num).map_err(|_| malformed())?;
    let den = BigInt::from_str(den).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(String::from(t)));
    }
    Ok(Rational::new(num, den))
}

fn is_signed_digits(s: &str) -> bool {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn parse_decimal(t: &str) -> Result<Rational, ParseRationalError> {
    let malformed = || ParseRationalError::Malformed(String::from(t));
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').ok_or_else(malformed)?;
    if whole.is_empty() && frac.is_empty() {
        return Err(malformed());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let mantissa = BigInt::from_str(&digits).map_err(|_| malformed())?;
    let mut value = Rational::new(mantissa, pow_int(10, frac.len() as u32));
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact `p/q` text (just `p` for integers).
pub fn exact_text(q: &Rational) -> String {
    let mut out = String::new();
    if q.denom().is_one() {
        let _ = write!(out, "{}", q.numer());
    } else {
        let _ = write!(out, "{}/{}", q.numer(), q.denom());
    }
    out
}

/// Decimal rendering with `digits` significant digits, rounded to nearest
/// (ties away from zero). Trailing zeros after the point are dropped.
pub fn significant_text(q: &Rational, digits: u32) -> String {
    if q.is_zero() {
        return String::from("0");
    }
    let digits = digits.max(1);
    let negative = q.is_negative();
    let a = q.abs();
    // Find e with 10^e <= a < 10^(e+1).
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    loop {
        let p = pow10_rational(e);
        if p > a {
            e -= 1;
        } else if pow10_rational(e + 1) <= a {
            e += 1;
        } else {
            break;
        }
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10_rational(shift);
    let mut m = round_half_away(&scaled);
    let mut shift = shift;
    if m >= pow_int(10, digits) {
        m /= BigInt::from(10);
        shift -= 1;
    }
    let text = m.to_str_radix(10);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(&text);
        for _ in 0..(-shift) {
            out.push('0');
        }
        return out;
    }
    let shift = shift as usize;
    if text.len() > shift {
        let (w, f) = text.split_at(text.len() - shift);
        out.push_str(w);
        let f = f.trim_end_matches('0');
        if !f.is_empty() {
            out.push('.');
            out.push_str(f);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(shift - text.len()) {
            out.push('0');
        }
        out.push_str(text.trim_end_matches('0'));
    }
    out
}

fn pow10_rational(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(pow_int(10, e as u32))
    } else {
        Rational::new(BigInt::one(), pow_int(10, (-e) as u32))
    }
}

fn round_half_away(q: &Rational) -> BigInt {
    let (quot, rem) = q.numer().div_mod_floor(q.denom());
    if rem * BigInt::from(2) >= *q.denom() {
        quot + BigInt::one()
    } else {
        quot
    }
}
