//! Outward-rounded interval arithmetic on fixed-point binary numbers.
//!
//! An [`Interval`] holds two integers `lo` and `hi` and denotes the closed set
//! `[lo / 2^WORK_BITS, hi / 2^WORK_BITS]`. Every operation rounds `lo` toward
//! `-inf` and `hi` toward `+inf`, so the true result of the real operation on
//! any points of the operands always lies in the returned interval.
//! Transcendental functions add an explicit bound on the truncated series tail.

use alloc::string::String;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Fractional bits carried by every interval endpoint.
pub const WORK_BITS: u32 = 256;

/// Argument halvings before the exponential Taylor series.
const EXP_HALVINGS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("logarithm of an interval that is not strictly positive")]
    NonPositiveLog,
    #[error("square root of an interval with a negative lower end")]
    NegativeSqrt,
    #[error("division by an interval containing zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
}

fn unit() -> BigInt {
    BigInt::one() << WORK_BITS
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shr_floor(a: &BigInt, k: u32) -> BigInt {
    div_floor(a, &(BigInt::one() << k))
}

fn shr_ceil(a: &BigInt, k: u32) -> BigInt {
    div_ceil(a, &(BigInt::one() << k))
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

/// Renders `m / 2^WORK_BITS` with exactly `digits` decimals, rounded up or down.
pub(crate) fn mantissa_to_decimal(m: &BigInt, digits: u32, round_up: bool) -> String {
    let scaled = m * num_traits::pow(BigInt::from(10), digits as usize);
    let q = if round_up {
        shr_ceil(&scaled, WORK_BITS)
    } else {
        shr_floor(&scaled, WORK_BITS)
    };
    let negative = q.is_negative();
    let mut text = q.abs().to_str_radix(10);
    let digits = digits as usize;
    if text.len() <= digits {
        let mut padded = String::new();
        for _ in 0..(digits + 1 - text.len()) {
            padded.push('0');
        }
        padded.push_str(&text);
        text = padded;
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    let (w, f) = text.split_at(text.len() - digits);
    out.push_str(w);
    if digits > 0 {
        out.push('.');
        out.push_str(f);
    }
    out
}

pub(crate) fn mantissa_to_rational(m: &BigInt) -> Rational {
    Rational::new(m.clone(), unit())
}

pub(crate) fn mantissa_to_f64(m: &BigInt) -> f64 {
    mantissa_to_rational(m).to_f64().unwrap_or(f64::NAN)
}

impl Interval {
    pub fn zero() -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero() }
    }

    pub fn one() -> Self {
        Interval { lo: unit(), hi: unit() }
    }

    pub fn from_integer(n: i64) -> Self {
        let m = BigInt::from(n) << WORK_BITS;
        Interval { lo: m.clone(), hi: m }
    }

    /// Tightest enclosure of `q` on the working grid.
    pub fn from_rational(q: &Rational) -> Self {
        let scaled = q.numer() << WORK_BITS;
        Interval {
            lo: div_floor(&scaled, q.denom()),
            hi: div_ceil(&scaled, q.denom()),
        }
    }

    /// Hull of two rationals, in either order.
    pub fn from_bounds(a: &Rational, b: &Rational) -> Self {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Interval {
            lo: Self::from_rational(lo).lo,
            hi: Self::from_rational(hi).hi,
        }
    }


    pub fn lo_mantissa(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_mantissa(&self) -> &BigInt {
        &self.hi
    }

    pub fn lo_rational(&self) -> Rational {
        mantissa_to_rational(&self.lo)
    }

    pub fn hi_rational(&self) -> Rational {
        mantissa_to_rational(&self.hi)
    }

    pub fn lo_f64(&self) -> f64 {
        mantissa_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        mantissa_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        mantissa_to_f64(&((&self.lo + &self.hi) >> 1))
    }

    pub fn width(&self) -> Rational {
        mantissa_to_rational(&(&self.hi - &self.lo))
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo_rational() <= *q && *q <= self.hi_rational()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Lower end rendered with `digits` decimals, rounded toward `-inf`.
    pub fn lower_decimal(&self, digits: u32) -> String {
        mantissa_to_decimal(&self.lo, digits, false)
    }

    /// Upper end rendered with `digits` decimals, rounded toward `+inf`.
    pub fn upper_decimal(&self, digits: u32) -> String {
        mantissa_to_decimal(&self.hi, digits, true)
    }

    /// Midpoint rendered with `digits` decimals (rounded down).
    pub fn mid_decimal(&self, digits: u32) -> String {
        mantissa_to_decimal(&((&self.lo + &self.hi) >> 1), digits, false)
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    /// Certainly-less comparison: `Some(Less)` when every point of `self` is
    /// below every point of `other`, `None` when they overlap.
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Interval { lo: shr_floor(min, WORK_BITS), hi: shr_ceil(max, WORK_BITS) }
    }

    pub fn square(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = (&self.lo).abs().max(self.hi.clone());
            Interval { lo: BigInt::zero(), hi: shr_ceil(&(&m * &m), WORK_BITS) }
        } else {
            self.mul(self)
        }
    }

    pub fn div(&self, other: &Interval) -> Result<Interval, IntervalError> {
        if !other.lo.is_positive() && !other.hi.is_negative() {
            return Err(IntervalError::DivisionByZero);
        }
        let a = [&self.lo << WORK_BITS, &self.hi << WORK_BITS];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &a {
            for d in [&other.lo, &other.hi] {
                // Normalise to a positive divisor so floor/ceil keep their meaning.
                let (n, d) = if d.is_negative() { (-n, -d) } else { (n.clone(), d.clone()) };
                let f = div_floor(&n, &d);
                let c = div_ceil(&n, &d);
                lo = Some(match lo {
                    Some(v) if v <= f => v,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(v) if v >= c => v,
                    _ => c,
                });
            }
        }
        Ok(Interval { lo: lo.expect("nonempty"), hi: hi.expect("nonempty") })
    }

    /// Multiplies by an exact rational.
    pub fn scale(&self, q: &Rational) -> Interval {
        let a = &self.lo * q.numer();
        let b = &self.hi * q.numer();
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Interval { lo: div_floor(&a, q.denom()), hi: div_ceil(&b, q.denom()) }
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k >= 0 {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn div_int(&self, k: u64) -> Interval {
        let d = BigInt::from(k);
        Interval { lo: div_floor(&self.lo, &d), hi: div_ceil(&self.hi, &d) }
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Interval {
        if k >= 0 {
            Interval { lo: &self.lo << k as u32, hi: &self.hi << k as u32 }
        } else {
            let k = (-k) as u32;
            Interval { lo: shr_floor(&self.lo, k), hi: shr_ceil(&self.hi, k) }
        }
    }

    pub fn sqrt(&self) -> Result<Interval, IntervalError> {
        if self.lo.is_negative() {
            return Err(IntervalError::NegativeSqrt);
        }
        Ok(Interval {
            lo: (&self.lo << WORK_BITS).sqrt(),
            hi: isqrt_ceil(&(&self.hi << WORK_BITS)),
        })
    }

    /// Enclosure of `sqrt(q)` for an exact non-negative rational.
    pub fn sqrt_rational(q: &Rational) -> Result<Interval, IntervalError> {
        if q.is_negative() {
            return Err(IntervalError::NegativeSqrt);
        }
        let scaled = q.numer() << (2 * WORK_BITS);
        let lo = div_floor(&scaled, q.denom()).sqrt();
        let hi = isqrt_ceil(&div_ceil(&scaled, q.denom()));
        Ok(Interval { lo, hi })
    }

    /// Enclosure of `ln 2`.
    pub fn ln2() -> Interval {
        atanh_series(&Rational::new(BigInt::one(), BigInt::from(3))).mul_int(2)
    }

    /// Enclosure of `ln q` for an exact positive rational.
    pub fn ln_rational(q: &Rational) -> Result<Interval, IntervalError> {
        if !q.is_positive() {
            return Err(IntervalError::NonPositiveLog);
        }
        // q = 2^e * w with 1 <= w < 2
        let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
        let mut w = pow2_scale(q, -e);
        let two = Rational::from_integer(BigInt::from(2));
        if w < Rational::one() {
            e -= 1;
            w *= &two;
        } else if w >= two {
            e += 1;
            w /= &two;
        }
        let z = (&w - Rational::one()) / (&w + Rational::one());
        let mut out = atanh_series(&z).mul_int(2);
        if e != 0 {
            out = out.add(&Self::ln2().mul_int(e));
        }
        Ok(out)
    }

    pub fn ln(&self) -> Result<Interval, IntervalError> {
        if !self.lo.is_positive() {
            return Err(IntervalError::NonPositiveLog);
        }
        let lo = Self::ln_rational(&self.lo_rational())?;
        if self.is_point() {
            return Ok(lo);
        }
        let hi = Self::ln_rational(&self.hi_rational())?;
        Ok(Interval { lo: lo.lo, hi: hi.hi })
    }

    pub fn exp(&self) -> Interval {
        let lo = exp_point(&self.lo);
        if self.is_point() {
            return lo;
        }
        let hi = exp_point(&self.hi);
        Interval { lo: lo.lo, hi: hi.hi }
    }

    /// `self^exponent` for a strictly positive base.
    pub fn powf(&self, exponent: &Interval) -> Result<Interval, IntervalError> {
        Ok(exponent.mul(&self.ln()?).exp())
    }
}

fn pow2_scale(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        q * Rational::from_integer(BigInt::one() << k as u32)
    } else {
        q / Rational::from_integer(BigInt::one() << (-k) as u32)
    }
}

/// `atanh z = z + z^3/3 + z^5/5 + ...` for `0 <= z <= 1/3`.
fn atanh_series(z: &Rational) -> Interval {
    debug_assert!(!z.is_negative() && *z <= Rational::new(BigInt::one(), BigInt::from(3)));
    if z.is_zero() {
        return Interval::zero();
    }
    let zi = Interval::from_rational(z);
    let z2 = zi.square();
    let mut power = zi;
    let mut sum = Interval::zero();
    let mut j: u64 = 0;
    loop {
        sum = sum.add(&power.div_int(2 * j + 1));
        power = power.mul(&z2);
        j += 1;
        if power.hi <= BigInt::one() {
            break;
        }
    }
    // Remaining terms are at most power * (1 + z^2 + z^4 + ...) <= power * 9/8.
    let tail = div_ceil(&(&power.hi * 9), &BigInt::from(8)) + 1;
    Interval { lo: sum.lo, hi: sum.hi + tail }
}

/// Enclosure of `exp(m / 2^WORK_BITS)`.
fn exp_point(m: &BigInt) -> Interval {
    if m.is_zero() {
        return Interval::one();
    }
    let ln2 = Interval::ln2();
    // k = round(x / ln 2)
    let k = div_floor(&(m * 2 + &ln2.lo), &(&ln2.lo * 2));
    let k = k.to_i64().expect("exponent argument out of range");
    let x = Interval { lo: m.clone(), hi: m.clone() };
    let r = if k == 0 { x } else { x.sub(&ln2.mul_int(k)) }.mul_pow2(-(EXP_HALVINGS as i64));
    // |r| <= ln2 / 2^(EXP_HALVINGS+1) < 1/2
    let mut sum = Interval::one();
    let mut term = Interval::one();
    let mut j: u64 = 1;
    loop {
        term = term.mul(&r).div_int(j);
        sum = sum.add(&term);
        j += 1;
        let magnitude = (&term.lo).abs().max((&term.hi).abs());
        if magnitude <= BigInt::one() {
            // Remaining terms sum to at most |term| * |r| / (j - |r|) < |term|.
            let bound = magnitude + 1;
            sum = Interval { lo: sum.lo - &bound, hi: sum.hi + bound };
            break;
        }
    }
    for _ in 0..EXP_HALVINGS {
        sum = sum.mul(&sum);
    }
    sum.mul_pow2(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn tight(i: &Interval, bits: u32) -> bool {
        i.width() < Rational::new(BigInt::one(), BigInt::one() << bits)
    }

    #[test]
    fn bigint_shift_rounds_toward_negative_infinity() {
        assert_eq!(shr_floor(&BigInt::from(-3), 1), BigInt::from(-2));
        assert_eq!(shr_ceil(&BigInt::from(-3), 1), BigInt::from(-1));
        assert_eq!(shr_ceil(&BigInt::from(3), 1), BigInt::from(2));
    }

    #[test]
    fn rational_enclosures_contain_the_value() {
        for q in [rat(1, 3), rat(-2, 7), rat(145, 338), int(5)] {
            let i = Interval::from_rational(&q);
            assert!(i.contains(&q));
            assert!(tight(&i, 250));
        }
        assert!(Interval::from_integer(3).is_point());
    }

    #[test]
    fn ln2_matches_known_digits() {
        let ln2 = Interval::ln2();
        assert!(tight(&ln2, 240));
        assert_eq!(
            ln2.lower_decimal(40),
            "0.6931471805599453094172321214581765680755"
        );
    }

    #[test]
    fn exp_and_ln_are_mutually_inverse() {
        for q in [rat(1, 2), rat(3, 1), rat(1, 1000), rat(6561, 7), rat(5, 4)] {
            let l = Interval::ln_rational(&q).unwrap();
            let back = l.exp();
            assert!(back.contains(&q), "exp(ln {q}) lost the value");
            assert!(tight(&back, 200));
        }
    }

    #[test]
    fn exp_of_one_is_e() {
        let e = Interval::one().exp();
        assert_eq!(e.lower_decimal(30), "2.718281828459045235360287471352");
        let inv = Interval::from_integer(-1).exp();
        assert_eq!(inv.lower_decimal(30), "0.367879441171442321595523770161");
    }

    #[test]
    fn ln_of_one_and_exp_of_zero_are_exact() {
        assert_eq!(Interval::ln_rational(&int(1)).unwrap(), Interval::zero());
        assert_eq!(Interval::zero().exp(), Interval::one());
    }

    #[test]
    fn sqrt_enclosures() {
        let r = Interval::sqrt_rational(&int(2)).unwrap();
        assert_eq!(r.lower_decimal(30), "1.414213562373095048801688724209");
        assert!(tight(&r, 250));
        let sq = r.square();
        assert!(sq.contains(&int(2)));
        let via = Interval::from_integer(2).sqrt().unwrap();
        assert!(via.contains(&r.lo_rational()) || r.contains(&via.lo_rational()));
        assert!(Interval::from_integer(-1).sqrt().is_err());
    }

    #[test]
    fn division_and_mixed_sign_products() {
        let a = Interval::from_bounds(&int(-2), &int(3));
        let b = Interval::from_bounds(&int(4), &int(5));
        let p = a.mul(&b);
        assert_eq!(p.lo_rational(), int(-10));
        assert_eq!(p.hi_rational(), int(15));
        let q = a.div(&b).unwrap();
        assert_eq!(q.lo_rational(), rat(-1, 2));
        assert_eq!(q.hi_rational(), rat(3, 4));
        assert!(b.div(&a).is_err());
        assert_eq!(a.square().lo_rational(), int(0));
        assert_eq!(a.square().hi_rational(), int(9));
    }

    #[test]
    fn decimal_rendering_directions() {
        let third = Interval::from_rational(&rat(1, 3));
        assert_eq!(third.lower_decimal(6), "0.333333");
        assert_eq!(third.upper_decimal(6), "0.333334");
        let neg = Interval::from_rational(&rat(-1, 3));
        assert_eq!(neg.lower_decimal(3), "-0.334");
        assert_eq!(neg.upper_decimal(3), "-0.333");
        assert_eq!(Interval::from_integer(7).upper_decimal(0), "7");
    }

    #[test]
    fn powf_matches_integer_powers() {
        let base = Interval::from_integer(3);
        let p = base.powf(&Interval::from_integer(4)).unwrap();
        assert!(p.contains(&int(81)));
        let p = base.powf(&Interval::from_integer(-2)).unwrap();
        assert!(p.contains(&rat(1, 9)));
    }
}
