//! Certified evaluation of `H^s(E) <= |U|^s / fraction`.
//!
//! If a cover set `U` contains `N` of the `4^(n-1)` level-`n` pieces of
//! `C × C`, self-similarity gives `(N / 4^(n-1)) H^s(C × C) <= |U|^s`. All
//! values produced here are upper bounds: powers are evaluated with
//! [`Interval`] enclosures and only the upper end is kept.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::grid::CoverageCount;
use crate::interval::{mantissa_to_decimal, mantissa_to_f64, mantissa_to_rational, Interval};
use crate::interval::{IntervalError, WORK_BITS};
use crate::rational::Rational;

/// Decimals kept when an upper bound is published.
pub const PUBLISHED_DECIMALS: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("contraction ratio must lie strictly between 0 and 1")]
    RatioOutOfRange,
    #[error("branch count must be at least 1")]
    NoBranches,
    #[error("base of a power must be positive")]
    NonPositiveBase,
    #[error("coverage fraction must lie in (0, 1]")]
    FractionOutOfRange,
    #[error("invalid diameter: {0}")]
    InvalidDiameter(&'static str),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// A diameter `|U|`, either exact as `scale·√radicand` or as a certified
/// enclosure `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DiameterValue {
    Exact { scale: Rational, radicand: Rational },
    Interval { lo: Rational, hi: Rational },
}

impl DiameterValue {
    pub fn exact(scale: Rational, radicand: Rational) -> Result<Self, BoundError> {
        if !scale.is_positive() {
            return Err(BoundError::InvalidDiameter("scale must be positive"));
        }
        if radicand.is_negative() {
            return Err(BoundError::InvalidDiameter("radicand must be non-negative"));
        }
        Ok(DiameterValue::Exact { scale, radicand })
    }

    pub fn interval(lo: Rational, hi: Rational) -> Result<Self, BoundError> {
        if !lo.is_positive() {
            return Err(BoundError::InvalidDiameter("interval lower end must be positive"));
        }
        if lo > hi {
            return Err(BoundError::InvalidDiameter("interval ends out of order"));
        }
        Ok(DiameterValue::Interval { lo, hi })
    }

    /// `scale·√radicand` rewritten as `√(scale²·radicand)` when that is handy.
    pub fn squared_upper(&self) -> Rational {
        match self {
            DiameterValue::Exact { scale, radicand } => scale * scale * radicand,
            DiameterValue::Interval { hi, .. } => hi * hi,
        }
    }

    pub fn squared_lower(&self) -> Rational {
        match self {
            DiameterValue::Exact { scale, radicand } => scale * scale * radicand,
            DiameterValue::Interval { lo, .. } => lo * lo,
        }
    }

    pub fn enclosure(&self) -> Result<Interval, BoundError> {
        Ok(match self {
            DiameterValue::Exact { scale, radicand } => {
                Interval::sqrt_rational(radicand)?.scale(scale)
            }
            DiameterValue::Interval { lo, hi } => Interval::from_bounds(lo, hi),
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure().map(|i| i.hi_f64()).unwrap_or(f64::NAN)
    }

    /// The same diameter measured in units `factor` times larger, e.g. a side-9
    /// picture renormalized to side 1 with `factor = 9`.
    pub fn divided_by(&self, factor: &Rational) -> DiameterValue {
        assert!(factor.is_positive(), "normalization factor must be positive");
        match self {
            DiameterValue::Exact { scale, radicand } => DiameterValue::Exact {
                scale: scale / factor,
                radicand: radicand.clone(),
            },
            DiameterValue::Interval { lo, hi } => DiameterValue::Interval {
                lo: lo / factor,
                hi: hi / factor,
            },
        }
    }

    fn ln(&self) -> Result<Interval, BoundError> {
        match self {
            DiameterValue::Exact { scale, radicand } => {
                if !radicand.is_positive() {
                    return Err(BoundError::NonPositiveBase);
                }
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                Ok(Interval::ln_rational(scale)?.add(&Interval::ln_rational(radicand)?.scale(&half)))
            }
            DiameterValue::Interval { lo, hi } => {
                if !lo.is_positive() {
                    return Err(BoundError::NonPositiveBase);
                }
                let l = Interval::ln_rational(lo)?;
                if lo == hi {
                    return Ok(l);
                }
                Ok(l.hull(&Interval::ln_rational(hi)?))
            }
        }
    }
}

/// A real number known through a tight enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HighFloat {
    enclosure: Interval,
}

impl HighFloat {
    pub fn new(enclosure: Interval) -> Self {
        HighFloat { enclosure }
    }

    pub fn from_rational(q: &Rational) -> Self {
        HighFloat { enclosure: Interval::from_rational(q) }
    }

    pub fn enclosure(&self) -> &Interval {
        &self.enclosure
    }

    pub fn fractional_bits(&self) -> u32 {
        WORK_BITS
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure.mid_f64()
    }

    /// Midpoint with `digits` decimals.
    pub fn decimal(&self, digits: u32) -> String {
        self.enclosure.mid_decimal(digits)
    }
}

impl fmt::Display for HighFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal(f.precision().unwrap_or(30) as u32))
    }
}

/// A value on the `2^-WORK_BITS` grid that is at least the quantity it bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundValue {
    mantissa: BigInt,
}

impl BoundValue {
    pub(crate) fn from_mantissa(mantissa: BigInt) -> Self {
        BoundValue { mantissa }
    }

    pub fn as_rational(&self) -> Rational {
        mantissa_to_rational(&self.mantissa)
    }

    /// Nearest `f64`; may round below the bound, so for display and
    /// tolerance checks only.
    pub fn to_f64(&self) -> f64 {
        mantissa_to_f64(&self.mantissa)
    }

    /// Rendered with `digits` decimals, rounded toward `+inf`.
    pub fn decimal_up(&self, digits: u32) -> String {
        mantissa_to_decimal(&self.mantissa, digits, true)
    }

    pub fn published(&self) -> String {
        self.decimal_up(PUBLISHED_DECIMALS)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal_up(f.precision().unwrap_or(PUBLISHED_DECIMALS as usize) as u32))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Fraction taken from an exact certified coverage count.
    Certified { coverage: CoverageCount },
    /// Fraction and diameter copied from a published fixture.
    Fixture { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpperBound {
    pub value: BoundValue,
    pub provenance: Provenance,
}

impl UpperBound {
    pub fn certified(value: BoundValue, coverage: CoverageCount) -> Self {
        UpperBound { value, provenance: Provenance::Certified { coverage } }
    }

    pub fn fixture(value: BoundValue, name: impl Into<String>) -> Self {
        UpperBound { value, provenance: Provenance::Fixture { name: name.into() } }
    }
}

/// Similarity dimension `s` solving `branch_count · ratio^s = 1`.
pub fn hausdorff_dimension(branch_count: u64, ratio: &Rational) -> Result<HighFloat, BoundError> {
    if branch_count == 0 {
        return Err(BoundError::NoBranches);
    }
    if !ratio.is_positive() || *ratio >= Rational::one() {
        return Err(BoundError::RatioOutOfRange);
    }
    let inverse = ratio.recip();
    let branches = Rational::from_integer(BigInt::from(branch_count));
    // Exact answer when branch_count is an integral power of 1/ratio.
    let mut power = Rational::one();
    let mut j: i64 = 0;
    while power < branches {
        power *= &inverse;
        j += 1;
    }
    if power == branches {
        return Ok(HighFloat::new(Interval::from_integer(j)));
    }
    let s = Interval::ln_rational(&branches)?.div(&Interval::ln_rational(&inverse)?)?;
    Ok(HighFloat::new(s))
}

/// `base^exponent` rounded up, over every value the base may take.
pub fn pow_upper(base: &DiameterValue, exponent: &HighFloat) -> Result<BoundValue, BoundError> {
    let ln_base = base.ln()?;
    if ln_base.is_point() && ln_base.lo_mantissa().is_zero() {
        return Ok(BoundValue::from_mantissa(Interval::one().hi_mantissa().clone()));
    }
    let power = exponent.enclosure().mul(&ln_base).exp();
    Ok(BoundValue::from_mantissa(power.hi_mantissa().clone()))
}

/// `|U|^s / fraction`, rounded up.
pub fn partial_estimation_bound(
    coverage_fraction: &Rational,
    diameter: &DiameterValue,
    s: &HighFloat,
) -> Result<BoundValue, BoundError> {
    if !coverage_fraction.is_positive() || *coverage_fraction > Rational::one() {
        return Err(BoundError::FractionOutOfRange);
    }
    let power = pow_upper(diameter, s)?;
    let scaled = power.mantissa * coverage_fraction.denom();
    let num = coverage_fraction.numer();
    let quotient = -num_integer::Integer::div_floor(&(-scaled), num);
    Ok(BoundValue::from_mantissa(quotient))
}

/// `|E|^s`: the cover set is the whole fractal.
pub fn trivial_diameter_bound(
    diameter: &DiameterValue,
    s: &HighFloat,
) -> Result<BoundValue, BoundError> {
    partial_estimation_bound(&Rational::one(), diameter, s)
}

/// `s = log_3 4`, the dimension of `C × C`.
pub fn cantor_dust_dimension() -> HighFloat {
    hausdorff_dimension(4, &Rational::new(BigInt::one(), BigInt::from(3)))
        .expect("1/3 is a valid contraction ratio")
}
