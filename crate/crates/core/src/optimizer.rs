//! One-parameter searches over cover sets: the octagon-series objective
//! `f(k)` over real `k >= 2`, and certified sweeps of disk radii.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::constructions::simplified_sqrt;
use crate::bound::{partial_estimation_bound, BoundError, DiameterValue, HighFloat, UpperBound};
use crate::geometry::{GeometryError, GridSquare, Point, Primitive, Region};
use crate::grid::{count_coverage, CoverageCount, GridError};
use crate::interval::{Interval, IntervalError};
use crate::rational::{int, rat, Rational};

/// `(√5 - 1)/2`
const INV_PHI: f64 = 0.618_033_988_749_894_9;
/// Step of the central second difference.
pub const SECOND_DIFFERENCE_STEP: (i64, i64) = (1, 10_000);
pub const MIN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OptimizerError {
    #[error("octagon-series objective is defined for k >= 2")]
    BelowDomain,
    #[error("bracket must satisfy 2 <= lo < hi")]
    BadBracket,
    #[error("tolerance must be at least 1e-12")]
    ToleranceTooSmall,
    #[error("integer range must satisfy 2 <= k_min <= k_max")]
    BadIntegerRange,
    #[error("sweep needs at least one radius")]
    EmptySweep,
    #[error("radius squared must be positive")]
    NonPositiveRadius,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveResult {
    pub k: Rational,
    pub value: HighFloat,
    pub second_derivative: Option<HighFloat>,
    pub iterations: u32,
    /// Set when the bracket did not behave like that of a unimodal function.
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerOptimum {
    pub k: u32,
    pub bound: HighFloat,
}

/// `f(k) = (√(2·9^k - 12·3^k + 26)/(3^k - 1))^s · (4^k - 2)/(4^k - 6)`
fn eval_f(k: &Interval, s: &HighFloat) -> Result<Interval, IntervalError> {
    let three_k = k.mul(&Interval::ln_rational(&int(3))?).exp();
    let four_k = k.mul(&Interval::ln_rational(&int(4))?).exp();
    let radicand = three_k
        .square()
        .mul_int(2)
        .sub(&three_k.mul_int(12))
        .add(&Interval::from_integer(26));
    let diameter = radicand.sqrt()?.div(&three_k.sub(&Interval::one()))?;
    let power = diameter.powf(s.enclosure())?;
    let ratio = four_k
        .sub(&Interval::from_integer(2))
        .div(&four_k.sub(&Interval::from_integer(6)))?;
    Ok(power.mul(&ratio))
}

pub fn f_octagon_series(k: &Rational, s: &HighFloat) -> Result<HighFloat, OptimizerError> {
    if *k < int(2) {
        return Err(OptimizerError::BelowDomain);
    }
    Ok(HighFloat::new(eval_f(&Interval::from_rational(k), s)?))
}

fn f_at(k: f64, s: &HighFloat) -> Result<Interval, OptimizerError> {
    let k = Rational::from_float(k).ok_or(OptimizerError::BadBracket)?;
    Ok(eval_f(&Interval::from_rational(&k), s)?)
}

/// Orders two enclosures by their midpoints.
fn mid_cmp(a: &Interval, b: &Interval) -> Ordering {
    (a.lo_mantissa() + a.hi_mantissa()).cmp(&(b.lo_mantissa() + b.hi_mantissa()))
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
pub fn minimize_octagon_series(
    lo: f64,
    hi: f64,
    tol: f64,
    s: &HighFloat,
) -> Result<ObjectiveResult, OptimizerError> {
    if !(lo >= 2.0 && lo < hi && hi.is_finite()) {
        return Err(OptimizerError::BadBracket);
    }
    if !(tol >= MIN_TOLERANCE) {
        return Err(OptimizerError::ToleranceTooSmall);
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = f_at(a, s)?;
    let mut fb = f_at(b, s)?;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f_at(c, s)?;
    let mut fd = f_at(d, s)?;
    let mut iterations = 0;
    let mut diagnostic: Option<String> = None;
    let mut last_width = b - a;
    while b - a > tol {
        iterations += 1;
        if mid_cmp(&fc, &fd) == Ordering::Less {
            // Minimum lies in [a, d]; f should not dip again on [d, b].
            if mid_cmp(&fb, &fd) == Ordering::Less && diagnostic.is_none() {
                diagnostic = Some(format!("not unimodal: f({b}) < f({d}) on the discarded side"));
            }
            b = d;
            fb = fd;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f_at(c, s)?;
        } else {
            if mid_cmp(&fa, &fc) == Ordering::Less && diagnostic.is_none() {
                diagnostic = Some(format!("not unimodal: f({a}) < f({c}) on the discarded side"));
            }
            a = c;
            fa = fc;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f_at(d, s)?;
        }
        let width = b - a;
        if !(width < last_width) {
            diagnostic.get_or_insert_with(|| format!("bracket stopped shrinking at width {width}"));
            break;
        }
        last_width = width;
    }
    let k = Rational::from_float(0.5 * (a + b)).ok_or(OptimizerError::BadBracket)?;
    let value = eval_f(&Interval::from_rational(&k), s)?;
    let second_derivative = second_difference(&k, &value, s).ok();
    Ok(ObjectiveResult {
        k,
        value: HighFloat::new(value),
        second_derivative,
        iterations,
        diagnostic,
    })
}

/// `(f(k + h) - 2 f(k) + f(k - h)) / h²` with `h = 1e-4`.
fn second_difference(k: &Rational, fk: &Interval, s: &HighFloat) -> Result<HighFloat, OptimizerError> {
    let h = rat(SECOND_DIFFERENCE_STEP.0, SECOND_DIFFERENCE_STEP.1);
    let up = eval_f(&Interval::from_rational(&(k + &h)), s)?;
    let down = eval_f(&Interval::from_rational(&(k - &h)), s)?;
    let numerator = up.add(&down).sub(&fk.mul_int(2));
    Ok(HighFloat::new(numerator.scale(&(&h * &h).recip())))
}

/// Integer `k` in `[k_min, k_max]` minimizing `f`; ties go to the smaller `k`.
pub fn best_integer_k(
    k_min: u32,
    k_max: u32,
    s: &HighFloat,
) -> Result<IntegerOptimum, OptimizerError> {
    if k_min < 2 || k_min > k_max {
        return Err(OptimizerError::BadIntegerRange);
    }
    let mut best: Option<IntegerOptimum> = None;
    for k in k_min..=k_max {
        let bound = f_octagon_series(&int(k as i64), s)?;
        let better = match &best {
            None => true,
            Some(cur) => bound.enclosure().certain_cmp(cur.bound.enclosure()) == Some(Ordering::Less),
        };
        if better {
            best = Some(IntegerOptimum { k, bound });
        }
    }
    Ok(best.expect("range is non-empty"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub r2: Rational,
    pub coverage: CoverageCount,
    pub diameter: DiameterValue,
    /// `None` when no level-`n` square is certified inside.
    pub bound: Option<UpperBound>,
}

/// Diameter enclosure of `root ∩ disk`: the smaller of `2√r2` and the root
/// diagonal.
pub fn clamped_disk_diameter(root: &GridSquare, r2: &Rational) -> Result<DiameterValue, BoundError> {
    let side = root.side();
    if int(4) * r2 <= int(2) * side * side {
        simplified_sqrt(int(2), r2.clone())
    } else {
        DiameterValue::exact(side.clone(), int(2))
    }
}

/// One certified sweep row for `unit square ∩ disk(center, r2)` at `level`.
pub fn sweep_row(
    center: &Point,
    r2: &Rational,
    level: u32,
    s: &HighFloat,
) -> Result<SweepRow, OptimizerError> {
    if !r2.is_positive() {
        return Err(OptimizerError::NonPositiveRadius);
    }
    let root = GridSquare::unit();
    let disk = Primitive::disk(center.clone(), r2.clone())?;
    let region = Region::clipped_to(&root, alloc::vec![disk])?;
    let coverage = count_coverage(&root, &region, level)?;
    let diameter = clamped_disk_diameter(&root, r2)?;
    let bound = if coverage.inside.is_zero() {
        None
    } else {
        let value = partial_estimation_bound(&coverage.inside_fraction(), &diameter, s)?;
        Some(UpperBound::certified(value, coverage.clone()))
    };
    Ok(SweepRow { r2: r2.clone(), coverage, diameter, bound })
}

/// Orders rows by bound (rows without one last), then by `r2`.
pub fn sort_sweep_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|x, y| {
        let by_bound = match (&x.bound, &y.bound) {
            (Some(a), Some(b)) => a.value.cmp(&b.value),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        };
        by_bound.then_with(|| x.r2.cmp(&y.r2))
    });
}

pub fn sweep_disk_radius(
    center: &Point,
    r2_values: &[Rational],
    level: u32,
    s: &HighFloat,
) -> Result<Vec<SweepRow>, OptimizerError> {
    if r2_values.is_empty() {
        return Err(OptimizerError::EmptySweep);
    }
    let mut rows = r2_values
        .iter()
        .map(|r2| sweep_row(center, r2, level, s))
        .collect::<Result<Vec<_>, _>>()?;
    sort_sweep_rows(&mut rows);
    Ok(rows)
}

/// `|a - b| / |b|` as an exact rational upper bound, for comparing two
/// enclosures of the same quantity.
pub fn relative_gap(a: &Interval, b: &Interval) -> Rational {
    let span = a.hull(b);
    let denom = if b.lo_rational().is_positive() { b.lo_rational() } else { Rational::one() };
    span.width() / denom.abs()
}
