//! The catalog of cover sets: each construction yields a region inside the
//! unit root square, its analytic diameter and the published numbers it came
//! with.
//!
//! All regions are given at root side 1. Pictures drawn at side 9 are
//! rescaled by `1/9` (radii squared by `1/81`).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bound::{BoundError, DiameterValue};
use crate::geometry::{GeometryError, GridSquare, Point, Primitive, Region};
use crate::interval::Interval;
use crate::rational::{int, parse_rational, pow_int, rat, Rational};

pub type Params = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("unknown construction `{0}`")]
    UnknownName(String),
    #[error("parameter `{name}` must be an integer >= {min}, got {value}")]
    BadIntegerParam { name: &'static str, min: u32, value: String },
    #[error(
        "octagon-series needs k >= 2: for k = 1 the corner offset x = 1/2 exceeds 1/4, \
         so the corner cuts would overlap (the construction requires 1 - 4x >= 0)"
    )]
    InfeasibleSeriesOrder,
    #[error("unexpected parameter `{0}`")]
    UnexpectedParam(String),
    #[error("no published fixture for {0}")]
    NoFixture(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    BasicInterval,
    OctagonFixed,
    OctagonSeries,
    CircleBig,
    CircleSeries,
    CorrectionRegion,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::BasicInterval,
        Construction::OctagonFixed,
        Construction::OctagonSeries,
        Construction::CircleBig,
        Construction::CircleSeries,
        Construction::CorrectionRegion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::BasicInterval => "basic-interval",
            Construction::OctagonFixed => "octagon-fixed",
            Construction::OctagonSeries => "octagon-series",
            Construction::CircleBig => "circle-big",
            Construction::CircleSeries => "circle-series",
            Construction::CorrectionRegion => "correction-region",
        }
    }

    /// Whether the region is invariant under the symmetries of the root square.
    pub fn is_dihedral_symmetric(self) -> bool {
        !matches!(self, Construction::BasicInterval)
    }

    fn param_name(self) -> Option<&'static str> {
        match self {
            Construction::BasicInterval => Some("n"),
            Construction::OctagonSeries => Some("k"),
            _ => None,
        }
    }

    fn default_param(self) -> u32 {
        match self {
            Construction::BasicInterval => 2,
            Construction::OctagonSeries => 3,
            _ => 0,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ConstructionError::UnknownName(s.to_string()))
    }
}

/// A cover set `U` ready for counting and bounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub name: String,
    pub root: GridSquare,
    pub region: Region,
    pub diameter: DiameterValue,
    pub recommended_level: u32,
    pub params: Params,
}

impl CoverSpec {
    /// A user-supplied cover set, e.g. loaded from a region file.
    pub fn custom(
        name: impl Into<String>,
        root: GridSquare,
        region: Region,
        diameter: DiameterValue,
        recommended_level: u32,
    ) -> Self {
        CoverSpec {
            name: name.into(),
            root,
            region,
            diameter,
            recommended_level: recommended_level.max(1),
            params: Params::new(),
        }
    }

    /// The diameter in units of the root side, as the bound needs it.
    pub fn normalized_diameter(&self) -> DiameterValue {
        if self.root.side().is_one() {
            self.diameter.clone()
        } else {
            self.diameter.divided_by(self.root.side())
        }
    }

    /// Sufficient check that the region lies in the root square: its bounding
    /// box does.
    pub fn region_within_root(&self) -> bool {
        match self.region.bounding_box() {
            Some((x0, x1, y0, y1)) => {
                *self.root.x0() <= x0
                    && x1 <= self.root.x1()
                    && *self.root.y0() <= y0
                    && y1 <= self.root.y1()
            }
            None => false,
        }
    }
}

/// A published bound together with the fraction and diameter it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub fraction: Rational,
    pub diameter: DiameterValue,
    /// The bound exactly as printed (six decimals).
    pub expected_bound: &'static str,
    /// Level at which the fraction was counted, when one was stated.
    pub level: Option<u32>,
}

impl Fixture {
    pub fn expected_rational(&self) -> Rational {
        parse_rational(self.expected_bound).expect("fixture bounds are valid decimals")
    }
}

/// Names of every construction, in catalog order.
pub fn catalog() -> Vec<&'static str> {
    Construction::ALL.iter().map(|c| c.name()).collect()
}

fn integer_param(
    construction: Construction,
    params: Option<&Params>,
    min: u32,
) -> Result<u32, ConstructionError> {
    let name = construction.param_name().expect("construction takes a parameter");
    let Some(value) = params.and_then(|p| p.get(name)) else {
        return Ok(construction.default_param());
    };
    let bad = || ConstructionError::BadIntegerParam {
        name,
        min,
        value: crate::rational::exact_text(value),
    };
    if !value.is_integer() {
        return Err(bad());
    }
    let v = value.to_integer().to_u32().ok_or_else(bad)?;
    if v < min {
        if construction == Construction::OctagonSeries {
            return Err(ConstructionError::InfeasibleSeriesOrder);
        }
        return Err(bad());
    }
    Ok(v)
}

fn check_params(construction: Construction, params: Option<&Params>) -> Result<(), ConstructionError> {
    if let Some(params) = params {
        for key in params.keys() {
            if Some(key.as_str()) != construction.param_name() {
                return Err(ConstructionError::UnexpectedParam(key.clone()));
            }
        }
    }
    Ok(())
}

fn pt(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

/// `√radicand · scale` with square factors moved out of the radicand.
pub(crate) fn simplified_sqrt(scale: Rational, radicand: Rational) -> Result<DiameterValue, BoundError> {
    let (outer_n, inner_n) = split_square(radicand.numer());
    let (outer_d, inner_d) = split_square(radicand.denom());
    // √(n/d) = √(n·d)/d
    let (outer_nd, inner_nd) = split_square(&(&inner_n * &inner_d));
    let scale = scale * Rational::new(outer_n * outer_nd, outer_d * inner_d);
    DiameterValue::exact(scale, Rational::from_integer(inner_nd))
}

/// `n = outer² · inner` with `inner` free of small square factors.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut inner = n.clone();
    let mut outer = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= inner && p < BigInt::from(100_000) {
        let p2 = &p * &p;
        while (&inner).is_multiple_of(&p2) {
            inner /= &p2;
            outer *= &p;
        }
        p += 1;
    }
    (outer, inner)
}

/// `x = Σ 1/3^(k·i) = 1/(3^k - 1)`, the corner offset of `octagon-series(k)`.
pub fn series_offset(k: u32) -> Rational {
    Rational::new(BigInt::one(), pow_int(3, k) - 1)
}

/// `(4^k - 6)/(4^k - 2)`, the limit of the covered fraction of `octagon-series(k)`.
pub fn limiting_fraction(k: u32) -> Rational {
    let p = pow_int(4, k);
    Rational::new(&p - 6, p - 2)
}

/// Diameter `√(1 + (1 - 4x)²)` of `octagon-series(k)`, simplified.
pub fn series_diameter(k: u32) -> DiameterValue {
    let p = pow_int(3, k);
    let radicand = &p * &p * 2 - &p * 12 + 26;
    simplified_sqrt(Rational::new(BigInt::one(), p - 1), Rational::from_integer(radicand))
        .expect("positive radicand")
}

/// Partial sum `1 - 4·Σ_{i=1..terms} 2^(i-1)/4^(k·i)`.
pub fn series_fraction_oracle(k: u32, terms: u32) -> Result<Rational, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::InfeasibleSeriesOrder);
    }
    let mut sum = Rational::zero();
    for i in 1..=terms {
        sum += Rational::new(pow_int(2, i - 1), pow_int(4, k * i));
    }
    Ok(Rational::one() - sum * int(4))
}

/// Enclosure of `√((2√633/3 - 9)² + 81)/9`, the distance between the two
/// far arc endpoints of the correction region.
pub fn correction_region_diameter() -> DiameterValue {
    let root633 = Interval::sqrt_rational(&int(633)).expect("positive");
    let t = root633.scale(&rat(2, 3)).sub(&Interval::from_integer(9));
    let d = t
        .square()
        .add(&Interval::from_integer(81))
        .sqrt()
        .expect("positive")
        .scale(&rat(1, 9));
    // Rounded outward to 30 decimals so the exact ends stay readable.
    let lo = parse_rational(&d.lower_decimal(30)).expect("decimal text");
    let hi = parse_rational(&d.upper_decimal(30)).expect("decimal text");
    DiameterValue::interval(lo, hi).expect("positive enclosure")
}

pub fn build(name: &str, params: Option<&Params>) -> Result<CoverSpec, ConstructionError> {
    let construction: Construction = name.parse()?;
    check_params(construction, params)?;
    let root = GridSquare::unit();
    let mut used = Params::new();
    let (region, diameter, recommended_level) = match construction {
        Construction::BasicInterval => {
            let n = integer_param(construction, params, 1)?;
            used.insert("n".to_string(), int(n as i64));
            let side = Rational::new(BigInt::one(), pow_int(3, n - 1));
            let corner = GridSquare::new(Rational::zero(), Rational::zero(), side.clone())?;
            let region = Region::new(corner.as_primitives().to_vec())?;
            (region, DiameterValue::exact(side, int(2))?, n)
        }
        Construction::OctagonFixed => {
            let region = octagon_region(&root, &rat(2, 27))?;
            (region, DiameterValue::exact(rat(1, 27), int(1258))?, 4)
        }
        Construction::OctagonSeries => {
            let k = integer_param(construction, params, 2)?;
            used.insert("k".to_string(), int(k as i64));
            let cut = series_offset(k) * int(2);
            let region = octagon_region(&root, &cut)?;
            (region, series_diameter(k), 2 * k + 1)
        }
        Construction::CircleBig => {
            let disk = Primitive::disk(pt(rat(1, 2), rat(1, 2)), rat(629, 1458))?;
            let region = Region::clipped_to(&root, vec![disk])?;
            (region, DiameterValue::exact(rat(1, 27), int(1258))?, 10)
        }
        Construction::CircleSeries => {
            let disk = Primitive::disk(pt(rat(1, 2), rat(1, 2)), rat(145, 338))?;
            let region = Region::clipped_to(&root, vec![disk])?;
            (region, DiameterValue::exact(rat(1, 13), int(290))?, 9)
        }
        Construction::CorrectionRegion => {
            let r2 = rat(1258, 729);
            let centers = [
                (rat(2, 27), int(0)),
                (rat(2, 27), int(1)),
                (rat(25, 27), int(1)),
                (rat(25, 27), int(0)),
            ];
            let disks = centers
                .into_iter()
                .map(|(x, y)| Primitive::disk(pt(x, y), r2.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            let region = Region::clipped_to(&root, disks)?;
            (region, correction_region_diameter(), 8)
        }
    };
    Ok(CoverSpec {
        name: construction.name().to_string(),
        root,
        region,
        diameter,
        recommended_level,
        params: used,
    })
}

/// Root square with its four corners cut at distance `cut` along each edge.
fn octagon_region(root: &GridSquare, cut: &Rational) -> Result<Region, GeometryError> {
    let one = int(1);
    let far = &one - cut;
    Region::clipped_to(
        root,
        vec![
            // x + y >= cut
            Primitive::half_plane_ge(one.clone(), one.clone(), cut.clone())?,
            // x - y <= 1 - cut
            Primitive::half_plane(one.clone(), -one.clone(), far.clone())?,
            // y - x <= 1 - cut
            Primitive::half_plane(-one.clone(), one.clone(), far)?,
            // x + y <= 2 - cut
            Primitive::half_plane(one.clone(), one, int(2) - cut)?,
        ],
    )
}

/// The published `(fraction, diameter, bound)` for a construction.
pub fn paper_fixture(name: &str, params: Option<&Params>) -> Result<Fixture, ConstructionError> {
    let construction: Construction = name.parse()?;
    check_params(construction, params)?;
    let fixture = |fraction, diameter, expected_bound, level| Fixture {
        name: construction.name().to_string(),
        fraction,
        diameter,
        expected_bound,
        level,
    };
    Ok(match construction {
        Construction::BasicInterval => {
            let n = integer_param(construction, params, 1)?;
            fixture(
                Rational::new(BigInt::one(), pow_int(4, n - 1)),
                DiameterValue::exact(Rational::new(BigInt::one(), pow_int(3, n - 1)), int(2))?,
                "1.548563",
                Some(n),
            )
        }
        Construction::OctagonFixed => fixture(
            rat(15, 16),
            DiameterValue::exact(rat(1, 27), int(1258))?,
            "1.504975",
            Some(4),
        ),
        Construction::OctagonSeries => {
            let k = integer_param(construction, params, 2)?;
            let (fraction, scale, radicand, bound) = match k {
                2 => (rat(5, 7), rat(1, 2), 5, "1.611653"),
                3 => (rat(29, 31), rat(1, 13), 290, "1.502878"),
                4 => (rat(125, 127), rat(1, 20), 761, "1.524502"),
                5 => (rat(509, 511), rat(1, 121), 28802, "1.538520"),
                _ => return Err(ConstructionError::NoFixture(alloc::format!("octagon-series k={k}"))),
            };
            fixture(fraction, DiameterValue::exact(scale, int(radicand))?, bound, None)
        }
        Construction::CircleBig => fixture(
            rat(30755, 32768),
            DiameterValue::exact(rat(1, 27), int(1258))?,
            "1.503263",
            Some(10),
        ),
        Construction::CircleSeries => fixture(
            rat(15331, 16384),
            DiameterValue::exact(rat(1, 13), int(290))?,
            "1.502483",
            Some(9),
        ),
        Construction::CorrectionRegion => fixture(
            rat(1925, 2048),
            correction_region_diameter(),
            "1.512163",
            Some(8),
        ),
    })
}
