//! Sampling check of a claimed diameter, plus the isoperimetric area check
//! (no set of diameter `d` has area above `π d²/4`).
//!
//! This is a guard against wrong diameters, not a proof: boundary points are
//! sampled on every primitive, filtered by exact membership, and the largest
//! pairwise distance must not exceed the claim. For polygons the exact
//! vertex-pair maximum is computed as well and is the one that decides.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bound::{DiameterValue, HighFloat};
use crate::geometry::{point_in_region, Point, Primitive, Region};
use crate::interval::Interval;
use crate::rational::Rational;

/// Relative slack allowed on the distance check.
pub const DISTANCE_SLACK: f64 = 1e-9;
/// Relative slack allowed on the area check.
pub const AREA_SLACK: f64 = 1e-3;
/// Minimum requested boundary samples.
pub const MIN_BOUNDARY_SAMPLES: usize = 64;
/// Strata per axis for the area estimate.
const AREA_GRID: usize = 512;
const AREA_SEED: u64 = 0x5eed_ca47_0c0f_fee5;
/// Bits kept when a radius is approximated by a binary fraction.
const RADIUS_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    /// Largest sampled distance (enclosure of the square root of an exact value).
    pub max_sampled_distance: HighFloat,
    pub max_pair: (Point, Point),
    pub samples: usize,
    /// Exact vertex-pair maximum, for regions bounded only by half-planes.
    pub vertex_diameter: Option<HighFloat>,
    pub area_estimate: f64,
    /// `π (claimed/2)²`.
    pub isoperimetric_limit: f64,
    pub distance_ok: bool,
    pub area_ok: bool,
    pub pass: bool,
    pub diagnostic: Option<String>,
}

fn failure(diagnostic: String) -> DiameterReport {
    DiameterReport {
        max_sampled_distance: HighFloat::new(Interval::zero()),
        max_pair: (
            Point::new(Rational::zero(), Rational::zero()),
            Point::new(Rational::zero(), Rational::zero()),
        ),
        samples: 0,
        vertex_diameter: None,
        area_estimate: 0.0,
        isoperimetric_limit: 0.0,
        distance_ok: false,
        area_ok: false,
        pass: false,
        diagnostic: Some(diagnostic),
    }
}

pub fn verify_diameter(
    region: &Region,
    claimed: &DiameterValue,
    boundary_samples: usize,
) -> DiameterReport {
    let requested = boundary_samples.max(MIN_BOUNDARY_SAMPLES);
    let Some(bbox) = region.bounding_box() else {
        return failure(String::from("region is unbounded: no enclosing box from its primitives"));
    };

    let mut per_primitive = requested;
    let mut samples = Vec::new();
    for _ in 0..6 {
        samples = boundary_samples_of(region, &bbox, per_primitive);
        if samples.len() >= requested {
            break;
        }
        per_primitive *= 2;
    }
    if samples.len() < 2 {
        return failure(format!(
            "region is empty or degenerate: only {} boundary samples survived",
            samples.len()
        ));
    }

    let (i, j, max_d2) = farthest_pair(&samples);
    let claimed_sq = claimed.squared_upper();
    let slack = Rational::from_float(1.0 + DISTANCE_SLACK).expect("finite");
    let limit_sq = &claimed_sq * &slack * &slack;
    let mut distance_ok = max_d2 <= limit_sq;

    let vertex_diameter = polygon_vertex_diameter_sq(region);
    if let Some(v) = &vertex_diameter {
        distance_ok = distance_ok && *v <= limit_sq;
    }

    let area_estimate = area_estimate(region, &bbox);
    let claimed_f = claimed.to_f64();
    let isoperimetric_limit = core::f64::consts::PI * claimed_f * claimed_f / 4.0;
    let area_ok = area_estimate <= isoperimetric_limit * (1.0 + AREA_SLACK);

    let diagnostic = match (distance_ok, area_ok) {
        (true, true) => None,
        (false, _) => Some(format!(
            "sampled distance squared {:.12} exceeds claimed diameter squared {:.12}",
            max_d2.to_f64().unwrap_or(f64::NAN),
            claimed_sq.to_f64().unwrap_or(f64::NAN)
        )),
        (true, false) => Some(format!(
            "area estimate {area_estimate:.9} exceeds the isoperimetric limit {isoperimetric_limit:.9}"
        )),
    };

    DiameterReport {
        max_sampled_distance: sqrt_high(&max_d2),
        max_pair: (samples[i].clone(), samples[j].clone()),
        samples: samples.len(),
        vertex_diameter: vertex_diameter.as_ref().map(sqrt_high),
        area_estimate,
        isoperimetric_limit,
        distance_ok,
        area_ok,
        pass: distance_ok && area_ok,
        diagnostic,
    }
}

fn sqrt_high(d2: &Rational) -> HighFloat {
    HighFloat::new(Interval::sqrt_rational(d2).expect("squared distances are non-negative"))
}

type BBox = (Rational, Rational, Rational, Rational);

/// Points on each primitive's boundary that lie in the region.
fn boundary_samples_of(region: &Region, bbox: &BBox, per_primitive: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for prim in region.primitives() {
        let candidates = match prim {
            Primitive::Disk { center, r2 } => circle_points(center, r2, per_primitive),
            Primitive::HalfPlane { a, b, c } => line_points(a, b, c, bbox, per_primitive),
        };
        out.extend(candidates.into_iter().filter(|p| point_in_region(p, region)));
    }
    out
}

/// Points at radius slightly below `√r2`, from the rational parametrization
/// `((1 - t²)/(1 + t²), 2t/(1 + t²))` of the unit circle.
fn circle_points(center: &Point, r2: &Rational, count: usize) -> Vec<Point> {
    let r = Interval::sqrt_rational(r2).expect("positive radius");
    let shift = crate::interval::WORK_BITS - RADIUS_BITS;
    let r = Rational::new(r.lo_mantissa() >> shift, BigInt::one() << RADIUS_BITS);
    let half = count.div_ceil(2).max(2);
    let mut out = Vec::with_capacity(2 * half);
    for j in 0..half {
        // t in [-1, 1) sweeps half the circle; the antipodes cover the rest.
        let t = Rational::new(BigInt::from(2 * j as i64 - half as i64), BigInt::from(half as i64));
        let denom = Rational::one() + &t * &t;
        let u = (Rational::one() - &t * &t) / &denom * &r;
        let v = (&t + &t) / &denom * &r;
        out.push(Point::new(&center.x + &u, &center.y + &v));
        out.push(Point::new(&center.x - &u, &center.y - &v));
    }
    out
}

/// Evenly spaced points on `a·x + b·y = c` clipped to the box.
fn line_points(a: &Rational, b: &Rational, c: &Rational, bbox: &BBox, count: usize) -> Vec<Point> {
    let norm = a * a + b * b;
    let base = Point::new(a * c / &norm, b * c / &norm);
    let (dx, dy) = (-b.clone(), a.clone());
    let (x0, x1, y0, y1) = bbox;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut clip = |start: &Rational, dir: &Rational, min: &Rational, max: &Rational| -> bool {
        if dir.is_zero() {
            return start >= min && start <= max;
        }
        let s0 = (min - start) / dir;
        let s1 = (max - start) / dir;
        let (s0, s1) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        lo = Some(match lo.take() {
            Some(v) if v >= s0 => v,
            _ => s0,
        });
        hi = Some(match hi.take() {
            Some(v) if v <= s1 => v,
            _ => s1,
        });
        true
    };
    if !clip(&base.x, &dx, x0, x1) || !clip(&base.y, &dy, y0, y1) {
        return Vec::new();
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Vec::new();
    };
    if lo > hi {
        return Vec::new();
    }
    let count = count.max(2);
    let step = (&hi - &lo) / Rational::from_integer(BigInt::from(count as i64 - 1));
    (0..count)
        .map(|j| {
            let s = &lo + &step * Rational::from_integer(BigInt::from(j as i64));
            Point::new(&base.x + &dx * &s, &base.y + &dy * &s)
        })
        .collect()
}

/// Index pair and exact squared distance of the farthest sampled pair.
/// Candidates are screened in `f64` and the near-maximal ones re-checked exactly.
fn farthest_pair(points: &[Point]) -> (usize, usize, Rational) {
    let approx: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0)))
        .collect();
    let mut best = 0.0f64;
    for (i, a) in approx.iter().enumerate() {
        for b in &approx[i + 1..] {
            let d = (a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1);
            if d > best {
                best = d;
            }
        }
    }
    let threshold = best * (1.0 - 1e-9);
    let mut winner = (0, 1, points[0].distance_squared(&points[1]));
    for (i, a) in approx.iter().enumerate() {
        for (j, b) in approx.iter().enumerate().skip(i + 1) {
            let d = (a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1);
            if d >= threshold {
                let exact = points[i].distance_squared(&points[j]);
                if exact > winner.2 {
                    winner = (i, j, exact);
                }
            }
        }
    }
    winner
}

/// Exact squared diameter of a region bounded only by half-planes, from the
/// pairwise intersections of their boundary lines.
fn polygon_vertex_diameter_sq(region: &Region) -> Option<Rational> {
    let lines: Vec<(&Rational, &Rational, &Rational)> = region
        .primitives()
        .iter()
        .map(|p| match p {
            Primitive::HalfPlane { a, b, c } => Some((a, b, c)),
            Primitive::Disk { .. } => None,
        })
        .collect::<Option<_>>()?;
    let mut vertices: Vec<Point> = Vec::new();
    for (i, (a1, b1, c1)) in lines.iter().enumerate() {
        for (a2, b2, c2) in &lines[i + 1..] {
            let det = *a1 * *b2 - *a2 * *b1;
            if det.is_zero() {
                continue;
            }
            let x = (*c1 * *b2 - *c2 * *b1) / &det;
            let y = (*a1 * *c2 - *a2 * *c1) / &det;
            let p = Point::new(x, y);
            if point_in_region(&p, region) && !vertices.contains(&p) {
                vertices.push(p);
            }
        }
    }
    let mut best: Option<Rational> = None;
    for (i, p) in vertices.iter().enumerate() {
        for q in &vertices[i + 1..] {
            let d = p.distance_squared(q);
            if best.as_ref().map_or(true, |b| d > *b) {
                best = Some(d);
            }
        }
    }
    best
}

/// Jittered-grid estimate of the region's area: one seeded uniform point per
/// cell of an `AREA_GRID × AREA_GRID` grid over the bounding box.
fn area_estimate(region: &Region, bbox: &BBox) -> f64 {
    let (x0, x1, y0, y1) = bbox;
    let fx0 = x0.to_f64().unwrap_or(0.0);
    let fy0 = y0.to_f64().unwrap_or(0.0);
    let w = (x1 - x0).to_f64().unwrap_or(0.0) / AREA_GRID as f64;
    let h = (y1 - y0).to_f64().unwrap_or(0.0) / AREA_GRID as f64;
    let screens: Vec<FloatPrimitive> = region.primitives().iter().map(FloatPrimitive::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(AREA_SEED);
    let mut hits: u64 = 0;
    for i in 0..AREA_GRID {
        for j in 0..AREA_GRID {
            let x = fx0 + (i as f64 + unit_f64(&mut rng)) * w;
            let y = fy0 + (j as f64 + unit_f64(&mut rng)) * h;
            if inside_screened(region, &screens, x, y) {
                hits += 1;
            }
        }
    }
    hits as f64 / (AREA_GRID * AREA_GRID) as f64 * (w * h * (AREA_GRID * AREA_GRID) as f64)
}

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `f64` shadow of a primitive, used to decide clear-cut membership quickly.
struct FloatPrimitive {
    kind: (f64, f64, f64),
    disk: bool,
}

impl FloatPrimitive {
    fn new(p: &Primitive) -> Self {
        let f = |q: &Rational| q.to_f64().unwrap_or(0.0);
        match p {
            Primitive::Disk { center, r2 } => FloatPrimitive {
                kind: (f(&center.x), f(&center.y), f(r2)),
                disk: true,
            },
            Primitive::HalfPlane { a, b, c } => FloatPrimitive {
                kind: (f(a), f(b), f(c)),
                disk: false,
            },
        }
    }

    /// Signed slack `limit - value`; positive means inside.
    fn slack(&self, x: f64, y: f64) -> f64 {
        let (p, q, r) = self.kind;
        if self.disk {
            r - ((x - p) * (x - p) + (y - q) * (y - q))
        } else {
            r - (p * x + q * y)
        }
    }
}

fn inside_screened(region: &Region, screens: &[FloatPrimitive], x: f64, y: f64) -> bool {
    let mut ambiguous = false;
    for s in screens {
        let slack = s.slack(x, y);
        if slack < -1e-9 {
            return false;
        }
        if slack <= 1e-9 {
            ambiguous = true;
        }
    }
    if !ambiguous {
        return true;
    }
    let p = Point::new(
        Rational::from_float(x).expect("finite"),
        Rational::from_float(y).expect("finite"),
    );
    point_in_region(&p, region)
}
