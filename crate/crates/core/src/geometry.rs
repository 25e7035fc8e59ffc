//! Exact predicates for closed axis-aligned squares against closed convex
//! regions. No floating point is used anywhere in this module.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("square side must be positive")]
    NonPositiveSide,
    #[error("disk radius squared must be positive")]
    NonPositiveRadius,
    #[error("half-plane normal (a, b) must not be (0, 0)")]
    DegenerateHalfPlane,
    #[error("a region needs at least one primitive")]
    EmptyRegion,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn distance_squared(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }
}

/// The closed square `[x0, x0 + side] × [y0, y0 + side]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSquare {
    x0: Rational,
    y0: Rational,
    side: Rational,
}

impl GridSquare {
    pub fn new(x0: Rational, y0: Rational, side: Rational) -> Result<Self, GeometryError> {
        if !side.is_positive() {
            return Err(GeometryError::NonPositiveSide);
        }
        Ok(GridSquare { x0, y0, side })
    }

    /// The square `[0, 1]²`.
    pub fn unit() -> Self {
        GridSquare {
            x0: Rational::zero(),
            y0: Rational::zero(),
            side: Rational::from_integer(1.into()),
        }
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn y0(&self) -> &Rational {
        &self.y0
    }

    pub fn side(&self) -> &Rational {
        &self.side
    }

    pub fn x1(&self) -> Rational {
        &self.x0 + &self.side
    }

    pub fn y1(&self) -> Rational {
        &self.y0 + &self.side
    }

    pub fn corners(&self) -> [Point; 4] {
        let (x1, y1) = (self.x1(), self.y1());
        [
            Point::new(self.x0.clone(), self.y0.clone()),
            Point::new(x1.clone(), self.y0.clone()),
            Point::new(self.x0.clone(), y1.clone()),
            Point::new(x1, y1),
        ]
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1() && self.y0 <= p.y && p.y <= self.y1()
    }

    /// The square as the intersection of four half-planes, in the order
    /// left, bottom, right, top.
    pub fn as_primitives(&self) -> [Primitive; 4] {
        let one = Rational::from_integer(1.into());
        let zero = Rational::zero();
        [
            Primitive::half_plane_unchecked(-one.clone(), zero.clone(), -self.x0.clone()),
            Primitive::half_plane_unchecked(zero.clone(), -one.clone(), -self.y0.clone()),
            Primitive::half_plane_unchecked(one.clone(), zero.clone(), self.x1()),
            Primitive::half_plane_unchecked(zero, one, self.y1()),
        ]
    }

    pub fn scaled(&self, factor: &Rational) -> GridSquare {
        assert!(factor.is_positive(), "scale factor must be positive");
        GridSquare {
            x0: &self.x0 * factor,
            y0: &self.y0 * factor,
            side: &self.side * factor,
        }
    }

    pub fn transformed(&self, symmetry: Symmetry, pivot: &Rational) -> GridSquare {
        // Map two opposite corners and rebuild from the new minimum corner.
        let a = symmetry.apply(&Point::new(self.x0.clone(), self.y0.clone()), pivot);
        let b = symmetry.apply(&Point::new(self.x1(), self.y1()), pivot);
        GridSquare {
            x0: a.x.min(b.x),
            y0: a.y.min(b.y),
            side: self.side.clone(),
        }
    }
}

/// A closed convex primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Primitive {
    /// `(x - cx)² + (y - cy)² <= r2`
    Disk { center: Point, r2: Rational },
    /// `a·x + b·y <= c`
    HalfPlane { a: Rational, b: Rational, c: Rational },
}

impl Primitive {
    pub fn disk(center: Point, r2: Rational) -> Result<Self, GeometryError> {
        if !r2.is_positive() {
            return Err(GeometryError::NonPositiveRadius);
        }
        Ok(Primitive::Disk { center, r2 })
    }

    pub fn half_plane(a: Rational, b: Rational, c: Rational) -> Result<Self, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::DegenerateHalfPlane);
        }
        Ok(Primitive::HalfPlane { a, b, c })
    }

    /// `a·x + b·y >= c`, stored negated.
    pub fn half_plane_ge(a: Rational, b: Rational, c: Rational) -> Result<Self, GeometryError> {
        Self::half_plane(-a, -b, -c)
    }

    fn half_plane_unchecked(a: Rational, b: Rational, c: Rational) -> Self {
        Primitive::HalfPlane { a, b, c }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Primitive::Disk { center, r2 } => center.distance_squared(p) <= *r2,
            Primitive::HalfPlane { a, b, c } => a * &p.x + b * &p.y <= *c,
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Primitive {
        match self {
            Primitive::Disk { center, r2 } => Primitive::Disk {
                center: Point::new(&center.x * factor, &center.y * factor),
                r2: r2 * factor * factor,
            },
            Primitive::HalfPlane { a, b, c } => Primitive::HalfPlane {
                a: a.clone(),
                b: b.clone(),
                c: c * factor,
            },
        }
    }

    pub fn transformed(&self, symmetry: Symmetry, pivot: &Rational) -> Primitive {
        match self {
            Primitive::Disk { center, r2 } => Primitive::Disk {
                center: symmetry.apply(center, pivot),
                r2: r2.clone(),
            },
            Primitive::HalfPlane { a, b, c } => {
                // Substitute the (self-inverse) map into a·x + b·y <= c.
                let two_p = pivot * Rational::from_integer(2.into());
                match symmetry {
                    Symmetry::ReflectX => Primitive::HalfPlane {
                        a: -a.clone(),
                        b: b.clone(),
                        c: c - a * &two_p,
                    },
                    Symmetry::ReflectY => Primitive::HalfPlane {
                        a: a.clone(),
                        b: -b.clone(),
                        c: c - b * &two_p,
                    },
                    Symmetry::Transpose => Primitive::HalfPlane {
                        a: b.clone(),
                        b: a.clone(),
                        c: c.clone(),
                    },
                }
            }
        }
    }
}

/// Reflections of the plane used for symmetry checks. `ReflectX` maps
/// `x -> 2p - x`, `ReflectY` maps `y -> 2p - y` and `Transpose` swaps the axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    ReflectX,
    ReflectY,
    Transpose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::ReflectX, Symmetry::ReflectY, Symmetry::Transpose];

    pub fn apply(self, p: &Point, pivot: &Rational) -> Point {
        let two_p = pivot * Rational::from_integer(2.into());
        match self {
            Symmetry::ReflectX => Point::new(&two_p - &p.x, p.y.clone()),
            Symmetry::ReflectY => Point::new(p.x.clone(), &two_p - &p.y),
            Symmetry::Transpose => Point::new(p.y.clone(), p.x.clone()),
        }
    }
}

/// Intersection of closed convex primitives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    primitives: Vec<Primitive>,
}

impl Region {
    pub fn new(primitives: Vec<Primitive>) -> Result<Self, GeometryError> {
        if primitives.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        for p in &primitives {
            match p {
                Primitive::Disk { r2, .. } if !r2.is_positive() => {
                    return Err(GeometryError::NonPositiveRadius)
                }
                Primitive::HalfPlane { a, b, .. } if a.is_zero() && b.is_zero() => {
                    return Err(GeometryError::DegenerateHalfPlane)
                }
                _ => {}
            }
        }
        Ok(Region { primitives })
    }

    /// `square ∩ extra`, with the square's four half-planes first.
    pub fn clipped_to(square: &GridSquare, extra: Vec<Primitive>) -> Result<Self, GeometryError> {
        let mut primitives: Vec<Primitive> = square.as_primitives().into_iter().collect();
        primitives.extend(extra);
        Region::new(primitives)
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn scaled(&self, factor: &Rational) -> Region {
        Region { primitives: self.primitives.iter().map(|p| p.scaled(factor)).collect() }
    }

    pub fn transformed(&self, symmetry: Symmetry, pivot: &Rational) -> Region {
        Region {
            primitives: self.primitives.iter().map(|p| p.transformed(symmetry, pivot)).collect(),
        }
    }

    /// An axis-aligned box `(x_min, x_max, y_min, y_max)` containing the
    /// region, built from the disks and the axis-parallel half-planes. `None`
    /// when those primitives leave some direction unbounded.
    pub fn bounding_box(&self) -> Option<(Rational, Rational, Rational, Rational)> {
        let mut x_min: Option<Rational> = None;
        let mut x_max: Option<Rational> = None;
        let mut y_min: Option<Rational> = None;
        let mut y_max: Option<Rational> = None;
        let tighten_max = |slot: &mut Option<Rational>, v: Rational| match slot {
            Some(cur) if *cur <= v => {}
            _ => *slot = Some(v),
        };
        let tighten_min = |slot: &mut Option<Rational>, v: Rational| match slot {
            Some(cur) if *cur >= v => {}
            _ => *slot = Some(v),
        };
        for prim in &self.primitives {
            match prim {
                Primitive::Disk { center, r2 } => {
                    let r = crate::interval::Interval::sqrt_rational(r2)
                        .expect("positive radius")
                        .hi_rational();
                    tighten_min(&mut x_min, &center.x - &r);
                    tighten_max(&mut x_max, &center.x + &r);
                    tighten_min(&mut y_min, &center.y - &r);
                    tighten_max(&mut y_max, &center.y + &r);
                }
                Primitive::HalfPlane { a, b, c } if b.is_zero() => {
                    let bound = c / a;
                    if a.is_positive() {
                        tighten_max(&mut x_max, bound);
                    } else {
                        tighten_min(&mut x_min, bound);
                    }
                }
                Primitive::HalfPlane { a, b, c } if a.is_zero() => {
                    let bound = c / b;
                    if b.is_positive() {
                        tighten_max(&mut y_max, bound);
                    } else {
                        tighten_min(&mut y_min, bound);
                    }
                }
                Primitive::HalfPlane { .. } => {}
            }
        }
        Some((x_min?, x_max?, y_min?, y_max?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    /// The square is contained in the region.
    Inside,
    /// The square and the region are disjoint.
    Outside,
    /// Neither containment nor disjointness was established.
    Straddles,
}

pub fn point_in_region(p: &Point, region: &Region) -> bool {
    region.primitives.iter().all(|prim| prim.contains(p))
}

pub fn classify_square_vs_primitive(sq: &GridSquare, prim: &Primitive) -> Classification {
    match prim {
        Primitive::HalfPlane { a, b, c } => {
            // a·x + b·y is linear, so both extremes sit at corners picked by sign.
            let x1 = sq.x1();
            let y1 = sq.y1();
            let (x_min, x_max) = if a.is_negative() { (&x1, &sq.x0) } else { (&sq.x0, &x1) };
            let (y_min, y_max) = if b.is_negative() { (&y1, &sq.y0) } else { (&sq.y0, &y1) };
            let max = a * x_max + b * y_max;
            if max <= *c {
                return Classification::Inside;
            }
            let min = a * x_min + b * y_min;
            if min > *c {
                Classification::Outside
            } else {
                Classification::Straddles
            }
        }
        Primitive::Disk { center, r2 } => {
            let x1 = sq.x1();
            let y1 = sq.y1();
            let far_x = farthest(&center.x, &sq.x0, &x1);
            let far_y = farthest(&center.y, &sq.y0, &y1);
            if &far_x * &far_x + &far_y * &far_y <= *r2 {
                return Classification::Inside;
            }
            let near_x = nearest(&center.x, &sq.x0, &x1);
            let near_y = nearest(&center.y, &sq.y0, &y1);
            if &near_x * &near_x + &near_y * &near_y > *r2 {
                Classification::Outside
            } else {
                Classification::Straddles
            }
        }
    }
}

/// Largest `|t - c|` for `t` in `[lo, hi]`.
fn farthest(c: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    let a = (c - lo).abs();
    let b = (hi - c).abs();
    if a >= b {
        a
    } else {
        b
    }
}

/// Smallest `|t - c|` for `t` in `[lo, hi]`.
fn nearest(c: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    if c < lo {
        lo - c
    } else if c > hi {
        c - hi
    } else {
        Rational::zero()
    }
}

pub fn classify_square_vs_region(sq: &GridSquare, region: &Region) -> Classification {
    let mut all_inside = true;
    for prim in &region.primitives {
        match classify_square_vs_primitive(sq, prim) {
            Classification::Outside => return Classification::Outside,
            Classification::Straddles => all_inside = false,
            Classification::Inside => {}
        }
    }
    if all_inside {
        Classification::Inside
    } else {
        Classification::Straddles
    }
}
