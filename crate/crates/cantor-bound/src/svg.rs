//! Deterministic SVG figures: the level-`n` Cantor squares colored by
//! classification, the region boundary, the root outline and a legend.
//!
//! Squares are classified exactly. The boundary is drawn in `f64` and is for
//! display only.

use std::f64::consts::TAU;
use std::fmt::Write;

use cantor_bound_core::grid::children;
use cantor_bound_core::{
    classify_square_vs_region, Classification, CoverSpec, GridSquare, Primitive,
};
use num_traits::ToPrimitive;

pub const MAX_RENDER_LEVEL: u32 = 9;
pub const CANVAS: f64 = 640.0;
pub const MARGIN: f64 = 20.0;
pub const LEGEND_HEIGHT: f64 = 40.0;
pub const INSIDE_FILL: &str = "#2f7d4a";
pub const STRADDLE_FILL: &str = "#e3a21a";
pub const OUTSIDE_FILL: &str = "#c7c7c7";
pub const BOUNDARY_STROKE: &str = "#1f3a93";
pub const BOUNDARY_WIDTH: f64 = 1.5;
pub const ROOT_STROKE: &str = "#000000";
pub const ROOT_WIDTH: f64 = 1.0;
/// Chords per disk arc.
pub const ARC_CHORDS: usize = 256;
const SCAN_STEPS: usize = 4096;
const BISECTIONS: usize = 60;
const EPS: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("rendering is limited to levels 1..={MAX_RENDER_LEVEL}, got {0}")]
    Level(u32),
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Disk { cx: f64, cy: f64, r: f64 },
    HalfPlane { a: f64, b: f64, c: f64 },
}

impl Shape {
    fn new(p: &Primitive) -> Self {
        let f = |q: &cantor_bound_core::Rational| q.to_f64().unwrap_or(f64::NAN);
        match p {
            Primitive::Disk { center, r2 } => {
                Shape::Disk { cx: f(&center.x), cy: f(&center.y), r: f(r2).sqrt() }
            }
            Primitive::HalfPlane { a, b, c } => Shape::HalfPlane { a: f(a), b: f(b), c: f(c) },
        }
    }

    fn contains(&self, x: f64, y: f64, scale: f64) -> bool {
        match *self {
            Shape::Disk { cx, cy, r } => (x - cx).hypot(y - cy) <= r + EPS * scale,
            Shape::HalfPlane { a, b, c } => a * x + b * y <= c + EPS * scale * a.hypot(b),
        }
    }
}

/// Maps root coordinates to canvas pixels, `y` pointing up.
struct Frame {
    x0: f64,
    y0: f64,
    side: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / self.side * (CANVAS - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        CANVAS - MARGIN - (y - self.y0) / self.side * (CANVAS - 2.0 * MARGIN)
    }

    fn len(&self, d: f64) -> f64 {
        d / self.side * (CANVAS - 2.0 * MARGIN)
    }
}

fn num(v: f64) -> String {
    let t = format!("{v:.3}");
    if t == "-0.000" {
        String::from("0.000")
    } else {
        t
    }
}

fn fill(class: Classification) -> (&'static str, &'static str) {
    match class {
        Classification::Inside => ("inside", INSIDE_FILL),
        Classification::Straddles => ("straddle", STRADDLE_FILL),
        Classification::Outside => ("outside", OUTSIDE_FILL),
    }
}

/// Classified level-`n` squares in address order. Children of a decided
/// square inherit its class.
fn squares(root: &GridSquare, spec: &CoverSpec, n: u32) -> Vec<(GridSquare, Classification)> {
    fn walk(
        sq: &GridSquare,
        level: u32,
        n: u32,
        known: Option<Classification>,
        spec: &CoverSpec,
        out: &mut Vec<(GridSquare, Classification)>,
    ) {
        let class = known.unwrap_or_else(|| classify_square_vs_region(sq, &spec.region));
        if level == n {
            out.push((sq.clone(), class));
            return;
        }
        let inherited = (class != Classification::Straddles).then_some(class);
        for child in children(sq) {
            walk(&child, level + 1, n, inherited, spec, out);
        }
    }
    let mut out = Vec::new();
    walk(root, 1, n, None, spec, &mut out);
    out
}

/// Maximal runs of `true` in a cyclic (`wrap`) or linear mask, as index pairs.
fn runs(mask: &[bool], wrap: bool) -> Vec<(usize, usize)> {
    let n = mask.len();
    let mut out = Vec::new();
    if mask.iter().all(|&m| m) {
        return vec![(0, n - 1)];
    }
    let start = if wrap { mask.iter().position(|&m| !m).expect("some sample is outside") } else { 0 };
    let mut i = 0;
    while i < n {
        let idx = (start + i) % n;
        if mask[idx] {
            let first = idx;
            let mut last = idx;
            while i + 1 < n && mask[(start + i + 1) % n] {
                i += 1;
                last = (start + i) % n;
            }
            out.push((first, last));
        }
        i += 1;
    }
    out
}

/// Boundary point of `shape` at parameter `t`.
fn boundary_point(shape: &Shape, t: f64) -> (f64, f64) {
    match *shape {
        Shape::Disk { cx, cy, r } => (cx + r * t.cos(), cy + r * t.sin()),
        Shape::HalfPlane { a, b, c } => {
            let norm2 = a * a + b * b;
            let (px, py) = (a * c / norm2, b * c / norm2);
            let len = norm2.sqrt();
            (px - b / len * t, py + a / len * t)
        }
    }
}

/// Parameter runs along the boundary of primitive `i` that lie in the region.
fn visible_pieces(shapes: &[Shape], i: usize, scale: f64, reach: f64) -> Vec<(f64, f64)> {
    let shape = &shapes[i];
    let (lo, hi, wrap) = match shape {
        Shape::Disk { .. } => (0.0, TAU, true),
        Shape::HalfPlane { .. } => (-reach, reach, false),
    };
    let inside = |t: f64| {
        let (x, y) = boundary_point(shape, t);
        shapes.iter().enumerate().all(|(j, s)| j == i || s.contains(x, y, scale))
    };
    let steps = if wrap { SCAN_STEPS } else { SCAN_STEPS + 1 };
    let step = (hi - lo) / SCAN_STEPS as f64;
    let param = |k: usize| lo + step * k as f64;
    let mask: Vec<bool> = (0..steps).map(|k| inside(param(k))).collect();
    if !mask.iter().any(|&m| m) {
        return Vec::new();
    }
    let refine = |mut good: f64, mut bad: f64| {
        for _ in 0..BISECTIONS {
            let mid = 0.5 * (good + bad);
            if inside(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        good
    };
    if wrap && mask.iter().all(|&m| m) {
        return vec![(0.0, TAU)];
    }
    runs(&mask, wrap)
        .into_iter()
        .map(|(first, last)| {
            let start = if wrap || first > 0 {
                refine(param(first), param(first) - step)
            } else {
                param(first)
            };
            let mut end = if wrap || last + 1 < steps {
                refine(param(last), param(last) + step)
            } else {
                param(last)
            };
            if wrap && end < start {
                end += TAU;
            }
            (start, end)
        })
        .collect()
}

pub fn render_svg(spec: &CoverSpec, n: u32) -> Result<String, RenderError> {
    if n == 0 || n > MAX_RENDER_LEVEL {
        return Err(RenderError::Level(n));
    }
    let root = &spec.root;
    let frame = Frame {
        x0: root.x0().to_f64().unwrap_or(0.0),
        y0: root.y0().to_f64().unwrap_or(0.0),
        side: root.side().to_f64().unwrap_or(1.0),
    };
    let height = CANVAS + LEGEND_HEIGHT;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(CANVAS),
        h = num(height)
    );
    let _ = writeln!(out, "<title>{} level {n}</title>", spec.name);
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##, num(CANVAS), num(height));

    let mut tally = [0u64; 3];
    let _ = writeln!(out, r#"<g id="squares" stroke="none">"#);
    for (sq, class) in squares(root, spec, n) {
        let (name, color) = fill(class);
        let (x0, y0, side) = (
            sq.x0().to_f64().unwrap_or(0.0),
            sq.y0().to_f64().unwrap_or(0.0),
            sq.side().to_f64().unwrap_or(0.0),
        );
        let _ = writeln!(
            out,
            r#"<rect class="{name}" x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
            num(frame.px(x0)),
            num(frame.py(y0 + side)),
            num(frame.len(side)),
            num(frame.len(side))
        );
        tally[match class {
            Classification::Inside => 0,
            Classification::Straddles => 1,
            Classification::Outside => 2,
        }] += 1;
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r#"<rect id="root" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{ROOT_STROKE}" stroke-width="{}"/>"#,
        num(frame.px(frame.x0)),
        num(frame.py(frame.y0 + frame.side)),
        num(frame.len(frame.side)),
        num(frame.len(frame.side)),
        num(ROOT_WIDTH)
    );

    let shapes: Vec<Shape> = spec.region.primitives().iter().map(Shape::new).collect();
    let reach = 4.0 * frame.side + frame.x0.abs() + frame.y0.abs();
    let _ = writeln!(
        out,
        r#"<g id="boundary" fill="none" stroke="{BOUNDARY_STROKE}" stroke-width="{}">"#,
        num(BOUNDARY_WIDTH)
    );
    for (i, shape) in shapes.iter().enumerate() {
        for (t0, t1) in visible_pieces(&shapes, i, frame.side, reach) {
            let (class, pieces) = match shape {
                Shape::Disk { .. } => ("arc", ARC_CHORDS),
                Shape::HalfPlane { .. } => ("edge", 1),
            };
            let points: Vec<String> = (0..=pieces)
                .map(|k| {
                    let t = t0 + (t1 - t0) * k as f64 / pieces as f64;
                    let (x, y) = boundary_point(shape, t);
                    format!("{},{}", num(frame.px(x)), num(frame.py(y)))
                })
                .collect();
            let _ = writeln!(out, r#"<polyline class="{class}" points="{}"/>"#, points.join(" "));
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="legend" font-family="sans-serif" font-size="12">"#);
    let entries = [
        ("inside", INSIDE_FILL, tally[0]),
        ("straddle", STRADDLE_FILL, tally[1]),
        ("outside", OUTSIDE_FILL, tally[2]),
    ];
    for (k, (label, color, value)) in entries.into_iter().enumerate() {
        let x = MARGIN + 160.0 * k as f64;
        let y = CANVAS + 8.0;
        let _ = writeln!(
            out,
            r#"<rect class="key" x="{}" y="{}" width="12" height="12" fill="{color}"/>"#,
            num(x),
            num(y)
        );
        let _ = writeln!(out, r#"<text x="{}" y="{}">{label} {value}</text>"#, num(x + 18.0), num(y + 11.0));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
