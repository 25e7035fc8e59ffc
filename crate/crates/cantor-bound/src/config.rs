//! Region files: a root square, a list of primitives and a claimed diameter,
//! with every rational written as `"p"`, `"p/q"` or a decimal.
//!
//! ```json
//! { "root": {"x0": "0", "y0": "0", "side": "1"},
//!   "primitives": [ {"kind": "disk", "cx": "1/2", "cy": "1/2", "r2": "145/338"},
//!                   {"kind": "halfplane", "a": "1", "b": "1", "c": "2/27", "sense": "ge"} ],
//!   "diameter": {"kind": "sqrt", "radicand": "290", "scale": "1/13"} }
//! ```
//!
//! The region is the intersection of the primitives with the root square.

use std::fs;
use std::path::Path;

use cantor_bound_core::rational::{exact_text, parse_rational, ParseRationalError};
use cantor_bound_core::{CoverSpec, DiameterValue, GridSquare, Primitive, Rational, Region};
use serde::{Deserialize, Serialize};

use crate::format::exact_decimal_or_ratio;

pub const DEFAULT_LEVEL: u32 = 8;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed region file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {source}")]
    Rational { field: &'static str, source: ParseRationalError },
    #[error(transparent)]
    Geometry(#[from] cantor_bound_core::GeometryError),
    #[error(transparent)]
    Bound(#[from] cantor_bound_core::BoundError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub root: RootSpec,
    pub primitives: Vec<PrimitiveSpec>,
    pub diameter: DiameterSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSpec {
    pub x0: String,
    pub y0: String,
    pub side: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    #[default]
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PrimitiveSpec {
    Disk { cx: String, cy: String, r2: String },
    Halfplane {
        a: String,
        b: String,
        c: String,
        #[serde(default)]
        sense: Sense,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DiameterSpec {
    Sqrt {
        radicand: String,
        #[serde(default = "one_text")]
        scale: String,
    },
    Interval { lo: String, hi: String },
}

fn one_text() -> String {
    String::from("1")
}

fn field(field: &'static str, text: &str) -> Result<Rational, ConfigError> {
    parse_rational(text).map_err(|source| ConfigError::Rational { field, source })
}

impl RegionFile {
    pub fn to_cover_spec(&self) -> Result<CoverSpec, ConfigError> {
        let root = GridSquare::new(
            field("root.x0", &self.root.x0)?,
            field("root.y0", &self.root.y0)?,
            field("root.side", &self.root.side)?,
        )?;
        let extra = self
            .primitives
            .iter()
            .map(|p| match p {
                PrimitiveSpec::Disk { cx, cy, r2 } => Ok(Primitive::disk(
                    cantor_bound_core::Point::new(field("cx", cx)?, field("cy", cy)?),
                    field("r2", r2)?,
                )?),
                PrimitiveSpec::Halfplane { a, b, c, sense } => {
                    let (a, b, c) = (field("a", a)?, field("b", b)?, field("c", c)?);
                    Ok(match sense {
                        Sense::Le => Primitive::half_plane(a, b, c)?,
                        Sense::Ge => Primitive::half_plane_ge(a, b, c)?,
                    })
                }
            })
            .collect::<Result<Vec<_>, ConfigError>>()?;
        let region = Region::clipped_to(&root, extra)?;
        let diameter = match &self.diameter {
            DiameterSpec::Sqrt { radicand, scale } => {
                DiameterValue::exact(field("scale", scale)?, field("radicand", radicand)?)?
            }
            DiameterSpec::Interval { lo, hi } => {
                DiameterValue::interval(field("lo", lo)?, field("hi", hi)?)?
            }
        };
        let name = self.name.clone().unwrap_or_else(|| String::from("custom"));
        Ok(CoverSpec::custom(name, root, region, diameter, self.level.unwrap_or(DEFAULT_LEVEL)))
    }

    /// The file describing `spec`. The root's own sides are left implicit.
    pub fn from_cover_spec(spec: &CoverSpec) -> Self {
        let root_sides = spec.root.as_primitives();
        let primitives = spec
            .region
            .primitives()
            .iter()
            .filter(|p| !root_sides.contains(p))
            .map(|p| match p {
                Primitive::Disk { center, r2 } => PrimitiveSpec::Disk {
                    cx: exact_text(&center.x),
                    cy: exact_text(&center.y),
                    r2: exact_text(r2),
                },
                Primitive::HalfPlane { a, b, c } => PrimitiveSpec::Halfplane {
                    a: exact_text(a),
                    b: exact_text(b),
                    c: exact_text(c),
                    sense: Sense::Le,
                },
            })
            .collect();
        let diameter = match &spec.diameter {
            DiameterValue::Exact { scale, radicand } => {
                DiameterSpec::Sqrt { radicand: exact_text(radicand), scale: exact_text(scale) }
            }
            DiameterValue::Interval { lo, hi } => {
                DiameterSpec::Interval { lo: exact_decimal_or_ratio(lo), hi: exact_decimal_or_ratio(hi) }
            }
        };
        RegionFile {
            name: Some(spec.name.clone()),
            level: Some(spec.recommended_level),
            root: RootSpec {
                x0: exact_text(spec.root.x0()),
                y0: exact_text(spec.root.y0()),
                side: exact_text(spec.root.side()),
            },
            primitives,
            diameter,
        }
    }
}

pub fn parse_region(text: &str) -> Result<CoverSpec, ConfigError> {
    serde_json::from_str::<RegionFile>(text)?.to_cover_spec()
}

pub fn load_region(path: &Path) -> Result<CoverSpec, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|source| ConfigError::Read { path: path.display().to_string(), source })?;
    parse_region(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cantor_bound_core::build;
    use cantor_bound_core::rational::{int, rat};

    const SAMPLE: &str = r#"{ "root": {"x0": "0", "y0": "0", "side": "1"},
        "primitives": [ {"kind": "disk", "cx": "1/2", "cy": "1/2", "r2": "145/338"},
                        {"kind": "halfplane", "a": "1", "b": "1", "c": "2/27", "sense": "ge"} ],
        "diameter": {"kind": "sqrt", "radicand": "290", "scale": "1/13"} }"#;

    #[test]
    fn sample_file_loads() {
        let spec = parse_region(SAMPLE).unwrap();
        assert_eq!(spec.name, "custom");
        assert_eq!(spec.region.primitives().len(), 6);
        assert_eq!(spec.diameter, DiameterValue::exact(rat(1, 13), int(290)).unwrap());
        assert_eq!(
            spec.region.primitives()[5],
            Primitive::half_plane(int(-1), int(-1), rat(-2, 27)).unwrap()
        );
    }

    #[test]
    fn interval_diameters_accept_decimals() {
        let text = SAMPLE.replace(
            r#"{"kind": "sqrt", "radicand": "290", "scale": "1/13"}"#,
            r#"{"kind": "interval", "lo": "1.3213", "hi": "1.3214"}"#,
        );
        let spec = parse_region(&text).unwrap();
        assert_eq!(spec.diameter, DiameterValue::interval(rat(13213, 10000), rat(13214, 10000)).unwrap());
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(parse_region("{}").is_err());
        assert!(parse_region(&SAMPLE.replace("145/338", "1/0")).is_err());
        assert!(parse_region(&SAMPLE.replace("\"ge\"", "\"gt\"")).is_err());
        assert!(parse_region(&SAMPLE.replace("\"disk\"", "\"ellipse\"")).is_err());
    }

    #[test]
    fn catalog_entries_round_trip() {
        for name in cantor_bound_core::catalog() {
            let spec = build(name, None).unwrap();
            let file = RegionFile::from_cover_spec(&spec);
            let text = serde_json::to_string(&file).unwrap();
            let back = parse_region(&text).unwrap();
            assert_eq!(RegionFile::from_cover_spec(&back), file, "{name}");
            assert_eq!(
                cantor_bound_core::count_coverage(&back.root, &back.region, 6).unwrap(),
                cantor_bound_core::count_coverage(&spec.root, &spec.region, 6).unwrap(),
                "{name}"
            );
            assert_eq!(back.diameter, spec.diameter, "{name}");
            assert_eq!(back.recommended_level, spec.recommended_level);
        }
    }
}
