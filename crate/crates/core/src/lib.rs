//! Exact coverage counting and certified upper bounds for the Hausdorff
//! measure of `C × C`, the product of the middle-third Cantor set with itself.
//!
//! The crate is `no_std` and only needs `alloc`. Geometry is decided with
//! exact rationals ([`geometry`]), coverage of the level-`n` Cantor squares is
//! counted exactly ([`grid`]), and bounds of the form `|U|^s / fraction` are
//! evaluated with outward-rounded fixed-point intervals ([`interval`],
//! [`bound`]). [`constructions`] holds the catalog of cover sets and
//! [`optimizer`] the one-parameter searches over them.
//!
//! IO, file formats, the command line and parallel drivers live in the
//! companion `cantor-bound` crate.

#![no_std]

extern crate alloc;

pub mod bound;
pub mod constructions;
pub mod diameter;
pub mod geometry;
pub mod grid;
pub mod interval;
pub mod optimizer;
pub mod rational;

pub use bound::{
    hausdorff_dimension, partial_estimation_bound, pow_upper, trivial_diameter_bound, BoundError,
    BoundValue, DiameterValue, HighFloat, Provenance, UpperBound,
};
pub use constructions::{
    build, catalog, paper_fixture, series_fraction_oracle, Construction, ConstructionError,
    CoverSpec, Fixture, Params,
};
pub use diameter::{verify_diameter, DiameterReport};
pub use geometry::{
    classify_square_vs_primitive, classify_square_vs_region, point_in_region, Classification,
    GeometryError, GridSquare, Point, Primitive, Region,
};
pub use grid::{
    brute_force_coverage, count_coverage, square_for_address, Address, CoverageCount, GridError,
};
pub use interval::Interval;
pub use optimizer::{
    best_integer_k, f_octagon_series, minimize_octagon_series, sweep_disk_radius,
    IntegerOptimum, ObjectiveResult, OptimizerError, SweepRow,
};
pub use rational::Rational;
