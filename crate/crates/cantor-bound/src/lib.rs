//! Command-line reports, region files, parallel counting, run records and
//! SVG figures on top of [`cantor_bound_core`].

pub mod cli;
pub mod config;
pub mod format;
pub mod parallel;
pub mod record;
pub mod report;
pub mod svg;

pub use cantor_bound_core as core;
