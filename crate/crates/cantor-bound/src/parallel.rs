//! Coverage counting split over the squares of a fixed level and run on the
//! rayon pool. Partial counts are merged in address order.

use cantor_bound_core::grid::{check_level, count_subtree, AddressIter, DEFAULT_MAX_LEVEL};
use cantor_bound_core::{square_for_address, CoverageCount, GridError, GridSquare, Region};
use rayon::prelude::*;

/// Depth of the address prefixes handed out as work items (64 subtrees).
pub const SPLIT_DEPTH: u32 = 3;

pub fn count_coverage_parallel(
    root: &GridSquare,
    region: &Region,
    n: u32,
) -> Result<CoverageCount, GridError> {
    check_level(n, DEFAULT_MAX_LEVEL)?;
    let depth = SPLIT_DEPTH.min(n - 1);
    let prefixes: Vec<_> = AddressIter::new(depth).collect();
    let parts: Vec<CoverageCount> = prefixes
        .par_iter()
        .map(|addr| count_subtree(&square_for_address(root, addr), depth + 1, region, n))
        .collect();
    Ok(parts.into_iter().fold(CoverageCount::empty(n), |acc, c| acc + c))
}
