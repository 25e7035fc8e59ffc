//! Addressing of the level-`n` squares of `C × C` and exact counting of how
//! many of them a region contains.
//!
//! The root square is level 1. Each level keeps the four corner sub-squares of
//! side `1/3`, i.e. the maps `x -> x/3` and `x -> (x + 2)/3` applied per axis,
//! so level `n` has `4^(n-1)` squares.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::geometry::{classify_square_vs_region, Classification, GridSquare, Region};
use crate::rational::{pow_uint, Rational};

/// Deepest level accepted by [`count_coverage`].
pub const DEFAULT_MAX_LEVEL: u32 = 14;

/// Deepest level accepted by [`brute_force_coverage`] (`4^7 = 16384` squares).
pub const DEFAULT_BRUTE_FORCE_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("level {level} exceeds the cap of {cap}")]
    LevelOverCap { level: u32, cap: u32 },
    #[error("address digit {0} is not in 0..=3")]
    BadDigit(u8),
}

/// Path from the root to one Cantor square. Digit `d` selects the child with
/// `x` bit `d % 2` and `y` bit `d / 2`; a set bit means the far third.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(Vec<u8>);

impl Address {
    pub fn new(digits: Vec<u8>) -> Result<Self, GridError> {
        if let Some(&d) = digits.iter().find(|&&d| d > 3) {
            return Err(GridError::BadDigit(d));
        }
        Ok(Address(digits))
    }

    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn level(&self) -> u32 {
        self.0.len() as u32 + 1
    }

    pub fn child(&self, digit: u8) -> Result<Self, GridError> {
        if digit > 3 {
            return Err(GridError::BadDigit(digit));
        }
        let mut digits = self.0.clone();
        digits.push(digit);
        Ok(Address(digits))
    }
}

/// Child `digit` of a square.
pub fn child_square(sq: &GridSquare, digit: u8) -> GridSquare {
    debug_assert!(digit <= 3);
    let third = sq.side() / Rational::from_integer(3.into());
    let far = &third * Rational::from_integer(2.into());
    let x0 = if digit & 1 == 1 { sq.x0() + &far } else { sq.x0().clone() };
    let y0 = if digit & 2 == 2 { sq.y0() + &far } else { sq.y0().clone() };
    GridSquare::new(x0, y0, third).expect("a third of a positive side is positive")
}

pub fn children(sq: &GridSquare) -> [GridSquare; 4] {
    [child_square(sq, 0), child_square(sq, 1), child_square(sq, 2), child_square(sq, 3)]
}

pub fn square_for_address(root: &GridSquare, addr: &Address) -> GridSquare {
    addr.0.iter().fold(root.clone(), |sq, &d| child_square(&sq, d))
}

/// Exact tallies of the level-`n` squares against a region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverageCount {
    pub level: u32,
    pub total: BigUint,
    pub inside: BigUint,
    pub straddle: BigUint,
    pub outside: BigUint,
}

impl CoverageCount {
    pub fn empty(level: u32) -> Self {
        CoverageCount {
            level,
            total: BigUint::zero(),
            inside: BigUint::zero(),
            straddle: BigUint::zero(),
            outside: BigUint::zero(),
        }
    }

    /// Certified covered fraction `inside / total`.
    pub fn inside_fraction(&self) -> Rational {
        Rational::new(self.inside.clone().into(), self.total.clone().into())
    }

    pub fn is_conserved(&self) -> bool {
        &self.inside + &self.straddle + &self.outside == self.total
    }

    fn tally(&mut self, class: Classification, weight: BigUint) {
        match class {
            Classification::Inside => self.inside += &weight,
            Classification::Outside => self.outside += &weight,
            Classification::Straddles => self.straddle += &weight,
        }
        self.total += weight;
    }
}

impl Add for CoverageCount {
    type Output = CoverageCount;

    fn add(mut self, rhs: CoverageCount) -> CoverageCount {
        self += rhs;
        self
    }
}

impl AddAssign for CoverageCount {
    fn add_assign(&mut self, rhs: CoverageCount) {
        assert_eq!(self.level, rhs.level, "cannot combine counts from different levels");
        self.total += rhs.total;
        self.inside += rhs.inside;
        self.straddle += rhs.straddle;
        self.outside += rhs.outside;
    }
}

/// Rejects level 0 and levels above `cap`.
pub fn check_level(n: u32, cap: u32) -> Result<(), GridError> {
    if n == 0 {
        return Err(GridError::ZeroLevel);
    }
    if n > cap {
        return Err(GridError::LevelOverCap { level: n, cap });
    }
    Ok(())
}

/// Certified coverage of the level-`n` squares of `root` by `region`, with
/// `n <= DEFAULT_MAX_LEVEL`.
pub fn count_coverage(
    root: &GridSquare,
    region: &Region,
    n: u32,
) -> Result<CoverageCount, GridError> {
    count_coverage_capped(root, region, n, DEFAULT_MAX_LEVEL)
}

pub fn count_coverage_capped(
    root: &GridSquare,
    region: &Region,
    n: u32,
    max_level: u32,
) -> Result<CoverageCount, GridError> {
    check_level(n, max_level)?;
    Ok(count_subtree(root, 1, region, n))
}

/// Counts the level-`n` descendants of `sq`, which sits at level `sq_level`.
///
/// Subtree counts for disjoint squares of one level add up to the count of
/// their common ancestor, which is what parallel drivers rely on.
pub fn count_subtree(sq: &GridSquare, sq_level: u32, region: &Region, n: u32) -> CoverageCount {
    assert!(sq_level >= 1 && sq_level <= n, "square level must lie in 1..=n");
    let mut count = CoverageCount::empty(n);
    descend(sq, sq_level, region, n, &mut count);
    count
}

fn descend(sq: &GridSquare, level: u32, region: &Region, n: u32, count: &mut CoverageCount) {
    match classify_square_vs_region(sq, region) {
        Classification::Straddles if level < n => {
            for child in children(sq) {
                descend(&child, level + 1, region, n, count);
            }
        }
        class => count.tally(class, pow_uint(4, n - level)),
    }
}

/// Per-quadrant counts: the subtree counts of the four level-2 squares, in
/// address-digit order. Requires `n >= 2`.
pub fn quadrant_counts(
    root: &GridSquare,
    region: &Region,
    n: u32,
) -> Result<[CoverageCount; 4], GridError> {
    check_level(n, DEFAULT_MAX_LEVEL)?;
    if n < 2 {
        return Err(GridError::ZeroLevel);
    }
    Ok(children(root).map(|child| count_subtree(&child, 2, region, n)))
}

/// Enumerates every level-`n` address without pruning and classifies each
/// square on its own. Independent oracle for [`count_coverage`].
pub fn brute_force_coverage(
    root: &GridSquare,
    region: &Region,
    n: u32,
) -> Result<CoverageCount, GridError> {
    brute_force_coverage_capped(root, region, n, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_coverage_capped(
    root: &GridSquare,
    region: &Region,
    n: u32,
    cap: u32,
) -> Result<CoverageCount, GridError> {
    check_level(n, cap)?;
    let mut count = CoverageCount::empty(n);
    for addr in AddressIter::new(n - 1) {
        let sq = square_for_address(root, &addr);
        count.tally(classify_square_vs_region(&sq, region), BigUint::one());
    }
    Ok(count)
}

/// All addresses of a fixed length in lexicographic order.
#[derive(Debug, Clone)]
pub struct AddressIter {
    next: Option<Vec<u8>>,
}

impl AddressIter {
    pub fn new(len: u32) -> Self {
        AddressIter { next: Some(alloc::vec![0; len as usize]) }
    }
}

impl Iterator for AddressIter {
    type Item = Address;

    fn next(&mut self) -> Option<Address> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let mut carried_out = true;
        while i > 0 {
            i -= 1;
            if succ[i] < 3 {
                succ[i] += 1;
                carried_out = false;
                break;
            }
            succ[i] = 0;
        }
        if !carried_out {
            self.next = Some(succ);
        }
        Some(Address(current))
    }
}
