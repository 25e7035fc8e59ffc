use cantor_bound_core::constructions::{limiting_fraction, Construction};
use cantor_bound_core::grid::{count_subtree, quadrant_counts, AddressIter};
use cantor_bound_core::rational::{int, pow_uint};
use cantor_bound_core::{
    brute_force_coverage, build, catalog, count_coverage, square_for_address, CoverageCount, Params,
};
use num_bigint::BigUint;
use num_traits::Zero;

#[test]
fn pruned_count_matches_brute_force() {
    for name in catalog() {
        let spec = build(name, None).unwrap();
        for n in 1..=7 {
            let pruned = count_coverage(&spec.root, &spec.region, n).unwrap();
            let brute = brute_force_coverage(&spec.root, &spec.region, n).unwrap();
            assert_eq!(pruned, brute, "{name} at level {n}");
        }
    }
}

#[test]
fn pruned_count_matches_brute_force_for_series_orders() {
    for k in 2..=5 {
        let params = Params::from([("k".to_string(), int(k))]);
        let spec = build("octagon-series", Some(&params)).unwrap();
        for n in 1..=7 {
            assert_eq!(
                count_coverage(&spec.root, &spec.region, n).unwrap(),
                brute_force_coverage(&spec.root, &spec.region, n).unwrap(),
                "k = {k}, level {n}"
            );
        }
    }
}

#[test]
fn octagon_fixed_level_four() {
    let spec = build("octagon-fixed", None).unwrap();
    let c = count_coverage(&spec.root, &spec.region, 4).unwrap();
    assert_eq!(
        (c.inside, c.straddle, c.outside),
        (BigUint::from(60u32), BigUint::from(4u32), BigUint::zero())
    );
}

#[test]
fn circle_big_level_four_regression() {
    let spec = build("circle-big", None).unwrap();
    // The circle passes exactly through (2/27, 0) and its images, so only
    // the four extreme corner squares straddle.
    let c = brute_force_coverage(&spec.root, &spec.region, 4).unwrap();
    assert_eq!(
        (c.inside, c.straddle, c.outside),
        (BigUint::from(60u32), BigUint::from(4u32), BigUint::zero())
    );
}

#[test]
fn counts_are_conserved() {
    for name in catalog() {
        let spec = build(name, None).unwrap();
        for n in 1..=12 {
            let c = count_coverage(&spec.root, &spec.region, n).unwrap();
            assert!(c.is_conserved());
            assert_eq!(c.total, pow_uint(4, n - 1));
        }
    }
}

#[test]
fn certified_fraction_is_monotone() {
    for name in catalog() {
        let spec = build(name, None).unwrap();
        let mut prev = int(0);
        for n in 1..=10 {
            let f = count_coverage(&spec.root, &spec.region, n).unwrap().inside_fraction();
            assert!(f >= prev, "{name}: level {n} fraction dropped");
            prev = f;
        }
    }
}

#[test]
fn symmetric_regions_split_evenly_into_quadrants() {
    for c in Construction::ALL.into_iter().filter(|c| c.is_dihedral_symmetric()) {
        let spec = build(c.name(), None).unwrap();
        for n in 2..=10 {
            let total = count_coverage(&spec.root, &spec.region, n).unwrap();
            let four = BigUint::from(4u32);
            assert!((&total.straddle % &four).is_zero(), "{c} straddle at {n}");
            assert!((&total.outside % &four).is_zero(), "{c} outside at {n}");
            let q = quadrant_counts(&spec.root, &spec.region, n).unwrap();
            assert!(q.iter().all(|x| *x == q[0]), "{c} quadrants at {n}");
        }
    }
}

#[test]
fn series_fraction_stays_below_limit() {
    for k in 2..=4 {
        let params = Params::from([("k".to_string(), int(k as i64))]);
        let spec = build("octagon-series", Some(&params)).unwrap();
        let limit = limiting_fraction(k);
        for n in 1..=12 {
            let f = count_coverage(&spec.root, &spec.region, n).unwrap().inside_fraction();
            assert!(f <= limit, "k = {k}, level {n}");
        }
    }
}

#[test]
fn any_partition_sums_to_the_same_count() {
    let spec = build("circle-series", None).unwrap();
    let n = 8;
    let whole = count_coverage(&spec.root, &spec.region, n).unwrap();
    for depth in 1..=3 {
        let mut parts: Vec<CoverageCount> = AddressIter::new(depth)
            .map(|addr| {
                let sq = square_for_address(&spec.root, &addr);
                count_subtree(&sq, depth + 1, &spec.region, n)
            })
            .collect();
        parts.reverse();
        let merged = parts.into_iter().fold(CoverageCount::empty(n), |acc, c| acc + c);
        assert_eq!(merged, whole, "partition depth {depth}");
    }
}

#[test]
fn levels_over_the_cap_are_rejected() {
    let spec = build("circle-big", None).unwrap();
    assert!(count_coverage(&spec.root, &spec.region, 15).is_err());
    assert!(brute_force_coverage(&spec.root, &spec.region, 9).is_err());
    assert!(count_coverage(&spec.root, &spec.region, 0).is_err());
}
