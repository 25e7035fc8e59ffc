use cantor_bound_core::geometry::Symmetry;
use cantor_bound_core::rational::{int, rat};
use cantor_bound_core::{
    classify_square_vs_primitive, classify_square_vs_region, point_in_region, Classification,
    GridSquare, Point, Primitive, Rational, Region,
};
use proptest::prelude::*;

const SAMPLES: i64 = 1000;

fn rational(range: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-range..=range, 1..=den).prop_map(|(n, d)| rat(n, d))
}

fn square() -> impl Strategy<Value = GridSquare> {
    (rational(40, 20), rational(40, 20), (1i64..=40, 1i64..=20))
        .prop_map(|(x0, y0, (n, d))| GridSquare::new(x0, y0, rat(n, d)).unwrap())
}

fn primitive() -> impl Strategy<Value = Primitive> {
    prop_oneof![
        (rational(40, 20), rational(40, 20), (1i64..=400, 1i64..=100)).prop_map(|(cx, cy, (n, d))| {
            Primitive::disk(Point::new(cx, cy), rat(n, d)).unwrap()
        }),
        (rational(5, 3), rational(5, 3), rational(40, 20))
            .prop_filter("non-degenerate", |(a, b, _)| *a != int(0) || *b != int(0))
            .prop_map(|(a, b, c)| Primitive::half_plane(a, b, c).unwrap()),
    ]
}

fn region() -> impl Strategy<Value = Region> {
    prop::collection::vec(primitive(), 1..4).prop_map(|p| Region::new(p).unwrap())
}

/// Rational points of `sq` on a jittered lattice, corners included.
fn sample_points(sq: &GridSquare, seed: u64) -> Vec<Point> {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % (SAMPLES as u64 + 1)) as i64
    };
    let mut out: Vec<Point> = sq.corners().into_iter().collect();
    while out.len() < SAMPLES as usize {
        let (i, j) = (next(), next());
        out.push(Point::new(
            sq.x0() + sq.side() * rat(i, SAMPLES),
            sq.y0() + sq.side() * rat(j, SAMPLES),
        ));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inside_and_outside_are_sound(sq in square(), reg in region(), seed in any::<u64>()) {
        let class = classify_square_vs_region(&sq, &reg);
        let points = sample_points(&sq, seed);
        match class {
            Classification::Inside => {
                prop_assert!(points.iter().all(|p| point_in_region(p, &reg)));
            }
            Classification::Outside => {
                prop_assert!(points.iter().all(|p| !point_in_region(p, &reg)));
            }
            Classification::Straddles => {}
        }
    }

    #[test]
    fn primitive_classification_is_sound(sq in square(), prim in primitive(), seed in any::<u64>()) {
        let points = sample_points(&sq, seed);
        match classify_square_vs_primitive(&sq, &prim) {
            Classification::Inside => prop_assert!(points.iter().all(|p| prim.contains(p))),
            Classification::Outside => prop_assert!(points.iter().all(|p| !prim.contains(p))),
            Classification::Straddles => {}
        }
    }

    #[test]
    fn classification_is_scale_invariant(sq in square(), reg in region()) {
        let base = classify_square_vs_region(&sq, &reg);
        for lambda in [rat(1, 9), int(1), int(9)] {
            let scaled = classify_square_vs_region(&sq.scaled(&lambda), &reg.scaled(&lambda));
            prop_assert_eq!(scaled, base);
        }
    }

    #[test]
    fn classification_is_symmetry_equivariant(sq in square(), reg in region()) {
        let base = classify_square_vs_region(&sq, &reg);
        let pivot = rat(1, 2);
        for sym in Symmetry::ALL {
            let moved = classify_square_vs_region(
                &sq.transformed(sym, &pivot),
                &reg.transformed(sym, &pivot),
            );
            prop_assert_eq!(moved, base);
        }
    }

    #[test]
    fn classification_is_deterministic(sq in square(), reg in region()) {
        prop_assert_eq!(
            classify_square_vs_region(&sq, &reg),
            classify_square_vs_region(&sq.clone(), &reg.clone())
        );
    }
}

#[test]
fn touching_boundaries_count_as_inside() {
    let unit = GridSquare::unit();
    let disk = Primitive::disk(Point::new(rat(1, 2), rat(1, 2)), rat(1, 2)).unwrap();
    assert_eq!(classify_square_vs_primitive(&unit, &disk), Classification::Inside);
    let tangent = Primitive::disk(Point::new(int(2), rat(1, 2)), int(1)).unwrap();
    assert_eq!(classify_square_vs_primitive(&unit, &tangent), Classification::Straddles);
    let far = Primitive::disk(Point::new(int(3), rat(1, 2)), int(1)).unwrap();
    assert_eq!(classify_square_vs_primitive(&unit, &far), Classification::Outside);
}
