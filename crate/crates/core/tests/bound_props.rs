use cantor_bound_core::bound::cantor_dust_dimension;
use cantor_bound_core::rational::{int, rat};
use cantor_bound_core::{
    hausdorff_dimension, partial_estimation_bound, pow_upper, trivial_diameter_bound, DiameterValue,
    HighFloat, Interval, Rational,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn s() -> HighFloat {
    cantor_dust_dimension()
}

fn exact_diameter() -> impl Strategy<Value = (DiameterValue, f64)> {
    ((1i64..=1000, 1i64..=1000), (1i64..=5000, 1i64..=50)).prop_map(|((sn, sd), (rn, rd))| {
        let scale = rat(sn, sd);
        let radicand = rat(rn, rd);
        let approx = scale.to_f64().unwrap() * radicand.to_f64().unwrap().sqrt();
        (DiameterValue::exact(scale, radicand).unwrap(), approx)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pow_upper_never_undercuts_double_precision((d, approx) in exact_diameter()) {
        let reference = approx.powf(s().to_f64());
        let upper = pow_upper(&d, &s()).unwrap().to_f64();
        prop_assert!(upper >= reference * (1.0 - 4.0 * f64::EPSILON));
        prop_assert!((upper - reference) / reference <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bound_decreases_in_fraction((d, _) in exact_diameter(), num in 1i64..=99, den in 100i64..=1000) {
        let small = rat(num, den);
        let large = rat(num + 1, den);
        let b_small = partial_estimation_bound(&small, &d, &s()).unwrap();
        let b_large = partial_estimation_bound(&large, &d, &s()).unwrap();
        prop_assert!(b_large < b_small);
    }

    #[test]
    fn bound_increases_in_diameter(a in 1i64..=1000, b in 1i64..=1000, num in 1i64..=100) {
        prop_assume!(a != b);
        let (lo, hi) = (a.min(b), a.max(b));
        let f = rat(num, 100);
        let d_lo = DiameterValue::exact(rat(lo, 100), int(2)).unwrap();
        let d_hi = DiameterValue::exact(rat(hi, 100), int(2)).unwrap();
        prop_assert!(
            partial_estimation_bound(&f, &d_lo, &s()).unwrap()
                < partial_estimation_bound(&f, &d_hi, &s()).unwrap()
        );
    }

    #[test]
    fn full_fraction_is_the_trivial_bound((d, _) in exact_diameter()) {
        prop_assert_eq!(
            partial_estimation_bound(&int(1), &d, &s()).unwrap(),
            trivial_diameter_bound(&d, &s()).unwrap()
        );
    }

    #[test]
    fn side_nine_pictures_normalize_exactly((d, _) in exact_diameter(), num in 1i64..=64) {
        let f = rat(num, 64);
        let side_nine = match &d {
            DiameterValue::Exact { scale, radicand } => {
                DiameterValue::exact(scale * int(9), radicand.clone()).unwrap()
            }
            DiameterValue::Interval { .. } => unreachable!(),
        };
        prop_assert_eq!(
            partial_estimation_bound(&f, &side_nine.divided_by(&int(9)), &s()).unwrap(),
            partial_estimation_bound(&f, &d, &s()).unwrap()
        );
    }
}

#[test]
fn dimension_is_a_fixed_point() {
    let s = hausdorff_dimension(4, &rat(1, 3)).unwrap();
    // 4·(1/3)^s = exp(ln 4 - s·ln 3)
    let ln4 = Interval::ln_rational(&int(4)).unwrap();
    let ln3 = Interval::ln_rational(&int(3)).unwrap();
    let value = ln4.sub(&s.enclosure().mul(&ln3)).exp();
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(100));
    assert!(value.hi_rational() - int(1) <= tol);
    assert!(int(1) - value.lo_rational() <= tol);
    assert_eq!(&s.decimal(9), "1.261859507");
}

#[test]
fn interval_diameters_use_their_upper_end() {
    let lo = rat(13213, 10000);
    let hi = rat(13214, 10000);
    let d = DiameterValue::interval(lo, hi.clone()).unwrap();
    let point = DiameterValue::interval(hi.clone(), hi).unwrap();
    assert_eq!(pow_upper(&d, &s()).unwrap(), pow_upper(&point, &s()).unwrap());
}

#[test]
fn bad_inputs_are_rejected() {
    let d = DiameterValue::exact(int(1), int(2)).unwrap();
    assert!(partial_estimation_bound(&int(0), &d, &s()).is_err());
    assert!(partial_estimation_bound(&rat(3, 2), &d, &s()).is_err());
    assert!(DiameterValue::exact(int(0), int(2)).is_err());
    assert!(DiameterValue::interval(int(2), int(1)).is_err());
    assert!(hausdorff_dimension(4, &int(1)).is_err());
    assert!(hausdorff_dimension(0, &rat(1, 3)).is_err());
}
