use abnormal_forge::cf::{
    approx_bound, cf_to_rational, convergent_sign, convergent_stream, cylinder_interval, gauss_measure,
    gauss_measure_with, rational_to_cf, FixedReal, ConvergentState, Rational,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn digits_strategy() -> impl Strategy<Value = Vec<BigUint>> {
    proptest::collection::vec(1u64..2000, 1..25).prop_map(|v| v.into_iter().map(BigUint::from).collect())
}

/// Evaluates `[0; a1, ..., an]` from the innermost term outwards.
fn fold_fraction(digits: &[BigUint]) -> Rational {
    let mut acc = Rational::zero();
    for a in digits.iter().rev() {
        acc = (Rational::from_integer(BigInt::from(a.clone())) + acc).recip();
    }
    acc
}

proptest! {
    #[test]
    fn convergents_match_direct_evaluation(digits in digits_strategy()) {
        for (i, c) in convergent_stream(&digits).enumerate() {
            prop_assert_eq!(c.index, i + 1);
            prop_assert_eq!(c.value(), fold_fraction(&digits[..=i]));
        }
    }

    #[test]
    fn consecutive_convergents_are_unimodular(digits in digits_strategy()) {
        let mut state = ConvergentState::new();
        for a in &digits {
            state.push(a);
            prop_assert!(state.p.gcd(&state.q).is_one());
            let cross = BigInt::from(&state.p * &state.q_prev) - BigInt::from(&state.p_prev * &state.q);
            prop_assert_eq!(cross.abs(), BigInt::one());
        }
    }

    #[test]
    fn round_trip_through_rationals(digits in digits_strategy()) {
        let mut canonical = digits.clone();
        if canonical.len() > 1 && canonical.last().unwrap().is_one() {
            let one = canonical.pop().unwrap();
            *canonical.last_mut().unwrap() += one;
        }
        prop_assume!(!(canonical.len() == 1 && canonical[0].is_one()));
        let x = cf_to_rational(&canonical).unwrap();
        prop_assert_eq!(rational_to_cf(&x).unwrap().to_vec(), canonical);
    }

    #[test]
    fn approximation_error_and_sign(digits in digits_strategy(), tail in 1u64..1000) {
        let mut full = digits.clone();
        full.push(BigUint::from(tail));
        let x = cf_to_rational(&full).unwrap();
        let last = ConvergentState::from_digits(&digits);
        let diff = &x - Rational::new(BigInt::from(last.p.clone()), BigInt::from(last.q.clone()));
        prop_assert!(diff.abs() <= approx_bound(&last.q, &full[digits.len()]).unwrap());
        let sign = if diff.is_positive() { 1 } else { -1 };
        prop_assert_eq!(sign, convergent_sign(digits.len()));
    }

    #[test]
    fn cylinders_nest_and_contain_their_numbers(digits in digits_strategy(), tail in 1u64..1000) {
        let outer = cylinder_interval(&digits).unwrap();
        let mut longer = digits.clone();
        longer.push(BigUint::from(tail));
        let inner = cylinder_interval(&longer).unwrap();
        prop_assert!(outer.lo <= inner.lo && inner.hi <= outer.hi);
        prop_assert!(outer.contains(&cf_to_rational(&longer).unwrap()));
        let q = ConvergentState::from_digits(&digits).q;
        let width = Rational::new(BigInt::one(), BigInt::from(&q * (&q + ConvergentState::from_digits(&digits).q_prev)));
        prop_assert_eq!(outer.width(), width);
    }

    #[test]
    fn measure_is_additive_over_children(digits in proptest::collection::vec(1u64..50, 1..6)) {
        let big: Vec<BigUint> = digits.iter().copied().map(BigUint::from).collect();
        let parent = gauss_measure(&cylinder_interval(&big).unwrap()).unwrap().to_f64();
        let mut children = 0.0;
        for k in 1..=2000u64 {
            let mut child = big.clone();
            child.push(BigUint::from(k));
            children += gauss_measure(&cylinder_interval(&child).unwrap()).unwrap().to_f64();
        }
        // The children past 2000 carry about parent/2000 between them.
        prop_assert!(children <= parent + 1e-12);
        prop_assert!(parent - children < parent * 2.0 / 2000.0 + 1e-12);
    }
}

/// μ(C_[k]) = log2(1 + 1/(k(k+2))) in floating point.
fn reference(k: u64) -> f64 {
    (1.0 / (k as f64 * (k as f64 + 2.0))).ln_1p() / std::f64::consts::LN_2
}

#[test]
fn first_digit_measures_partition_the_unit_interval() {
    const K: u64 = 1_000_000;
    let mut total = 0.0f64;
    for k in 1..=K {
        total += reference(k);
    }
    // Spot-check the exact routine against the float formula along the way.
    for k in [1u64, 2, 3, 10, 1000, K] {
        let mu = gauss_measure(&cylinder_interval(&[BigUint::from(k)]).unwrap()).unwrap().to_f64();
        let float = reference(k);
        assert!((mu - float).abs() <= 1e-9 * float + 2f64.powi(-62), "k={k}: {mu} vs {float}");
    }
    let tail = (1.0 + 1.0 / (K as f64 + 1.0)).log2();
    assert!((total + tail - 1.0).abs() < 1e-9, "sum {total} + tail {tail}");
}

#[test]
fn exact_partition_telescopes() {
    // Σ_{k≤K} μ(C_[k]) = 1 − log2(1 + 1/(K+1)), checked in fixed point.
    let k_max = 2000u64;
    let mut sum = FixedReal::zero(96);
    for k in 1..=k_max {
        sum = sum.add(&gauss_measure_with(
            &Rational::new(BigInt::one(), BigInt::from(k + 1)),
            &Rational::new(BigInt::one(), BigInt::from(k)),
            96,
        )
        .unwrap());
    }
    let rest = gauss_measure_with(&Rational::zero(), &Rational::new(BigInt::one(), BigInt::from(k_max + 1)), 96).unwrap();
    let total = sum.add(&rest).to_f64();
    assert!((total - 1.0).abs() < 1e-15, "{total}");
}

#[test]
fn worked_prefix_convergents() {
    let digits: Vec<BigUint> = [1u64, 2, 3, 1, 1, 2, 555].iter().copied().map(BigUint::from).collect();
    let qs: Vec<BigUint> = convergent_stream(&digits).map(|c| c.q).collect();
    let expect: Vec<BigUint> = [1u64, 3, 10, 13, 23, 59, 32768].iter().copied().map(BigUint::from).collect();
    assert_eq!(qs, expect);
}
