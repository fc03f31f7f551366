#![allow(dead_code)]

use bottforge::bott::{
    dotted_dominant_traced, inversion_length, is_singular_by_coordinates, BottOutcome,
    SelectionPolicy,
};
use bottforge::rep::{
    alt_power_irrep, decompose_character, expand, freudenthal_multiplicities, irrep_sum_dimension,
    sym_power_irrep, tensor_irreps, weyl_dimension, IrrepSum,
};
use bottforge::{LeviBundle, Quadric, RootSystemB, Weight};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn weight_any(n: usize, bound: i64) -> impl Strategy<Value = Weight> {
    (any::<bool>(), prop::collection::vec(-bound..=bound, n)).prop_map(|(half, v)| {
        let doubled = v.into_iter().map(|x| 2 * x + i64::from(half)).collect();
        Weight::from_doubled(doubled).unwrap()
    })
}

/// Dominant weight of `B_n` with doubled coordinates at most `2 * bound + 1`.
pub fn weight_dominant(n: usize, bound: i64) -> impl Strategy<Value = Weight> {
    (any::<bool>(), prop::collection::vec(0..=bound, n)).prop_map(|(half, mut v)| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::from_doubled(v.into_iter().map(|x| 2 * x + i64::from(half)).collect()).unwrap()
    })
}

/// Levi-dominant weight of `B_3`: free charge, dominant `B_2` part.
pub fn weight_levi_dominant() -> impl Strategy<Value = Weight> {
    (any::<bool>(), -7i64..=7, 0i64..=3, 0i64..=3).prop_map(|(half, c, a, b)| {
        let h = i64::from(half);
        let (a, b) = (a.max(b), a.min(b));
        Weight::from_doubled(vec![2 * c + h, 2 * a + h, 2 * b + h]).unwrap()
    })
}

pub fn bundle() -> impl Strategy<Value = LeviBundle> {
    prop::collection::vec((weight_levi_dominant(), 1u64..=2), 1..=3).prop_map(|parts| {
        let q = Quadric::q5();
        parts.into_iter().fold(LeviBundle::zero(), |acc, (w, m)| {
            acc.direct_sum(&q.irreducible(w).unwrap().scaled(m))
        })
    })
}

pub fn rs(n: usize) -> RootSystemB {
    RootSystemB::new(n).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Regular case of the coordinate description of the dotted action in type B:
/// the dominant representative of `lambda + rho` sorts absolute values.
pub fn sorted_abs_oracle(n: usize, lambda: &Weight) -> Option<Weight> {
    let r = rs(n);
    if is_singular_by_coordinates(&r, lambda) {
        return None;
    }
    let mut v: Vec<i64> = lambda
        .add(r.rho())
        .doubled()
        .iter()
        .map(|x| x.abs())
        .collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Some(Weight::from_doubled(v).unwrap().sub(r.rho()))
}

pub fn truncate(w: &Weight, n: usize) -> Weight {
    Weight::from_doubled(w.doubled()[..n].to_vec()).unwrap()
}

pub type Check = Result<(), TestCaseError>;

pub fn check_bott_order_independent(w: &Weight) -> Check {
    let n = w.rank();
    let r = rs(n);
    let a = dotted_dominant_traced(&r, w, SelectionPolicy::SmallestIndex).unwrap();
    let b = dotted_dominant_traced(&r, w, SelectionPolicy::LargestIndex).unwrap();
    prop_assert_eq!(&a.outcome, &b.outcome);
    prop_assert_eq!(a.outcome.is_singular(), is_singular_by_coordinates(&r, w));
    match &a.outcome {
        BottOutcome::Singular => prop_assert_eq!(inversion_length(&r, w), None),
        BottOutcome::Regular { dominant, length } => {
            prop_assert_eq!(inversion_length(&r, w), Some(*length));
            prop_assert!(r.is_g_dominant(dominant));
            prop_assert_eq!(Some(dominant.clone()), sorted_abs_oracle(n, w));
        }
    }
    Ok(())
}

pub fn check_serre_duality(b: &LeviBundle) -> Check {
    let report = Quadric::q5().serre_check(b);
    prop_assert!(report.passed(), "{} {:?}", b, report.degrees);
    Ok(())
}

pub fn check_freudenthal_mass(n: usize, w: &Weight) -> Check {
    let w = truncate(w, n);
    let r = rs(n);
    let ch = freudenthal_multiplicities(&r, &w).unwrap();
    prop_assert_eq!(ch.dimension(), weyl_dimension(&r, &w).unwrap());
    prop_assert!(ch.is_weyl_invariant());
    prop_assert_eq!(ch.multiplicity(&w), 1);
    Ok(())
}

pub fn check_tensor_dimensions(n: usize, a: &Weight, b: &Weight) -> Check {
    let r = rs(n);
    let (a, b) = (truncate(a, n), truncate(b, n));
    let prod = tensor_irreps(&r, &a, &b).unwrap();
    prop_assert_eq!(
        irrep_sum_dimension(&r, &prod).unwrap(),
        weyl_dimension(&r, &a).unwrap() * weyl_dimension(&r, &b).unwrap()
    );
    prop_assert_eq!(prod.get(&a.add(&b)).copied(), Some(1));
    prop_assert_eq!(&*prod, &*tensor_irreps(&r, &b, &a).unwrap());
    Ok(())
}

pub fn check_sym_alt_dimensions(n: usize, w: &Weight, k: usize) -> Check {
    let r = rs(n);
    let w = truncate(w, n);
    let d = weyl_dimension(&r, &w).unwrap();
    prop_assume!(d <= 35);
    let s = sym_power_irrep(&r, k, &w).unwrap();
    let a = alt_power_irrep(&r, k, &w).unwrap();
    prop_assert_eq!(
        irrep_sum_dimension(&r, &s).unwrap(),
        binomial(d + k as u64 - 1, k as u64)
    );
    prop_assert_eq!(irrep_sum_dimension(&r, &a).unwrap(), binomial(d, k as u64));
    Ok(())
}

pub fn check_decompose_inverts_expand(n: usize, parts: &[(Weight, u64)]) -> Check {
    let r = rs(n);
    let mut sum = IrrepSum::new();
    for (w, m) in parts {
        *sum.entry(truncate(w, n)).or_insert(0) += m;
    }
    prop_assume!(irrep_sum_dimension(&r, &sum).unwrap() <= 500);
    let ch = expand(&r, &sum).unwrap();
    prop_assert_eq!(decompose_character(&r, &ch).unwrap(), sum);
    Ok(())
}
