mod common;

use nmlln::measure::{
    inner_measure, is_measurable_fn, is_measurable_set, lower_expectation, majorant, measurable_cover,
    measurable_kernel, minorant, outer_measure, upper_expectation, FieldPartition, PointSet, RandomQuantity,
};
use nmlln::rational::{abs, ratio, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inner_and_outer_match_enumeration(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let set = random_set(&mut rng, space.len());
        prop_assert_eq!(inner_measure(&space, &field, &set).unwrap(), brute_inner(&space, &field, &set));
        prop_assert_eq!(outer_measure(&space, &field, &set).unwrap(), brute_outer(&space, &field, &set));
    }

    #[test]
    fn inner_outer_duality(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let set = random_set(&mut rng, space.len());
        let complement: PointSet = (0..space.len()).filter(|p| !set.contains(p)).collect();
        let inner = inner_measure(&space, &field, &set).unwrap();
        let outer = outer_measure(&space, &field, &set).unwrap();
        prop_assert_eq!(&inner + outer_measure(&space, &field, &complement).unwrap(), Rational::one());
        prop_assert!(Rational::zero() <= inner && inner <= outer && outer <= Rational::one());
        prop_assert_eq!(inner == outer, is_measurable_set(&space, &field, &set).unwrap());
        let kernel = measurable_kernel(&field, &set);
        let cover = measurable_cover(&field, &set);
        prop_assert!(kernel.is_subset(&set) && set.is_subset(&cover));
    }

    #[test]
    fn minorant_is_the_largest_measurable_function_below(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let f = random_quantity(&mut rng, space.len());
        let lo = minorant(&space, &field, &f).unwrap();
        let hi = majorant(&space, &field, &f).unwrap();
        prop_assert!(is_measurable_fn(&space, &field, &lo).unwrap());
        prop_assert!(is_measurable_fn(&space, &field, &hi).unwrap());
        for p in 0..space.len() {
            prop_assert!(lo.value(p) <= f.value(p) && f.value(p) <= hi.value(p));
        }
        let g = measurable_below(&mut rng, &field, &f);
        for p in 0..space.len() {
            prop_assert!(g.value(p) <= lo.value(p));
        }
    }

    #[test]
    fn agreement_on_measurable_set_is_inherited(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let f = random_quantity(&mut rng, space.len());
        let b: PointSet = field.blocks().iter().filter(|_| rng.random_bool(0.5)).flatten().copied().collect();
        let g = RandomQuantity::from_fn(&space, |p| if b.contains(&p) { f.value(p).clone() } else { random_value(&mut rng) });
        let (f_lo, g_lo) = (minorant(&space, &field, &f).unwrap(), minorant(&space, &field, &g).unwrap());
        let (f_hi, g_hi) = (majorant(&space, &field, &f).unwrap(), majorant(&space, &field, &g).unwrap());
        for &p in &b {
            prop_assert_eq!(f_lo.value(p), g_lo.value(p));
            prop_assert_eq!(f_hi.value(p), g_hi.value(p));
        }
    }

    #[test]
    fn closeness_is_inherited(seed in any::<u64>(), eps_num in 0i64..8) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let f = random_quantity(&mut rng, space.len());
        let eps = ratio(eps_num, 3);
        let g = RandomQuantity::from_fn(&space, |p| f.value(p) + &eps * ratio(rng.random_range(-5..=5), 5));
        let pairs = [
            (minorant(&space, &field, &f).unwrap(), minorant(&space, &field, &g).unwrap()),
            (majorant(&space, &field, &f).unwrap(), majorant(&space, &field, &g).unwrap()),
        ];
        for (a, b) in &pairs {
            for p in 0..space.len() {
                prop_assert!(abs(&(a.value(p) - b.value(p))) <= eps);
            }
        }
    }

    #[test]
    fn expectation_duality_and_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let f = random_quantity(&mut rng, space.len());
        let lo = lower_expectation(&space, &field, &f).unwrap();
        let hi = upper_expectation(&space, &field, &f).unwrap();
        prop_assert_eq!(&lo, &-upper_expectation(&space, &field, &-&f).unwrap());
        let e = space.expectation(&f).unwrap();
        prop_assert!(lo <= e && e <= hi);
        if is_measurable_fn(&space, &field, &f).unwrap() {
            prop_assert_eq!(lo, hi);
        }
    }

    #[test]
    fn extreme_fields(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let f = random_quantity(&mut rng, space.len());
        let discrete = FieldPartition::discrete(&space);
        let e = space.expectation(&f).unwrap();
        prop_assert_eq!(lower_expectation(&space, &discrete, &f).unwrap(), e.clone());
        prop_assert_eq!(upper_expectation(&space, &discrete, &f).unwrap(), e);
        let trivial = FieldPartition::trivial(&space);
        prop_assert_eq!(&lower_expectation(&space, &trivial, &f).unwrap(), f.min_value().unwrap());
        prop_assert_eq!(&upper_expectation(&space, &trivial, &f).unwrap(), f.max_value().unwrap());
    }

    #[test]
    fn generated_field_is_the_coarsest_making_sets_measurable(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 8);
        let sets: Vec<PointSet> = (0..rng.random_range(0..3)).map(|_| random_set(&mut rng, space.len())).collect();
        let field = FieldPartition::generate(&space, None, &sets).unwrap();
        for s in &sets {
            prop_assert!(is_measurable_set(&space, &field, s).unwrap());
        }
        // Two points share a block iff no generating set separates them.
        for p in 0..space.len() {
            for q in 0..space.len() {
                let together = field.block_of(p) == field.block_of(q);
                let separated = sets.iter().any(|s| s.contains(&p) != s.contains(&q));
                prop_assert_eq!(together, !separated);
            }
        }
    }
}
