#![allow(dead_code)]

use nmlln::measure::{FieldPartition, FiniteSpace, PointSet, RandomQuantity};
use nmlln::rational::{int, ratio, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive integer weights normalised to sum 1.
pub fn random_space<R: Rng>(rng: &mut R, max_points: usize) -> FiniteSpace {
    let n = rng.random_range(1..=max_points);
    let raw: Vec<i64> = (0..n).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    FiniteSpace::new(labels, raw.iter().map(|&w| ratio(w, total))).unwrap()
}

pub fn random_field<R: Rng>(rng: &mut R, space: &FiniteSpace, max_blocks: usize) -> FieldPartition {
    let k = rng.random_range(1..=max_blocks.min(space.len()));
    let mut blocks = vec![Vec::new(); k];
    for p in 0..space.len() {
        blocks[rng.random_range(0..k)].push(p);
    }
    blocks.retain(|b| !b.is_empty());
    FieldPartition::new(space, blocks).unwrap()
}

pub fn random_set<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

pub fn random_value<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.random_range(-6..=6), rng.random_range(1..=3))
}

pub fn random_quantity<R: Rng>(rng: &mut R, n: usize) -> RandomQuantity {
    RandomQuantity::new((0..n).map(|_| random_value(rng)).collect())
}

/// Values in `0..=max`, integers only.
pub fn random_integer_quantity<R: Rng>(rng: &mut R, n: usize, max: i64) -> RandomQuantity {
    RandomQuantity::new((0..n).map(|_| int(rng.random_range(0..=max))).collect())
}

/// Every union of blocks, as point sets.
pub fn block_unions(field: &FieldPartition) -> Vec<PointSet> {
    let k = field.num_blocks();
    (0u32..1 << k)
        .map(|mask| {
            (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .flat_map(|b| field.blocks()[b].iter().copied())
                .collect()
        })
        .collect()
}

pub fn mass(space: &FiniteSpace, set: &PointSet) -> Rational {
    set.iter().fold(Rational::zero(), |acc, &p| acc + space.weight(p))
}

/// Largest mass of a block union inside `set`.
pub fn brute_inner(space: &FiniteSpace, field: &FieldPartition, set: &PointSet) -> Rational {
    block_unions(field)
        .into_iter()
        .filter(|u| u.is_subset(set))
        .map(|u| mass(space, &u))
        .max()
        .unwrap()
}

/// Smallest mass of a block union containing `set`.
pub fn brute_outer(space: &FiniteSpace, field: &FieldPartition, set: &PointSet) -> Rational {
    block_unions(field)
        .into_iter()
        .filter(|u| set.is_subset(u))
        .map(|u| mass(space, &u))
        .min()
        .unwrap()
}

/// A field-measurable function below `f`: block minimum minus a random slack.
pub fn measurable_below<R: Rng>(rng: &mut R, field: &FieldPartition, f: &RandomQuantity) -> RandomQuantity {
    let mut values = vec![Rational::zero(); f.len()];
    for block in field.blocks() {
        let m = block.iter().map(|&p| f.value(p)).min().unwrap().clone();
        let v = m - ratio(rng.random_range(0..=2), 2);
        for &p in block {
            values[p] = v.clone();
        }
    }
    RandomQuantity::new(values)
}
