//! Finite probability spaces, sub-σ-fields given by their atoms, inner and
//! outer measures, measurable minorants/majorants and lower/upper
//! expectations.
//!
//! Every point carries strictly positive mass, so "almost surely" and
//! "everywhere" coincide and all of the usual identities can be checked with
//! exact equality.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A set of points, identified by their index in a [`FiniteSpace`].
pub type PointSet = BTreeSet<usize>;

/// Labeled points with exact positive weights summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    weights: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl FiniteSpace {
    pub fn new<L, W>(labels: L, weights: W) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        W: IntoIterator<Item = Rational>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let weights: Vec<Rational> = weights.into_iter().collect();
        if labels.len() != weights.len() {
            return Err(Error::LengthMismatch {
                labels: labels.len(),
                weights: weights.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        for (label, w) in labels.iter().zip(&weights) {
            if w.is_zero() {
                return Err(Error::ZeroWeight { label: label.clone() });
            }
            if w.is_negative() {
                return Err(Error::NegativeWeight {
                    label: label.clone(),
                    weight: w.clone(),
                });
            }
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::WeightSum { sum });
        }
        Ok(Self { labels, weights, index })
    }

    /// Equal weight on every label.
    pub fn uniform<L>(labels: L) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let w = Rational::new(1.into(), labels.len().into());
        let weights = vec![w; labels.len()];
        Self::new(labels, weights)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> &str {
        &self.labels[point]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> &Rational {
        &self.weights[point]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Resolves labels to a [`PointSet`].
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn full_set(&self) -> PointSet {
        (0..self.len()).collect()
    }

    /// Total weight of a set of points.
    pub fn mass(&self, set: &PointSet) -> Result<Rational> {
        self.check_set(set)?;
        Ok(set.iter().map(|&p| &self.weights[p]).sum())
    }

    pub(crate) fn check_set(&self, set: &PointSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&max) if max >= self.len() => Err(Error::PointOutOfRange {
                index: max,
                len: self.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Plain expectation of `f` with respect to the point weights.
    pub fn expectation(&self, f: &RandomQuantity) -> Result<Rational> {
        f.check_domain(self)?;
        Ok(self.weights.iter().zip(f.values()).map(|(w, v)| w * v).sum())
    }
}

/// A sub-σ-field of a finite space, stored as its atom partition.
///
/// Blocks are kept in canonical order (sorted internally, ordered by their
/// smallest point) so structural equality is equality of σ-fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl FieldPartition {
    /// Validates that `blocks` partition the points of `space`.
    pub fn new(space: &FiniteSpace, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_blocks(space.len(), blocks)
    }

    pub(crate) fn from_blocks(len: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; len];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            block.dedup();
        }
        blocks.sort_by_key(|b| b[0]);
        for (bi, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= len {
                    return Err(Error::PointOutOfRange { index: p, len });
                }
                if block_of[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "point {p} appears in more than one block"
                    )));
                }
                block_of[p] = bi;
            }
        }
        if let Some(p) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("point {p} is not covered")));
        }
        Ok(Self { blocks, block_of })
    }

    pub fn from_labels<S: AsRef<str>>(space: &FiniteSpace, blocks: &[Vec<S>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|l| space.index_of(l.as_ref())).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(space, blocks)
    }

    /// The trivial field `{∅, Ω}`.
    pub fn trivial(space: &FiniteSpace) -> Self {
        Self {
            blocks: vec![(0..space.len()).collect()],
            block_of: vec![0; space.len()],
        }
    }

    /// The power set.
    pub fn discrete(space: &FiniteSpace) -> Self {
        Self {
            blocks: (0..space.len()).map(|p| vec![p]).collect(),
            block_of: (0..space.len()).collect(),
        }
    }

    /// Finest partition whose unions contain every generating set (and every
    /// block of `base`, when given): points share a block iff they agree on
    /// membership in all of them.
    pub fn generate(space: &FiniteSpace, base: Option<&FieldPartition>, sets: &[PointSet]) -> Result<Self> {
        for set in sets {
            space.check_set(set)?;
        }
        if let Some(base) = base {
            base.check_space(space)?;
        }
        let mut groups: BTreeMap<(usize, Vec<bool>), Vec<usize>> = BTreeMap::new();
        for p in 0..space.len() {
            let base_block = base.map_or(0, |b| b.block_of[p]);
            let signature = sets.iter().map(|s| s.contains(&p)).collect();
            groups.entry((base_block, signature)).or_default().push(p);
        }
        Self::from_blocks(space.len(), groups.into_values().collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_points(&self) -> usize {
        self.block_of.len()
    }

    /// Index of the block containing `point`.
    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    /// Base measure of every block.
    pub fn block_masses(&self, space: &FiniteSpace) -> Vec<Rational> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&p| space.weight(p)).sum())
            .collect()
    }

    /// True iff every block of `self` is contained in a block of `coarser`.
    pub fn refines(&self, coarser: &FieldPartition) -> bool {
        self.num_points() == coarser.num_points()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&p| coarser.block_of[p] == coarser.block_of[b[0]]))
    }

    pub(crate) fn check_space(&self, space: &FiniteSpace) -> Result<()> {
        if self.num_points() != space.len() {
            return Err(Error::DomainMismatch {
                expected: space.len(),
                found: self.num_points(),
            });
        }
        Ok(())
    }
}

/// An exact-rational-valued function on the points of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RandomQuantity {
    values: Vec<Rational>,
}

impl RandomQuantity {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn from_fn(space: &FiniteSpace, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..space.len()).map(f).collect())
    }

    pub fn constant(space: &FiniteSpace, value: Rational) -> Self {
        Self::new(vec![value; space.len()])
    }

    /// Indicator of a set.
    pub fn indicator(space: &FiniteSpace, set: &PointSet) -> Self {
        Self::from_fn(space, |p| {
            if set.contains(&p) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, point: usize) -> &Rational {
        &self.values[point]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map(&self, f: impl FnMut(&Rational) -> Rational) -> Self {
        Self::new(self.values.iter().map(f).collect())
    }

    pub fn min_value(&self) -> Option<&Rational> {
        self.values.iter().min()
    }

    pub fn max_value(&self) -> Option<&Rational> {
        self.values.iter().max()
    }

    /// `max |f|`, zero for an empty function.
    pub fn max_abs(&self) -> Rational {
        self.values.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn check_domain(&self, space: &FiniteSpace) -> Result<()> {
        if self.values.len() != space.len() {
            return Err(Error::DomainMismatch {
                expected: space.len(),
                found: self.values.len(),
            });
        }
        Ok(())
    }
}

impl std::ops::Neg for &RandomQuantity {
    type Output = RandomQuantity;

    fn neg(self) -> RandomQuantity {
        self.map(|v| -v)
    }
}

fn check(space: &FiniteSpace, field: &FieldPartition) -> Result<()> {
    field.check_space(space)
}

/// The union of the blocks contained in `set` (the measurable kernel).
pub fn measurable_kernel(field: &FieldPartition, set: &PointSet) -> PointSet {
    field
        .blocks()
        .iter()
        .filter(|b| b.iter().all(|p| set.contains(p)))
        .flatten()
        .copied()
        .collect()
}

/// The union of the blocks meeting `set` (the measurable cover).
pub fn measurable_cover(field: &FieldPartition, set: &PointSet) -> PointSet {
    field
        .blocks()
        .iter()
        .filter(|b| b.iter().any(|p| set.contains(p)))
        .flatten()
        .copied()
        .collect()
}

/// `P_*(H)`: mass of the blocks wholly inside `set`.
pub fn inner_measure(space: &FiniteSpace, field: &FieldPartition, set: &PointSet) -> Result<Rational> {
    check(space, field)?;
    space.check_set(set)?;
    space.mass(&measurable_kernel(field, set))
}

/// `P^*(H)`: mass of the blocks meeting `set`.
pub fn outer_measure(space: &FiniteSpace, field: &FieldPartition, set: &PointSet) -> Result<Rational> {
    check(space, field)?;
    space.check_set(set)?;
    space.mass(&measurable_cover(field, set))
}

fn blockwise(
    space: &FiniteSpace,
    field: &FieldPartition,
    f: &RandomQuantity,
    pick: impl Fn(&Vec<usize>) -> Rational,
) -> Result<RandomQuantity> {
    check(space, field)?;
    f.check_domain(space)?;
    let per_block: Vec<Rational> = field.blocks().iter().map(pick).collect();
    Ok(RandomQuantity::from_fn(space, |p| per_block[field.block_of(p)].clone()))
}

/// Maximal measurable minorant `f_*`: the block-wise minimum of `f`.
pub fn minorant(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<RandomQuantity> {
    blockwise(space, field, f, |b| {
        b.iter()
            .map(|&p| f.value(p))
            .min()
            .expect("blocks are nonempty")
            .clone()
    })
}

/// Minimal measurable majorant `f^*`: the block-wise maximum of `f`.
pub fn majorant(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<RandomQuantity> {
    blockwise(space, field, f, |b| {
        b.iter()
            .map(|&p| f.value(p))
            .max()
            .expect("blocks are nonempty")
            .clone()
    })
}

/// `E_*[f] = E[f_*]`.
pub fn lower_expectation(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<Rational> {
    space.expectation(&minorant(space, field, f)?)
}

/// `E^*[f] = E[f^*]`.
pub fn upper_expectation(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<Rational> {
    space.expectation(&majorant(space, field, f)?)
}

/// A set is measurable iff it is a union of blocks.
pub fn is_measurable_set(space: &FiniteSpace, field: &FieldPartition, set: &PointSet) -> Result<bool> {
    check(space, field)?;
    space.check_set(set)?;
    Ok(field.blocks().iter().all(|b| {
        let inside = set.contains(&b[0]);
        b.iter().all(|p| set.contains(p) == inside)
    }))
}

/// A function is measurable iff it is constant on every block.
pub fn is_measurable_fn(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<bool> {
    check(space, field)?;
    f.check_domain(space)?;
    Ok(field
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&p| f.value(p) == f.value(b[0]))))
}
