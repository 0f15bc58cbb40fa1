//! Extensions of a base measure to refined σ-fields.
//!
//! The constructors here are the finite-space versions of the classical
//! existence results: for a simple `f` there are extensions under which `f`
//! coincides almost surely with its minorant (resp. majorant), and for any
//! set `A` and any `α` between its inner and outer measure there is an
//! extension giving `A` mass exactly `α`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::{
    inner_measure, is_measurable_fn, outer_measure, FieldPartition, FiniteSpace, PointSet, RandomQuantity,
};
use crate::rational::Rational;

/// A probability measure on a refinement of `base_field`, given by its mass
/// on each block of the refined `field`.
///
/// Refined blocks may carry zero mass. Whether the measure actually extends
/// the base measure is checked by [`is_extension`]; the constructors in this
/// module always produce extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionMeasure {
    space: FiniteSpace,
    field: FieldPartition,
    weights: Vec<Rational>,
    base_field: FieldPartition,
}

impl ExtensionMeasure {
    /// Wraps raw block masses. Requires nonnegative masses summing to one on
    /// a field that refines `base_field`.
    pub fn from_weights(
        space: &FiniteSpace,
        field: FieldPartition,
        weights: Vec<Rational>,
        base_field: FieldPartition,
    ) -> Result<Self> {
        field.check_space(space)?;
        base_field.check_space(space)?;
        if weights.len() != field.num_blocks() {
            return Err(Error::DomainMismatch {
                expected: field.num_blocks(),
                found: weights.len(),
            });
        }
        if !field.refines(&base_field) {
            return Err(Error::InvalidPartition("field does not refine the base field".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::out_of_bounds(
                "block mass",
                w.clone(),
                Rational::zero(),
                Rational::one(),
            ));
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::WeightSum { sum });
        }
        Ok(Self {
            space: space.clone(),
            field,
            weights,
            base_field,
        })
    }

    /// The base measure itself, viewed as a (trivial) extension on `field`.
    pub fn base(space: &FiniteSpace, field: &FieldPartition) -> Result<Self> {
        field.check_space(space)?;
        Ok(Self {
            space: space.clone(),
            field: field.clone(),
            weights: field.block_masses(space),
            base_field: field.clone(),
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn field(&self) -> &FieldPartition {
        &self.field
    }

    pub fn base_field(&self) -> &FieldPartition {
        &self.base_field
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Mass of a set that is a union of refined blocks.
    pub fn measure_of(&self, set: &PointSet) -> Result<Rational> {
        self.space.check_set(set)?;
        let mut total = Rational::zero();
        for (block, w) in self.field.blocks().iter().zip(&self.weights) {
            let inside = set.contains(&block[0]);
            if block.iter().any(|p| set.contains(p) != inside) {
                return Err(Error::NotMeasurable);
            }
            if inside {
                total += w;
            }
        }
        Ok(total)
    }

    /// Expectation of a function measurable on the refined field.
    pub fn expectation(&self, f: &RandomQuantity) -> Result<Rational> {
        if !is_measurable_fn(&self.space, &self.field, f)? {
            return Err(Error::NotMeasurable);
        }
        Ok(self
            .field
            .blocks()
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| w * f.value(b[0]))
            .sum())
    }

    /// Per-point masses, splitting each refined block's mass in proportion
    /// to the base weights of its points.
    ///
    /// This is one further extension to the discrete field; it is what the
    /// samplers draw from.
    pub fn point_masses(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.space.len()];
        for (block, w) in self.field.blocks().iter().zip(&self.weights) {
            if w.is_zero() {
                continue;
            }
            let block_mass: Rational = block.iter().map(|&p| self.space.weight(p)).sum();
            for &p in block {
                out[p] = w * self.space.weight(p) / &block_mass;
            }
        }
        out
    }

    /// Expectation of any `f` under [`Self::point_masses`].
    pub fn point_expectation(&self, f: &RandomQuantity) -> Result<Rational> {
        f.check_domain(&self.space)?;
        Ok(self.point_masses().iter().zip(f.values()).map(|(m, v)| m * v).sum())
    }
}

/// Finest refinement of `field` on whose blocks `f` is constant.
pub fn refined_field(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<FieldPartition> {
    field.check_space(space)?;
    f.check_domain(space)?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for block in field.blocks() {
        let mut levels: Vec<(&Rational, Vec<usize>)> = Vec::new();
        for &p in block {
            match levels.iter_mut().find(|(v, _)| *v == f.value(p)) {
                Some((_, pts)) => pts.push(p),
                None => levels.push((f.value(p), vec![p])),
            }
        }
        blocks.extend(levels.into_iter().map(|(_, pts)| pts));
    }
    FieldPartition::new(space, blocks)
}

#[derive(Clone, Copy)]
enum Corner {
    Min,
    Max,
}

fn extend_corner(
    space: &FiniteSpace,
    field: &FieldPartition,
    f: &RandomQuantity,
    corner: Corner,
) -> Result<ExtensionMeasure> {
    let refined = refined_field(space, field, f)?;
    let base_masses = field.block_masses(space);
    let mut weights = vec![Rational::zero(); refined.num_blocks()];
    for (bi, block) in field.blocks().iter().enumerate() {
        let values = block.iter().map(|&p| f.value(p));
        let target = match corner {
            Corner::Min => values.min(),
            Corner::Max => values.max(),
        }
        .expect("blocks are nonempty");
        let mut winners: Vec<usize> = block
            .iter()
            .filter(|&&p| f.value(p) == target)
            .map(|&p| refined.block_of(p))
            .collect();
        winners.sort_unstable();
        winners.dedup();
        let share = &base_masses[bi] / Rational::from_integer(winners.len().into());
        for rb in winners {
            weights[rb] += &share;
        }
    }
    Ok(ExtensionMeasure {
        space: space.clone(),
        field: refined,
        weights,
        base_field: field.clone(),
    })
}

/// Extension on `refined_field(field, f)` under which `f = f_*` almost surely.
pub fn extend_min(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<ExtensionMeasure> {
    extend_corner(space, field, f, Corner::Min)
}

/// Extension on `refined_field(field, f)` under which `f = f^*` almost surely.
pub fn extend_max(space: &FiniteSpace, field: &FieldPartition, f: &RandomQuantity) -> Result<ExtensionMeasure> {
    extend_corner(space, field, f, Corner::Max)
}

/// Extension to `σ(field ∪ {set})` giving `set` mass exactly `alpha`.
///
/// Realised as the mixture of the two corner extensions of the indicator of
/// `set`; requires `P_*(set) ≤ alpha ≤ P^*(set)`.
pub fn extend_by_set(
    space: &FiniteSpace,
    field: &FieldPartition,
    set: &PointSet,
    alpha: &Rational,
) -> Result<ExtensionMeasure> {
    let lower = inner_measure(space, field, set)?;
    let upper = outer_measure(space, field, set)?;
    if alpha < &lower || alpha > &upper {
        return Err(Error::out_of_bounds("alpha", alpha.clone(), lower, upper));
    }
    let indicator = RandomQuantity::indicator(space, set);
    let low = extend_min(space, field, &indicator)?;
    let high = extend_max(space, field, &indicator)?;
    let u = if lower == upper {
        Rational::zero()
    } else {
        (alpha - &lower) / (&upper - &lower)
    };
    mix(&low, &high, &u)
}

/// Block-wise convex combination `(1 - a)·q0 + a·q1`.
pub fn mix(q0: &ExtensionMeasure, q1: &ExtensionMeasure, a: &Rational) -> Result<ExtensionMeasure> {
    if a.is_negative() || a > &Rational::one() {
        return Err(Error::out_of_bounds(
            "mixture weight",
            a.clone(),
            Rational::zero(),
            Rational::one(),
        ));
    }
    if q0.field != q1.field || q0.base_field != q1.base_field || q0.space != q1.space {
        return Err(Error::FieldMismatch);
    }
    let keep = Rational::one() - a;
    let weights = q0
        .weights
        .iter()
        .zip(&q1.weights)
        .map(|(w0, w1)| &keep * w0 + a * w1)
        .collect();
    Ok(ExtensionMeasure {
        space: q0.space.clone(),
        field: q0.field.clone(),
        weights,
        base_field: q0.base_field.clone(),
    })
}

/// True iff `q` is a probability on a refinement of `base_field` whose mass
/// on every base block equals that block's base measure.
pub fn is_extension(q: &ExtensionMeasure, space: &FiniteSpace, base_field: &FieldPartition) -> bool {
    if &q.space != space || base_field.num_points() != space.len() || !q.field.refines(base_field) {
        return false;
    }
    if q.weights.iter().any(|w| w.is_negative()) {
        return false;
    }
    let mut aggregated = vec![Rational::zero(); base_field.num_blocks()];
    for (block, w) in q.field.blocks().iter().zip(&q.weights) {
        aggregated[base_field.block_of(block[0])] += w;
    }
    aggregated == base_field.block_masses(space)
}
