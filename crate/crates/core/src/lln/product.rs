//! Explicit finite products `Ω₁^n` with the product field.
//!
//! Only used at small `n`; the exact event routines avoid materialising the
//! product.

use super::exact::check_budget;
use crate::error::Result;
use crate::measure::{FieldPartition, FiniteSpace, RandomQuantity};

pub struct ProductSpace {
    space: FiniteSpace,
    field: FieldPartition,
    /// Coordinates of each product point, as indices into `Ω₁`.
    tuples: Vec<Vec<usize>>,
}

impl ProductSpace {
    /// `Ω₁^n` with product weights and atoms `B_1 × ⋯ × B_n`. Labels are the
    /// coordinate labels joined with `,`.
    pub fn new(base: &FiniteSpace, field: &FieldPartition, n: u32, budget: u64) -> Result<Self> {
        check_budget(base.len(), n.into(), budget)?;
        let size = base.len().pow(n);
        let mut tuples = Vec::with_capacity(size);
        for code in 0..size {
            let mut rest = code;
            let mut t = vec![0; n as usize];
            for slot in t.iter_mut().rev() {
                *slot = rest % base.len();
                rest /= base.len();
            }
            tuples.push(t);
        }
        let labels = tuples
            .iter()
            .map(|t| t.iter().map(|&p| base.label(p)).collect::<Vec<_>>().join(","));
        let weights = tuples
            .iter()
            .map(|t| t.iter().map(|&p| base.weight(p).clone()).product());
        let space = FiniteSpace::new(labels, weights)?;

        let k = field.num_blocks();
        let atoms = k.pow(n);
        let mut blocks = vec![Vec::new(); atoms];
        for (i, t) in tuples.iter().enumerate() {
            let atom = t.iter().fold(0, |acc, &p| acc * k + field.block_of(p));
            blocks[atom].push(i);
        }
        let field = FieldPartition::new(&space, blocks)?;
        Ok(Self { space, field, tuples })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn field(&self) -> &FieldPartition {
        &self.field
    }

    pub fn tuple(&self, point: usize) -> &[usize] {
        &self.tuples[point]
    }

    /// `(ω_1, …, ω_n) ↦ f(ω_coord)`, with `coord` zero-based.
    pub fn coordinate(&self, f: &RandomQuantity, coord: usize) -> RandomQuantity {
        RandomQuantity::from_fn(&self.space, |p| f.value(self.tuples[p][coord]).clone())
    }

    /// `(ω_1, …, ω_n) ↦ f(ω_1) + ⋯ + f(ω_n)`.
    pub fn sum(&self, f: &RandomQuantity) -> RandomQuantity {
        RandomQuantity::from_fn(&self.space, |p| self.tuples[p].iter().map(|&q| f.value(q)).sum())
    }
}
