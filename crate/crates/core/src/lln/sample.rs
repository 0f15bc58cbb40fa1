//! Seeded trajectories of `S_n / n`.
//!
//! Coordinate `k` draws a point from the plan's coordinate-`k` law and adds
//! `Ψ(point)`. Each trajectory owns a ChaCha8 stream seeded from
//! `(master seed, trajectory index)`, so batches parallelise without
//! changing results.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::{CoordinateChoice, CoordinatePlan};
use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub seed: u64,
    /// `(n, S_n / n)` at each requested checkpoint, increasing in `n`.
    pub checkpoints: Vec<(u64, f64)>,
}

impl Trajectory {
    pub fn final_mean(&self) -> Option<f64> {
        self.checkpoints.last().map(|&(_, m)| m)
    }

    pub fn mean_at(&self, n: u64) -> Option<f64> {
        self.checkpoints.iter().find(|&&(k, _)| k == n).map(|&(_, m)| m)
    }
}

/// SplitMix64 finaliser applied to `(master, index)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(master ^ mix(index))
}

/// Sorted, deduplicated checkpoints within `[1, n_max]`.
pub fn normalize_checkpoints(n_max: u64, checkpoints: &[u64]) -> Result<Vec<u64>> {
    if n_max == 0 {
        return Err(Error::InvalidHorizon("n_max must be at least 1".into()));
    }
    if let Some(&bad) = checkpoints.iter().find(|&&c| c == 0 || c > n_max) {
        return Err(Error::InvalidHorizon(format!("checkpoint {bad} outside [1, {n_max}]")));
    }
    let mut out = checkpoints.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `Ψ` either as exact integers over a common denominator or as floats.
enum Values {
    Scaled { values: Vec<i64>, denom: f64 },
    Float(Vec<f64>),
}

/// Per-coordinate sampling tables for a plan and horizon, shared by all
/// trajectories of a batch.
pub struct PlanSampler {
    n_max: u64,
    values: Values,
    tables: Vec<WeightedIndex<f64>>,
    /// Table index for coordinate `k` at `[k - 1]`, one sequence per regime.
    sequences: Vec<Vec<u32>>,
    /// Probability of the second sequence (regime mixtures only).
    upper_regime: Option<f64>,
}

impl PlanSampler {
    pub fn new(plan: &CoordinatePlan, n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidHorizon("n_max must be at least 1".into()));
        }
        let psi = plan.scenario().psi();
        let values = match denominator_lcm(psi.values()) {
            Some(l) if l < (1 << 20) => {
                let scaled: Option<Vec<i64>> = psi
                    .values()
                    .iter()
                    .map(|v| (v * Rational::from_integer(BigInt::from(l))).to_integer().to_i64())
                    .collect();
                match scaled {
                    Some(values) if values.iter().all(|v| v.unsigned_abs() < (1 << 24)) => Values::Scaled {
                        values,
                        denom: l as f64,
                    },
                    _ => Values::Float(psi.values().iter().map(to_f64).collect()),
                }
            }
            _ => Values::Float(psi.values().iter().map(to_f64).collect()),
        };

        let mut builder = TableBuilder::default();
        let (sequences, upper_regime) = match plan.regimes() {
            Some((low, high, weight)) => (
                vec![builder.sequence(&low, n_max)?, builder.sequence(&high, n_max)?],
                Some(to_f64(&weight)),
            ),
            None => (vec![builder.sequence(plan, n_max)?], None),
        };
        Ok(Self {
            n_max,
            values,
            tables: builder.tables,
            sequences,
            upper_regime,
        })
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// One trajectory; `checkpoints` must already be normalised.
    pub fn sample(&self, seed: u64, checkpoints: &[u64]) -> Trajectory {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sequence = match self.upper_regime {
            Some(p) if rng.random::<f64>() < p => &self.sequences[1],
            _ => &self.sequences[0],
        };
        let mut out = Vec::with_capacity(checkpoints.len());
        let mut next = checkpoints.iter().peekable();
        match &self.values {
            Values::Scaled { values, denom } => {
                let mut sum: i64 = 0;
                for (i, &t) in sequence.iter().enumerate() {
                    sum += values[self.tables[t as usize].sample(&mut rng)];
                    let n = i as u64 + 1;
                    if next.peek() == Some(&&n) {
                        next.next();
                        out.push((n, sum as f64 / (denom * n as f64)));
                    }
                }
            }
            Values::Float(values) => {
                let mut sum = 0.0f64;
                for (i, &t) in sequence.iter().enumerate() {
                    sum += values[self.tables[t as usize].sample(&mut rng)];
                    let n = i as u64 + 1;
                    if next.peek() == Some(&&n) {
                        next.next();
                        out.push((n, sum / n as f64));
                    }
                }
            }
        }
        Trajectory { seed, checkpoints: out }
    }
}

#[derive(Default)]
struct TableBuilder {
    tables: Vec<WeightedIndex<f64>>,
    index: HashMap<Vec<Rational>, u32>,
}

impl TableBuilder {
    fn table_for(&mut self, masses: Vec<Rational>) -> Result<u32> {
        if let Some(&i) = self.index.get(&masses) {
            return Ok(i);
        }
        let weights: Vec<f64> = masses.iter().map(to_f64).collect();
        let table = WeightedIndex::new(weights)
            .map_err(|e| Error::InvalidHorizon(format!("degenerate coordinate law: {e}")))?;
        let i = self.tables.len() as u32;
        self.tables.push(table);
        self.index.insert(masses, i);
        Ok(i)
    }

    fn sequence(&mut self, plan: &CoordinatePlan, n_max: u64) -> Result<Vec<u32>> {
        let mut by_choice: HashMap<CoordinateChoice, u32> = HashMap::new();
        let mut out = Vec::with_capacity(n_max as usize);
        for k in 1..=n_max {
            let choice = plan.choice(k);
            let idx = match by_choice.get(&choice) {
                Some(&i) => i,
                None => {
                    let i = self.table_for(plan.coordinate_measure(k).point_masses())?;
                    by_choice.insert(choice, i);
                    i
                }
            };
            out.push(idx);
        }
        Ok(out)
    }
}

/// A single trajectory to horizon `n_max`, recording `S_n/n` at `checkpoints`.
pub fn sample_trajectory(plan: &CoordinatePlan, n_max: u64, seed: u64, checkpoints: &[u64]) -> Result<Trajectory> {
    let checkpoints = normalize_checkpoints(n_max, checkpoints)?;
    Ok(PlanSampler::new(plan, n_max)?.sample(seed, &checkpoints))
}

/// `trials` trajectories with seeds `derive_seed(master_seed, i)`, returned
/// in trajectory-index order.
pub fn simulate(
    plan: &CoordinatePlan,
    n_max: u64,
    checkpoints: &[u64],
    trials: usize,
    master_seed: u64,
) -> Result<Vec<Trajectory>> {
    let checkpoints = normalize_checkpoints(n_max, checkpoints)?;
    let sampler = PlanSampler::new(plan, n_max)?;
    Ok((0..trials as u64)
        .into_par_iter()
        .map(|i| sampler.sample(derive_seed(master_seed, i), &checkpoints))
        .collect())
}
