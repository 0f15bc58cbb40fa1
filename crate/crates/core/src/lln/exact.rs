//! Exact finite-horizon computations: inner/outer probabilities of
//! weak-law events, plan probabilities via the distribution of `S_n`, the
//! expected-mean profile `β_n / n` and the variance-sum diagnostic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use super::plan::{CoordinateChoice, CoordinatePlan};
use super::scenario::Scenario;
use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// Default cap on `|Ω₁|^n` for exact enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Inner and outer probability of an event in `Ω₁^n` with respect to the
/// product of the base measure on the product field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventBounds {
    pub inner: Rational,
    pub outer: Rational,
}

impl EventBounds {
    /// Positive weights make this equivalent to `E ≠ ∅`.
    pub fn is_nonempty(&self) -> bool {
        !self.outer.is_zero()
    }

    /// Positive weights make this equivalent to `E ≠ Ω₁^n`.
    pub fn is_proper(&self) -> bool {
        !self.inner.is_one()
    }
}

/// The weak-law deviation event `{|S_n/n - center| > epsilon}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationEvent {
    pub n: u64,
    pub center: Rational,
    pub epsilon: Rational,
}

impl DeviationEvent {
    pub fn new(n: u64, center: Rational, epsilon: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHorizon("n must be at least 1".into()));
        }
        if epsilon <= Rational::zero() {
            return Err(Error::NotPositive {
                what: "epsilon",
                value: epsilon,
            });
        }
        Ok(Self { n, center, epsilon })
    }

    /// Whether a sum `S_n` lies in the event.
    pub fn contains_sum(&self, sum: &Rational) -> bool {
        let n = Rational::from_integer(self.n.into());
        let dev = sum - &self.center * &n;
        let limit = &self.epsilon * n;
        dev > limit || dev < -limit
    }
}

pub(crate) fn check_budget(points: usize, n: u64, budget: u64) -> Result<()> {
    let required = Pow::pow(BigUint::from(points), n);
    if required > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            required: required.to_string(),
            budget,
        });
    }
    Ok(())
}

/// `{v_1 + ... + v_c : v_i ∈ values}`.
fn repeated_sumset(values: &BTreeSet<Rational>, copies: u64) -> BTreeSet<Rational> {
    let mut acc: BTreeSet<Rational> = [Rational::zero()].into();
    for _ in 0..copies {
        acc = minkowski(&acc, values);
    }
    acc
}

fn minkowski(a: &BTreeSet<Rational>, b: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// Exact inner and outer probability of `{|S_n/n - center| > epsilon}`.
///
/// The product atoms are `B_1 × ⋯ × B_n`; an atom's possible sums depend
/// only on how many coordinates fall in each base block, so the atoms are
/// grouped by block counts and weighted by multinomial coefficients.
pub fn exact_event_bounds(scenario: &Scenario, event: &DeviationEvent, budget: u64) -> Result<EventBounds> {
    check_budget(scenario.space().len(), event.n, budget)?;
    let space = scenario.space();
    let field = scenario.field();
    let masses = field.block_masses(space);
    let value_sets: Vec<BTreeSet<Rational>> = field
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&p| scenario.psi().value(p).clone()).collect())
        .collect();

    let mut sumsets: BTreeMap<(usize, u64), BTreeSet<Rational>> = BTreeMap::new();
    let mut inner = Rational::zero();
    let mut outer = Rational::zero();
    let mut counts = vec![0u64; masses.len()];
    let mut visit = |counts: &[u64]| {
        let mut sums: BTreeSet<Rational> = [Rational::zero()].into();
        let mut prob = Rational::one();
        let mut remaining = event.n;
        for (b, &c) in counts.iter().enumerate() {
            let part = sumsets
                .entry((b, c))
                .or_insert_with(|| repeated_sumset(&value_sets[b], c));
            sums = minkowski(&sums, part);
            prob *= Rational::from_integer(binomial(remaining, c)) * Pow::pow(&masses[b], c);
            remaining -= c;
        }
        let hits = sums.iter().filter(|s| event.contains_sum(s)).count();
        if hits == sums.len() {
            inner += &prob;
        }
        if hits > 0 {
            outer += &prob;
        }
    };
    for_each_composition(event.n, &mut counts, 0, &mut visit);
    Ok(EventBounds { inner, outer })
}

fn for_each_composition(remaining: u64, counts: &mut [u64], at: usize, visit: &mut impl FnMut(&[u64])) {
    if at + 1 == counts.len() {
        counts[at] = remaining;
        visit(counts);
        return;
    }
    for c in 0..=remaining {
        counts[at] = c;
        for_each_composition(remaining - c, counts, at + 1, visit);
    }
}

/// Exact law of `S_n = Ψ(ω_1) + ⋯ + Ψ(ω_n)` under the plan's product
/// measure (a two-component mixture for regime mixtures).
pub fn sum_distribution(plan: &CoordinatePlan, n: u64) -> BTreeMap<Rational, Rational> {
    if let Some((low, high, weight)) = plan.regimes() {
        let mut out = BTreeMap::new();
        let keep = Rational::one() - &weight;
        for (dist, w) in [(sum_distribution(&low, n), keep), (sum_distribution(&high, n), weight)] {
            for (s, p) in dist {
                *out.entry(s).or_insert_with(Rational::zero) += p * &w;
            }
        }
        out.retain(|_, p: &mut Rational| !p.is_zero());
        return out;
    }
    let psi = plan.scenario().psi();
    let mut dist: BTreeMap<Rational, Rational> = [(Rational::zero(), Rational::one())].into();
    for k in 1..=n {
        let mut step: BTreeMap<&Rational, Rational> = BTreeMap::new();
        for (p, m) in plan.coordinate_measure(k).point_masses().into_iter().enumerate() {
            if !m.is_zero() {
                *step.entry(psi.value(p)).or_insert_with(Rational::zero) += m;
            }
        }
        let mut next = BTreeMap::new();
        for (s, p) in &dist {
            for (v, q) in &step {
                *next.entry(s + *v).or_insert_with(Rational::zero) += p * q;
            }
        }
        dist = next;
    }
    dist
}

/// Exact probability of the deviation event under `plan`.
pub fn exact_plan_event_prob(plan: &CoordinatePlan, event: &DeviationEvent, budget: u64) -> Result<Rational> {
    check_budget(plan.scenario().space().len(), event.n, budget)?;
    Ok(sum_distribution(plan, event.n)
        .into_iter()
        .filter(|(s, _)| event.contains_sum(s))
        .map(|(_, p)| p)
        .sum())
}

/// `(n, β_n / n)` for `n = 1..=n_max`, with `β_n` the sum of the exact
/// coordinate means.
pub fn expected_mean_profile(plan: &CoordinatePlan, n_max: u64) -> Vec<(u64, Rational)> {
    let all: Vec<u64> = (1..=n_max).collect();
    expected_mean_at(plan, &all)
}

/// `β_n / n` at the requested (sorted or unsorted) indices only.
pub fn expected_mean_at(plan: &CoordinatePlan, ns: &[u64]) -> Vec<(u64, Rational)> {
    let wanted: BTreeSet<u64> = ns.iter().copied().filter(|&n| n > 0).collect();
    let Some(&last) = wanted.iter().next_back() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(wanted.len());
    let mut beta = Rational::zero();
    let mut means: Vec<(CoordinateChoice, Rational)> = Vec::new();
    // Runs of coordinates with the same law are added in one step.
    let mut run: Option<(Rational, u64)> = None;
    for k in 1..=last {
        let choice = plan.choice(k);
        let mean = match means.iter().find(|(c, _)| *c == choice) {
            Some((_, m)) => m.clone(),
            None => {
                let m = plan.coordinate_mean(k);
                means.push((choice, m.clone()));
                m
            }
        };
        match &mut run {
            Some((m, count)) if *m == mean => *count += 1,
            _ => {
                flush(&mut beta, run.take());
                run = Some((mean, 1));
            }
        }
        if wanted.contains(&k) {
            flush(&mut beta, run.take());
            out.push((k, &beta / Rational::from_integer(k.into())));
        }
    }
    out
}

fn flush(beta: &mut Rational, run: Option<(Rational, u64)>) {
    if let Some((mean, count)) = run {
        *beta += mean * Rational::from_integer(count.into());
    }
}

/// Variance of `Ψ(ω_k)` under the coordinate-`k` marginal.
pub fn coordinate_variance(plan: &CoordinatePlan, k: u64) -> Rational {
    let psi = plan.scenario().psi();
    let masses = plan.coordinate_measure(k).point_masses();
    let mean: Rational = masses.iter().zip(psi.values()).map(|(m, v)| m * v).sum();
    let second: Rational = masses.iter().zip(psi.values()).map(|(m, v)| m * v * v).sum();
    second - &mean * &mean
}

/// Partial sums `Σ_{k ≤ n} Var[Y_k] / k²` for `n = 1..=n_max`.
pub fn variance_sum_diagnostic(plan: &CoordinatePlan, n_max: u64) -> Vec<Rational> {
    let mut variances: Vec<(CoordinateChoice, Rational)> = Vec::new();
    let mut out = Vec::with_capacity(n_max as usize);
    let mut acc = Rational::zero();
    for k in 1..=n_max {
        let choice = plan.choice(k);
        let var = match variances.iter().find(|(c, _)| *c == choice) {
            Some((_, v)) => v.clone(),
            None => {
                let v = coordinate_variance(plan, k);
                variances.push((choice, v.clone()));
                v
            }
        };
        acc += var / Rational::from_integer((k * k).into());
        out.push(acc.clone());
    }
    out
}
