//! Empirical two-extension certificates for limit events of `S_n / n`.
//!
//! An event that has probability one under one extension of the product
//! measure and probability zero under another has inner measure zero and
//! outer measure one. Limits are not observable at a finite horizon, so each
//! event is replaced by a surrogate evaluated on simulated trajectories;
//! the surrogates are spelled out in every report.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::plan::CoordinatePlan;
use super::sample::{simulate, Trajectory};
use super::scenario::Scenario;
use super::schedule::{make_schedule, BlockSchedule, ScheduleKind};
use crate::error::{Error, Result};
use crate::rational::{format, to_f64, Rational};

/// Frequency at or above which a plan witnesses "probability one".
pub const HIGH_FREQUENCY: f64 = 0.95;
/// Frequency at or below which a plan witnesses "probability zero".
pub const LOW_FREQUENCY: f64 = 0.05;

/// Serialized under the same names as [`EventKind::name`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventKind {
    /// `liminf S_n/n ∈ A`
    #[serde(rename = "liminf-in-A", alias = "liminf-in-a")]
    LiminfInA,
    /// `limsup S_n/n ∈ A`
    #[serde(rename = "limsup-in-A", alias = "limsup-in-a")]
    LimsupInA,
    /// `lim S_n/n` exists and lies in `A`
    #[serde(rename = "lim-exists-in-A", alias = "lim-exists-in-a")]
    LimExistsInA,
    /// `lim S_n/n` exists
    #[serde(rename = "lim-exists")]
    LimExists,
    /// every limit point of `S_n/n` lies in `A`
    #[serde(rename = "all-limit-points-in-A", alias = "all-limit-points-in-a")]
    AllLimitPointsInA,
}

impl EventKind {
    pub const ALL: [EventKind; 5] = [
        EventKind::LiminfInA,
        EventKind::LimsupInA,
        EventKind::LimExistsInA,
        EventKind::LimExists,
        EventKind::AllLimitPointsInA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EventKind::LiminfInA => "liminf-in-A",
            EventKind::LimsupInA => "limsup-in-A",
            EventKind::LimExistsInA => "lim-exists-in-A",
            EventKind::LimExists => "lim-exists",
            EventKind::AllLimitPointsInA => "all-limit-points-in-A",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown event kind {name:?}")))
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite union of closed intervals with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSet {
    intervals: Vec<(Rational, Rational)>,
}

impl TargetSet {
    /// Sorts and merges the intervals; rejects `lo > hi`.
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Result<Self> {
        if let Some((lo, hi)) = intervals.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::Parse(format!(
                "interval [{}, {}] is empty",
                format(lo),
                format(hi)
            )));
        }
        let mut sorted = intervals;
        sorted.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in sorted {
            match merged.last_mut() {
                Some((_, last_hi)) if lo <= *last_hi => {
                    if hi > *last_hi {
                        *last_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Ok(Self { intervals: merged })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            intervals: vec![(x.clone(), x)],
        }
    }

    pub fn interval(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }

    pub fn distance(&self, x: &Rational) -> Option<Rational> {
        self.intervals
            .iter()
            .map(|(lo, hi)| {
                if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    Rational::zero()
                }
            })
            .min()
    }

    /// Float distance, `+∞` for the empty set.
    pub fn distance_f64(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|(lo, hi)| {
                let (lo, hi) = (to_f64(lo), to_f64(hi));
                if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Requires a nonempty proper subset of `[lower, upper]`.
    pub fn check_proper_subset(&self, lower: &Rational, upper: &Rational) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Hypothesis("A is empty".into()));
        }
        let (first_lo, _) = &self.intervals[0];
        let (_, last_hi) = self.intervals.last().expect("nonempty");
        if first_lo < lower || last_hi > upper {
            return Err(Error::Hypothesis(format!(
                "A is not contained in [{}, {}]",
                format(lower),
                format(upper)
            )));
        }
        if self.intervals.len() == 1 && first_lo == lower && last_hi == upper {
            return Err(Error::Hypothesis(format!(
                "A equals [{}, {}] and is not a proper subset",
                format(lower),
                format(upper)
            )));
        }
        Ok(())
    }

    /// A point of `A`: the midpoint of its first interval.
    pub fn inside_point(&self) -> Option<Rational> {
        self.intervals
            .first()
            .map(|(lo, hi)| (lo + hi) / Rational::from_integer(2.into()))
    }

    /// The point of `[lower, upper] \ A` farthest from `A`, among the two
    /// endpoints and the midpoints of the gaps between intervals.
    pub fn outside_point(&self, lower: &Rational, upper: &Rational) -> Option<Rational> {
        let two = Rational::from_integer(2.into());
        let mut candidates = vec![lower.clone(), upper.clone()];
        let mut edges = vec![lower.clone()];
        for (lo, hi) in &self.intervals {
            edges.push(lo.clone());
            edges.push(hi.clone());
        }
        edges.push(upper.clone());
        for pair in edges.chunks(2) {
            if let [a, b] = pair {
                candidates.push((a + b) / &two);
            }
        }
        let mut best: Option<(Rational, Rational)> = None;
        for c in candidates {
            if &c < lower || &c > upper || self.contains(&c) {
                continue;
            }
            let d = self.distance(&c).unwrap_or_else(Rational::zero);
            if best.as_ref().is_none_or(|(bd, _)| d >= *bd) {
                best = Some((d, c));
            }
        }
        best.map(|(_, c)| c)
    }
}

impl fmt::Display for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(lo, hi)| {
                if lo == hi {
                    format!("{{{}}}", format(lo))
                } else {
                    format!("[{}, {}]", format(lo), format(hi))
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            f.write_str(&parts.join(" ∪ "))
        }
    }
}

/// Finite-horizon stand-ins for the limit events.
#[derive(Debug, Clone, PartialEq)]
pub struct Surrogate {
    pub n_max: u64,
    /// Membership band `3·(max Ψ − min Ψ)/√n_max` around `A`.
    pub tolerance: f64,
    /// Divergence when the tail range of `S_n/n` exceeds `(E^* − E_*)/2`.
    pub divergence_threshold: f64,
    /// First checkpoint of the tail, `a_2` of the schedule.
    pub tail_start: u64,
    pub checkpoints: Vec<u64>,
}

impl Surrogate {
    pub fn new(scenario: &Scenario, schedule: &BlockSchedule, n_max: u64) -> Result<Self> {
        let tail_start = schedule
            .term(2)
            .ok_or_else(|| Error::InvalidSchedule("schedule has no a_2".into()))?;
        if n_max <= tail_start {
            return Err(Error::InvalidHorizon(format!(
                "n_max = {n_max} must exceed a_2 = {tail_start}"
            )));
        }
        let spread = to_f64(&(scenario.psi_max() - scenario.psi_min()));
        let gap = to_f64(&(scenario.upper() - scenario.lower()));
        let mut checkpoints: Vec<u64> = schedule.block_ends_upto(n_max).into_iter().map(|(_, a)| a).collect();
        checkpoints.extend((0..64).map(|i| 1u64 << i).take_while(|&p| p <= n_max));
        checkpoints.push(n_max);
        checkpoints.sort_unstable();
        checkpoints.dedup();
        Ok(Self {
            n_max,
            tolerance: 3.0 * spread / (n_max as f64).sqrt(),
            divergence_threshold: gap / 2.0,
            tail_start,
            checkpoints,
        })
    }

    pub fn diverges(&self, trajectory: &Trajectory) -> bool {
        let tail = trajectory
            .checkpoints
            .iter()
            .filter(|&&(n, _)| n >= self.tail_start)
            .map(|&(_, m)| m);
        let (lo, hi) = tail.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| (lo.min(m), hi.max(m)));
        hi - lo > self.divergence_threshold
    }

    pub fn near(&self, trajectory: &Trajectory, set: &TargetSet) -> bool {
        trajectory
            .final_mean()
            .is_some_and(|m| set.distance_f64(m) <= self.tolerance)
    }

    pub fn holds(&self, kind: EventKind, trajectory: &Trajectory, set: &TargetSet) -> bool {
        match kind {
            EventKind::LiminfInA | EventKind::LimsupInA | EventKind::AllLimitPointsInA => self.near(trajectory, set),
            EventKind::LimExistsInA => !self.diverges(trajectory) && self.near(trajectory, set),
            EventKind::LimExists => !self.diverges(trajectory),
        }
    }

    pub fn describe(&self, kind: EventKind) -> String {
        let membership = format!("|S_n/n - A| <= {:.6} at n = {}", self.tolerance, self.n_max);
        let convergence = format!(
            "max - min of S_n/n over checkpoints n >= {} is at most {:.6}",
            self.tail_start, self.divergence_threshold
        );
        match kind {
            EventKind::LiminfInA | EventKind::LimsupInA | EventKind::AllLimitPointsInA => membership,
            EventKind::LimExistsInA => format!("{convergence} and {membership}"),
            EventKind::LimExists => convergence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlanRole {
    /// Constant mixture converging to a point of `A`.
    InsideTarget,
    /// Block-alternating plan whose means oscillate.
    Diverging,
    /// Constant mixture converging to a point outside `A`.
    OutsideTarget,
}

impl PlanRole {
    pub fn symbol(self) -> &'static str {
        match self {
            PlanRole::InsideTarget => "P'",
            PlanRole::Diverging => "P''",
            PlanRole::OutsideTarget => "P'''",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub role: PlanRole,
    pub plan: String,
    pub target: Option<Rational>,
    pub hits: usize,
    pub trials: usize,
}

impl PlanOutcome {
    pub fn frequency(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.hits as f64 / self.trials as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifySettings {
    pub n_max: u64,
    pub trials: usize,
    pub master_seed: u64,
    pub schedule: ScheduleKind,
}

impl Default for CertifySettings {
    fn default() -> Self {
        Self {
            n_max: 10_000,
            trials: 200,
            master_seed: 0,
            schedule: ScheduleKind::Factorial { start: 20 },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub kind: EventKind,
    pub set: TargetSet,
    pub lower: Rational,
    pub upper: Rational,
    pub surrogate: Surrogate,
    pub master_seed: u64,
    pub outcomes: Vec<PlanOutcome>,
}

impl CertificateReport {
    /// Index of a plan with frequency at least [`HIGH_FREQUENCY`].
    pub fn high_witness(&self) -> Option<usize> {
        self.outcomes.iter().position(|o| o.frequency() >= HIGH_FREQUENCY)
    }

    /// Index of a plan with frequency at most [`LOW_FREQUENCY`].
    pub fn low_witness(&self) -> Option<usize> {
        self.outcomes.iter().position(|o| o.frequency() <= LOW_FREQUENCY)
    }

    pub fn is_certified(&self) -> bool {
        self.high_witness().is_some() && self.low_witness().is_some()
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "event: {}", self.kind)?;
        writeln!(f, "A = {}", self.set)?;
        writeln!(f, "[E_*, E^*] = [{}, {}]", format(&self.lower), format(&self.upper))?;
        writeln!(
            f,
            "horizon: n_max = {}, master seed = {}",
            self.surrogate.n_max, self.master_seed
        )?;
        writeln!(f, "surrogate: {}", self.surrogate.describe(self.kind))?;
        for o in &self.outcomes {
            let target = o
                .target
                .as_ref()
                .map(|t| format!(", target {}", format(t)))
                .unwrap_or_default();
            writeln!(
                f,
                "{:<5} {}{}: {}/{} = {:.4}",
                o.role.symbol(),
                o.plan,
                target,
                o.hits,
                o.trials,
                o.frequency()
            )?;
        }
        match (self.high_witness(), self.low_witness()) {
            (Some(hi), Some(lo)) => writeln!(
                f,
                "conclusion: frequency >= {HIGH_FREQUENCY} under {} and <= {LOW_FREQUENCY} under {}; both are \
                 extensions of P, so P_*(event) <= {:.4} and P^*(event) >= {:.4}: maximally nonmeasurable at this horizon",
                self.outcomes[hi].role.symbol(),
                self.outcomes[lo].role.symbol(),
                self.outcomes[lo].frequency(),
                self.outcomes[hi].frequency(),
            ),
            _ => writeln!(f, "conclusion: no certificate at this horizon"),
        }
    }
}

struct CertificationRun {
    set: TargetSet,
    surrogate: Surrogate,
    runs: Vec<(PlanRole, CoordinatePlan, Option<Rational>, Vec<Trajectory>)>,
}

fn run_plans(scenario: &Scenario, set: &TargetSet, settings: &CertifySettings) -> Result<CertificationRun> {
    let (lower, upper) = (scenario.lower(), scenario.upper());
    set.check_proper_subset(lower, upper)?;
    let inside = set.inside_point().expect("nonempty");
    let outside = set
        .outside_point(lower, upper)
        .ok_or_else(|| Error::Hypothesis("A leaves no point of [E_*, E^*] uncovered".into()))?;
    let schedule = make_schedule(settings.schedule, scenario)?;
    let surrogate = Surrogate::new(scenario, &schedule, settings.n_max)?;
    let plans = [
        (
            PlanRole::InsideTarget,
            CoordinatePlan::targeting(scenario, &inside)?,
            Some(inside),
        ),
        (
            PlanRole::Diverging,
            CoordinatePlan::block_alternating(scenario, schedule)?,
            None,
        ),
        (
            PlanRole::OutsideTarget,
            CoordinatePlan::targeting(scenario, &outside)?,
            Some(outside),
        ),
    ];
    let mut runs = Vec::with_capacity(plans.len());
    for (i, (role, plan, target)) in plans.into_iter().enumerate() {
        // distinct streams per plan under one master seed
        let seed = super::sample::derive_seed(settings.master_seed, u64::MAX - i as u64);
        let trajectories = simulate(&plan, settings.n_max, &surrogate.checkpoints, settings.trials, seed)?;
        runs.push((role, plan, target, trajectories));
    }
    Ok(CertificationRun {
        set: set.clone(),
        surrogate,
        runs,
    })
}

fn report(
    run: &CertificationRun,
    kind: EventKind,
    scenario: &Scenario,
    settings: &CertifySettings,
) -> CertificateReport {
    let outcomes = run
        .runs
        .iter()
        .map(|(role, plan, target, trajectories)| PlanOutcome {
            role: *role,
            plan: plan.describe(),
            target: target.clone(),
            hits: trajectories
                .iter()
                .filter(|t| run.surrogate.holds(kind, t, &run.set))
                .count(),
            trials: trajectories.len(),
        })
        .collect();
    CertificateReport {
        kind,
        set: run.set.clone(),
        lower: scenario.lower().clone(),
        upper: scenario.upper().clone(),
        surrogate: run.surrogate.clone(),
        master_seed: settings.master_seed,
        outcomes,
    }
}

/// Simulates the three plans (converging inside `A`, diverging, converging
/// outside `A`) and reports surrogate frequencies for `kind`.
pub fn certify_nonmeasurable(
    scenario: &Scenario,
    kind: EventKind,
    set: &TargetSet,
    settings: &CertifySettings,
) -> Result<CertificateReport> {
    let run = run_plans(scenario, set, settings)?;
    Ok(report(&run, kind, scenario, settings))
}

/// [`certify_nonmeasurable`] for every event kind from one set of runs.
pub fn certify_all(scenario: &Scenario, set: &TargetSet, settings: &CertifySettings) -> Result<Vec<CertificateReport>> {
    let run = run_plans(scenario, set, settings)?;
    Ok(EventKind::ALL
        .into_iter()
        .map(|kind| report(&run, kind, scenario, settings))
        .collect())
}
