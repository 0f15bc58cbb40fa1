//! Index thresholds `1 = a_0 < a_1 < a_2 < …` with `a_{n+1}/a_n → ∞`.
//!
//! Block `L_j = {a_{j-1}+1, …, a_j}`; the alternating plan uses the lower
//! corner extension on odd blocks and the upper one elsewhere (coordinate 1
//! belongs to no block and gets the upper corner).

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::approx::{coordinate_approximant, exactness_threshold};
use super::scenario::Scenario;
use crate::error::{Error, Result};
use crate::measure::{lower_expectation, upper_expectation};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScheduleKind {
    /// `a_n = s (s+1) ⋯ (s+n-1)`, so `a_1 = s` and `a_n / a_{n-1} = s + n - 1`.
    /// `start = 2` gives the plain factorials `1, 2, 6, 24, …`.
    Factorial { start: u64 },
    /// `a_n = s^n · b^{n(n-1)/2}`, ratios `s, s·b, s·b², …`.
    GeometricEscalating { start: u64, base: u64 },
}

impl std::fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScheduleKind::Factorial { start } => write!(f, "factorial(start={start})"),
            ScheduleKind::GeometricEscalating { start, base } => {
                write!(f, "geometric-escalating(start={start}, base={base})")
            }
        }
    }
}

impl ScheduleKind {
    pub fn start(&self) -> u64 {
        match *self {
            ScheduleKind::Factorial { start } | ScheduleKind::GeometricEscalating { start, .. } => start,
        }
    }

    fn with_start(self, start: u64) -> Self {
        match self {
            ScheduleKind::Factorial { .. } => ScheduleKind::Factorial { start },
            ScheduleKind::GeometricEscalating { base, .. } => ScheduleKind::GeometricEscalating { start, base },
        }
    }

    /// Ratio `a_n / a_{n-1}` for `n ≥ 1`, `None` on overflow.
    fn ratio(&self, n: u64) -> Option<u64> {
        match *self {
            ScheduleKind::Factorial { start } => start.checked_add(n - 1),
            ScheduleKind::GeometricEscalating { start, base } => {
                let exp = u32::try_from(n - 1).ok()?;
                base.checked_pow(exp)?.checked_mul(start)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSchedule {
    kind: ScheduleKind,
    terms: Vec<u64>,
}

impl BlockSchedule {
    /// Builds the schedule without reference to any `Ψ`. All terms that fit
    /// in a `u64` are materialised.
    pub fn new(kind: ScheduleKind) -> Result<Self> {
        match kind {
            ScheduleKind::Factorial { start } if start < 2 => {
                return Err(Error::InvalidSchedule(format!(
                    "factorial start {start} must be at least 2"
                )))
            }
            ScheduleKind::GeometricEscalating { start, base } if start < 2 || base < 2 => {
                return Err(Error::InvalidSchedule(format!(
                    "geometric start {start} and base {base} must both be at least 2"
                )))
            }
            _ => {}
        }
        let mut terms = vec![1u64];
        for n in 1.. {
            let last = *terms.last().expect("nonempty");
            match kind.ratio(n).and_then(|r| last.checked_mul(r)) {
                Some(next) => terms.push(next),
                None => break,
            }
        }
        Ok(Self { kind, terms })
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    /// `a_0, a_1, …` up to the last term representable as `u64`.
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> Option<u64> {
        self.terms.get(n).copied()
    }

    /// The block index `j` with `a_{j-1} < k ≤ a_j`; `0` for `k ≤ 1`.
    pub fn block_of(&self, k: u64) -> usize {
        if k <= 1 {
            return 0;
        }
        self.terms.partition_point(|&a| a < k)
    }

    /// True iff coordinate `k` lies in an odd block, where the lower corner
    /// extension is used.
    pub fn in_lower_blocks(&self, k: u64) -> bool {
        self.block_of(k) % 2 == 1
    }

    /// `(j, a_j)` for every `j ≥ 1` with `a_j ≤ n_max`.
    pub fn block_ends_upto(&self, n_max: u64) -> Vec<(usize, u64)> {
        self.terms
            .iter()
            .enumerate()
            .skip(1)
            .take_while(|(_, &a)| a <= n_max)
            .map(|(j, &a)| (j, a))
            .collect()
    }

    /// `a_{n+1} / a_n` for consecutive materialised terms.
    pub fn ratios(&self) -> Vec<u64> {
        self.terms.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

/// Builds a schedule for `scenario`, moving `a_1` up to the exactness
/// threshold of `Ψ` when needed and then checking the approximation
/// condition at every materialised block end.
pub fn make_schedule(kind: ScheduleKind, scenario: &Scenario) -> Result<BlockSchedule> {
    let threshold = exactness_threshold(scenario.psi());
    let start = kind.start().max(threshold).max(2);
    let schedule = BlockSchedule::new(kind.with_start(start))?;
    verify_block_condition(&schedule, scenario)?;
    Ok(schedule)
}

/// Checks `|E_*[Y_k] - γ| < 1/n` and `|E^*[Y_k] - δ| < 1/n` for `k = a_n`.
///
/// Beyond `max|Ψ|` the approximant is within `1/k` of `Ψ`, so with
/// `a_n > n` the bound at `a_n` carries over to every `k ≥ a_n`; the check
/// confirms `a_n > n` and the exact gap at the block ends themselves.
pub fn verify_block_condition(schedule: &BlockSchedule, scenario: &Scenario) -> Result<()> {
    let threshold = exactness_threshold(scenario.psi());
    let (space, field) = (scenario.space(), scenario.field());
    for (n, &a) in schedule.terms().iter().enumerate().skip(1) {
        if a < threshold {
            return Err(Error::InvalidSchedule(format!(
                "a_{n} = {a} is below the exactness threshold {threshold}"
            )));
        }
        if a <= n as u64 {
            return Err(Error::InvalidSchedule(format!("a_{n} = {a} does not exceed {n}")));
        }
        // Terms grow super-exponentially; a handful of exact checks suffices.
        if n > 8 {
            continue;
        }
        let y = coordinate_approximant(scenario.psi(), a);
        let bound = Rational::new(1.into(), (n as u64).into());
        let lo_gap = (lower_expectation(space, field, &y)? - scenario.lower()).abs();
        let hi_gap = (upper_expectation(space, field, &y)? - scenario.upper()).abs();
        if lo_gap >= bound || hi_gap >= bound {
            return Err(Error::InvalidSchedule(format!(
                "approximant expectations at a_{n} = {a} are not within 1/{n}"
            )));
        }
    }
    Ok(())
}
