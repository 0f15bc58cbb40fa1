//! Per-coordinate choices of extension measure.
//!
//! Every coordinate law is a corner extension of `Ψ` itself (or a mixture
//! of the two corners). `Ψ` is simple on a finite space, so these coincide
//! with the corner extensions of the truncated grid approximant `Ψ_{1,k}`
//! wherever `Ψ_{1,k} = Ψ`; see [`super::approx::ExactnessRule`].

use num_traits::{One, Signed, Zero};

use super::scenario::Scenario;
use super::schedule::BlockSchedule;
use crate::error::{Error, Result};
use crate::extension::{extend_max, extend_min, mix, ExtensionMeasure};
use crate::rational::{format, Rational};

/// `a = (α - γ)/(δ - γ)`, the mixture weight whose coordinate means
/// converge to `α`; zero when `γ = δ`.
pub fn target_mixture_weight(alpha: &Rational, lower: &Rational, upper: &Rational) -> Result<Rational> {
    if alpha < lower || alpha > upper {
        return Err(Error::out_of_bounds(
            "target",
            alpha.clone(),
            lower.clone(),
            upper.clone(),
        ));
    }
    if lower == upper {
        return Ok(Rational::zero());
    }
    Ok((alpha - lower) / (upper - lower))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanVariant {
    /// Every coordinate uses `mix(lower corner, upper corner, weight)`;
    /// coordinates are independent.
    ConstantMixture { weight: Rational },
    /// Lower corner on the odd blocks of the schedule, upper corner elsewhere.
    BlockAlternating { schedule: BlockSchedule },
    /// `(1 - weight)·P⁰ + weight·P¹`: one draw picks the all-lower or the
    /// all-upper product measure for the whole sequence.
    RegimeMixture { weight: Rational },
}

/// Which corner extension a coordinate uses, or a mixture of both.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoordinateChoice {
    Lower,
    Upper,
    Mixture(Rational),
}

/// An assignment of one extension measure to every coordinate of `Ω₁^∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatePlan {
    scenario: Scenario,
    variant: PlanVariant,
}

fn check_weight(weight: &Rational) -> Result<()> {
    if weight.is_negative() || weight > &Rational::one() {
        return Err(Error::out_of_bounds(
            "mixture weight",
            weight.clone(),
            Rational::zero(),
            Rational::one(),
        ));
    }
    Ok(())
}

impl CoordinatePlan {
    pub fn new(scenario: &Scenario, variant: PlanVariant) -> Result<Self> {
        match &variant {
            PlanVariant::ConstantMixture { weight } | PlanVariant::RegimeMixture { weight } => check_weight(weight)?,
            PlanVariant::BlockAlternating { .. } => {}
        }
        Ok(Self {
            scenario: scenario.clone(),
            variant,
        })
    }

    pub fn constant_mixture(scenario: &Scenario, weight: Rational) -> Result<Self> {
        Self::new(scenario, PlanVariant::ConstantMixture { weight })
    }

    /// Constant mixture whose sample means converge to `alpha`.
    pub fn targeting(scenario: &Scenario, alpha: &Rational) -> Result<Self> {
        let weight = target_mixture_weight(alpha, scenario.lower(), scenario.upper())?;
        Self::constant_mixture(scenario, weight)
    }

    pub fn block_alternating(scenario: &Scenario, schedule: BlockSchedule) -> Result<Self> {
        Self::new(scenario, PlanVariant::BlockAlternating { schedule })
    }

    pub fn regime_mixture(scenario: &Scenario, weight: Rational) -> Result<Self> {
        Self::new(scenario, PlanVariant::RegimeMixture { weight })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn variant(&self) -> &PlanVariant {
        &self.variant
    }

    pub fn describe(&self) -> String {
        match &self.variant {
            PlanVariant::ConstantMixture { weight } => format!("constant-mixture(a={})", format(weight)),
            PlanVariant::BlockAlternating { schedule } => format!("block-alternating {}", schedule.kind()),
            PlanVariant::RegimeMixture { weight } => format!("regime-mixture(a={})", format(weight)),
        }
    }

    /// The corner choice at coordinate `k`; for the regime mixture this is
    /// the marginal (a mixture), not the per-trajectory regime.
    pub fn choice(&self, k: u64) -> CoordinateChoice {
        match &self.variant {
            PlanVariant::ConstantMixture { weight } | PlanVariant::RegimeMixture { weight } => {
                CoordinateChoice::Mixture(weight.clone())
            }
            PlanVariant::BlockAlternating { schedule } => {
                if schedule.in_lower_blocks(k) {
                    CoordinateChoice::Lower
                } else {
                    CoordinateChoice::Upper
                }
            }
        }
    }

    /// `P_{1,k,0}`: concentrates each atom's mass on the minimisers of `Ψ`.
    pub fn lower_measure(&self) -> ExtensionMeasure {
        let s = &self.scenario;
        extend_min(s.space(), s.field(), s.psi()).expect("scenario is consistent")
    }

    /// `P_{1,k,1}`: concentrates each atom's mass on the maximisers of `Ψ`.
    pub fn upper_measure(&self) -> ExtensionMeasure {
        let s = &self.scenario;
        extend_max(s.space(), s.field(), s.psi()).expect("scenario is consistent")
    }

    /// Marginal law of coordinate `k`.
    pub fn coordinate_measure(&self, k: u64) -> ExtensionMeasure {
        match self.choice(k) {
            CoordinateChoice::Lower => self.lower_measure(),
            CoordinateChoice::Upper => self.upper_measure(),
            CoordinateChoice::Mixture(a) => {
                mix(&self.lower_measure(), &self.upper_measure(), &a).expect("same field and base")
            }
        }
    }

    /// `E[Ψ(ω_k)]` under the coordinate-`k` marginal.
    pub fn coordinate_mean(&self, k: u64) -> Rational {
        let (lo, hi) = (self.scenario.lower().clone(), self.scenario.upper().clone());
        match self.choice(k) {
            CoordinateChoice::Lower => lo,
            CoordinateChoice::Upper => hi,
            CoordinateChoice::Mixture(a) => (Rational::one() - &a) * lo + a * hi,
        }
    }

    /// The two product regimes of a [`PlanVariant::RegimeMixture`] and the
    /// probability of the upper one.
    pub fn regimes(&self) -> Option<(CoordinatePlan, CoordinatePlan, Rational)> {
        match &self.variant {
            PlanVariant::RegimeMixture { weight } => Some((
                Self::constant_mixture(&self.scenario, Rational::zero()).expect("valid weight"),
                Self::constant_mixture(&self.scenario, Rational::one()).expect("valid weight"),
                weight.clone(),
            )),
            _ => None,
        }
    }
}
