//! Scenario configuration files.
//!
//! A config is one JSON document. Every probability and every value of `Ψ`
//! is written as a `"num/den"` string so nothing passes through floating
//! point. [`ScenarioConfig::validate`] reports the first problem together
//! with the JSON path where it occurs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lln::{
    make_schedule, BlockSchedule, CertifySettings, CoordinatePlan, EventKind, Scenario, ScheduleKind, TargetSet,
    DEFAULT_BUDGET,
};
use crate::measure::{FieldPartition, FiniteSpace, RandomQuantity};
use crate::rational::{format, parse, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub points: Vec<String>,
    pub weights: Vec<String>,
    /// Atoms of the sub-σ-field, by point label.
    pub field: Vec<Vec<String>>,
    pub psi: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanConfig>,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weaklaw: Option<WeakLawConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certify: Option<CertifyConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PlanConfig {
    /// Either `weight` (the mixture weight) or `target` (the limit of the
    /// sample means) must be given.
    ConstantMixture {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weight: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<String>,
    },
    BlockAlternating {
        schedule: ScheduleKind,
    },
    RegimeMixture {
        weight: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_n_max")]
    pub n_max: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Empty means: powers of ten, block ends of an alternating plan, and `n_max`.
    #[serde(default)]
    pub checkpoints: Vec<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_n_max() -> u64 {
    10_000
}

fn default_trials() -> usize {
    100
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_max: default_n_max(),
            trials: default_trials(),
            checkpoints: Vec::new(),
            seed: 0,
            budget: default_budget(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakLawConfig {
    pub center: String,
    pub epsilon: String,
    pub n_from: u64,
    pub n_to: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyConfig {
    /// Omitted: certify every event kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<EventKind>,
    /// Closed intervals `[lo, hi]`; a point is `[x, x]`.
    pub set: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleKind>,
}

/// A validation failure and where in the document it occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn at(path: impl Into<String>) -> impl FnOnce(Error) -> ConfigError {
    let path = path.into();
    move |e| ConfigError {
        path,
        message: e.to_string(),
    }
}

fn rational(path: String, text: &str) -> Result<Rational, ConfigError> {
    parse(text).map_err(at(path))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakLawSpec {
    pub center: Rational,
    pub epsilon: Rational,
    pub n_from: u64,
    pub n_to: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifySpec {
    pub event: Option<EventKind>,
    pub set: TargetSet,
    pub schedule: ScheduleKind,
}

/// A config that passed validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    pub scenario: Scenario,
    pub plan: Option<CoordinatePlan>,
    /// The plan as written (target or weight), kept for `--dump-config`.
    pub plan_config: Option<PlanConfig>,
    pub run: RunConfig,
    pub weaklaw: Option<WeakLawSpec>,
    pub certify: Option<CertifySpec>,
}

impl ValidatedConfig {
    /// Sorted checkpoints within `[1, n_max]`, always including `n_max`.
    pub fn checkpoints(&self) -> Vec<u64> {
        let n_max = self.run.n_max;
        let mut out: Vec<u64> = if self.run.checkpoints.is_empty() {
            let mut c: Vec<u64> = std::iter::successors(Some(1u64), |p| p.checked_mul(10))
                .take_while(|&p| p <= n_max)
                .collect();
            if let Some(schedule) = self.schedule() {
                c.extend(schedule.block_ends_upto(n_max).into_iter().map(|(_, a)| a));
            }
            c
        } else {
            self.run
                .checkpoints
                .iter()
                .copied()
                .filter(|&c| c >= 1 && c <= n_max)
                .collect()
        };
        out.push(n_max);
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn schedule(&self) -> Option<&BlockSchedule> {
        match self.plan.as_ref()?.variant() {
            crate::lln::PlanVariant::BlockAlternating { schedule } => Some(schedule),
            _ => None,
        }
    }

    pub fn certify_settings(&self) -> Option<CertifySettings> {
        self.certify.as_ref().map(|c| CertifySettings {
            n_max: self.run.n_max,
            trials: self.run.trials,
            master_seed: self.run.seed,
            schedule: c.schedule,
        })
    }

    /// Canonical config: reduced rationals, defaults written out.
    pub fn to_config(&self) -> ScenarioConfig {
        let space = self.scenario.space();
        let plan = self.plan_config.as_ref().map(|p| match p {
            PlanConfig::ConstantMixture { weight, target } => PlanConfig::ConstantMixture {
                weight: weight.as_deref().map(canonical),
                target: target.as_deref().map(canonical),
            },
            PlanConfig::RegimeMixture { weight } => PlanConfig::RegimeMixture {
                weight: canonical(weight),
            },
            PlanConfig::BlockAlternating { .. } => PlanConfig::BlockAlternating {
                schedule: self.schedule().expect("alternating plan").kind(),
            },
        });
        ScenarioConfig {
            points: space.labels().to_vec(),
            weights: space.weights().iter().map(format).collect(),
            field: self
                .scenario
                .field()
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&p| space.label(p).to_string()).collect())
                .collect(),
            psi: self.scenario.psi().values().iter().map(format).collect(),
            plan,
            run: self.run.clone(),
            weaklaw: self.weaklaw.as_ref().map(|w| WeakLawConfig {
                center: format(&w.center),
                epsilon: format(&w.epsilon),
                n_from: w.n_from,
                n_to: w.n_to,
            }),
            certify: self.certify.as_ref().map(|c| CertifyConfig {
                event: c.event,
                set: c
                    .set
                    .intervals()
                    .iter()
                    .map(|(lo, hi)| [format(lo), format(hi)])
                    .collect(),
                schedule: Some(c.schedule),
            }),
        }
    }
}

fn canonical(text: &str) -> String {
    parse(text).map(|r| format(&r)).unwrap_or_else(|_| text.to_string())
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError {
            path: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises") + "\n"
    }

    pub fn validate(&self) -> Result<ValidatedConfig, ConfigError> {
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| rational(format!("weights[{i}]"), w))
            .collect::<Result<Vec<_>, _>>()?;
        let space = FiniteSpace::new(self.points.clone(), weights).map_err(|e| {
            let path = match &e {
                Error::ZeroWeight { label } | Error::NegativeWeight { label, .. } => self
                    .points
                    .iter()
                    .position(|p| p == label)
                    .map_or("weights".to_string(), |i| format!("weights[{i}]")),
                Error::DuplicateLabel(label) => self
                    .points
                    .iter()
                    .rposition(|p| p == label)
                    .map_or("points".to_string(), |i| format!("points[{i}]")),
                Error::EmptySpace => "points".to_string(),
                _ => "weights".to_string(),
            };
            ConfigError {
                path,
                message: e.to_string(),
            }
        })?;

        let mut blocks = Vec::with_capacity(self.field.len());
        for (i, block) in self.field.iter().enumerate() {
            let mut pts = Vec::with_capacity(block.len());
            for (j, label) in block.iter().enumerate() {
                pts.push(space.index_of(label).map_err(at(format!("field[{i}][{j}]")))?);
            }
            blocks.push(pts);
        }
        let field = FieldPartition::new(&space, blocks).map_err(at("field"))?;

        if self.psi.len() != space.len() {
            return Err(ConfigError {
                path: "psi".into(),
                message: format!("{} values for {} points", self.psi.len(), space.len()),
            });
        }
        let psi = self
            .psi
            .iter()
            .enumerate()
            .map(|(i, v)| rational(format!("psi[{i}]"), v))
            .collect::<Result<Vec<_>, _>>()?;
        let scenario = Scenario::new(space, field, RandomQuantity::new(psi)).map_err(at("psi"))?;

        let plan = match &self.plan {
            None => None,
            Some(PlanConfig::ConstantMixture { weight, target }) => Some(match (weight, target) {
                (Some(w), None) => {
                    let w = rational("plan.weight".into(), w)?;
                    CoordinatePlan::constant_mixture(&scenario, w).map_err(at("plan.weight"))?
                }
                (None, Some(t)) => {
                    let t = rational("plan.target".into(), t)?;
                    CoordinatePlan::targeting(&scenario, &t).map_err(at("plan.target"))?
                }
                _ => {
                    return Err(ConfigError {
                        path: "plan".into(),
                        message: "give exactly one of weight or target".into(),
                    })
                }
            }),
            Some(PlanConfig::BlockAlternating { schedule }) => {
                let schedule = make_schedule(*schedule, &scenario).map_err(at("plan.schedule"))?;
                Some(CoordinatePlan::block_alternating(&scenario, schedule).map_err(at("plan"))?)
            }
            Some(PlanConfig::RegimeMixture { weight }) => {
                let w = rational("plan.weight".into(), weight)?;
                Some(CoordinatePlan::regime_mixture(&scenario, w).map_err(at("plan.weight"))?)
            }
        };

        if self.run.n_max == 0 {
            return Err(ConfigError {
                path: "run.n_max".into(),
                message: "must be at least 1".into(),
            });
        }
        if let Some(i) = self.run.checkpoints.iter().position(|&c| c == 0 || c > self.run.n_max) {
            return Err(ConfigError {
                path: format!("run.checkpoints[{i}]"),
                message: format!("outside [1, {}]", self.run.n_max),
            });
        }

        let weaklaw = match &self.weaklaw {
            None => None,
            Some(w) => {
                let center = rational("weaklaw.center".into(), &w.center)?;
                let epsilon = rational("weaklaw.epsilon".into(), &w.epsilon)?;
                if epsilon <= Rational::from_integer(0.into()) {
                    return Err(ConfigError {
                        path: "weaklaw.epsilon".into(),
                        message: "must be positive".into(),
                    });
                }
                if w.n_from == 0 || w.n_from > w.n_to {
                    return Err(ConfigError {
                        path: "weaklaw.n_from".into(),
                        message: format!("need 1 <= n_from <= n_to, got {}..{}", w.n_from, w.n_to),
                    });
                }
                Some(WeakLawSpec {
                    center,
                    epsilon,
                    n_from: w.n_from,
                    n_to: w.n_to,
                })
            }
        };

        let certify = match &self.certify {
            None => None,
            Some(c) => {
                let mut intervals = Vec::with_capacity(c.set.len());
                for (i, [lo, hi]) in c.set.iter().enumerate() {
                    intervals.push((
                        rational(format!("certify.set[{i}][0]"), lo)?,
                        rational(format!("certify.set[{i}][1]"), hi)?,
                    ));
                }
                let set = TargetSet::new(intervals).map_err(at("certify.set"))?;
                let schedule = c
                    .schedule
                    .or(match &self.plan {
                        Some(PlanConfig::BlockAlternating { schedule }) => Some(*schedule),
                        _ => None,
                    })
                    .unwrap_or(CertifySettings::default().schedule);
                let schedule = make_schedule(schedule, &scenario)
                    .map_err(at("certify.schedule"))?
                    .kind();
                Some(CertifySpec {
                    event: c.event,
                    set,
                    schedule,
                })
            }
        };

        Ok(ValidatedConfig {
            scenario,
            plan,
            plan_config: self.plan.clone(),
            run: self.run.clone(),
            weaklaw,
            certify,
        })
    }
}
