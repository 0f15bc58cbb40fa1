use std::fmt::Write as _;

use crate::error::Error;
use crate::lln::{
    certify_all, certify_nonmeasurable, exact_event_bounds, exact_plan_event_prob, simulate, DeviationEvent,
};
use crate::measure::{is_measurable_fn, majorant, minorant};
use crate::rational::{format, to_f64, Rational};

use super::config::{ConfigError, ValidatedConfig};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const CONFIG_INVALID: i32 = 2;
    pub const BUDGET_EXCEEDED: i32 = 3;
    pub const HYPOTHESIS_VIOLATED: i32 = 4;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CommandError {}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => exit::BUDGET_EXCEEDED,
            Error::Hypothesis(_) => exit::HYPOTHESIS_VIOLATED,
            _ => exit::CONFIG_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        Self {
            code: exit::CONFIG_INVALID,
            message: format!("invalid config: {e}"),
        }
    }
}

fn missing(section: &str, command: &str) -> CommandError {
    CommandError {
        code: exit::CONFIG_INVALID,
        message: format!("invalid config: {section}: required by `{command}`"),
    }
}

fn decimal(r: &Rational) -> String {
    format!("{:.6}", to_f64(r))
}

/// Atom table, minorant/majorant of `Ψ`, lower/upper expectation and
/// measurability.
pub fn analyze(config: &ValidatedConfig) -> Result<String, CommandError> {
    let s = &config.scenario;
    let (space, field, psi) = (s.space(), s.field(), s.psi());
    let lo = minorant(space, field, psi)?;
    let hi = majorant(space, field, psi)?;
    let masses = field.block_masses(space);
    let mut out = String::new();
    writeln!(out, "atom  mass  point  weight  psi  psi_*  psi^*").unwrap();
    for (bi, block) in field.blocks().iter().enumerate() {
        for &p in block {
            writeln!(
                out,
                "{}  {}  {}  {}  {}  {}  {}",
                bi,
                format(&masses[bi]),
                space.label(p),
                format(space.weight(p)),
                format(psi.value(p)),
                format(lo.value(p)),
                format(hi.value(p)),
            )
            .unwrap();
        }
    }
    let measurable = is_measurable_fn(space, field, psi)?;
    writeln!(out, "E_*[psi] = {} ({})", format(s.lower()), decimal(s.lower())).unwrap();
    writeln!(out, "E^*[psi] = {} ({})", format(s.upper()), decimal(s.upper())).unwrap();
    if measurable {
        writeln!(out, "psi is measurable: E[psi] = {}", format(s.lower())).unwrap();
    } else {
        writeln!(
            out,
            "psi is nonmeasurable: sample means can be steered anywhere in [{}, {}]",
            format(s.lower()),
            format(s.upper())
        )
        .unwrap();
    }
    Ok(out)
}

/// CSV with header `trajectory_id,seed,n,mean`, one row per trajectory and
/// checkpoint, in trajectory order.
pub fn simulate_csv(config: &ValidatedConfig) -> Result<String, CommandError> {
    let plan = config.plan.as_ref().ok_or_else(|| missing("plan", "simulate"))?;
    let checkpoints = config.checkpoints();
    let runs = simulate(plan, config.run.n_max, &checkpoints, config.run.trials, config.run.seed)?;
    let mut out = String::from("trajectory_id,seed,n,mean\n");
    for (id, t) in runs.iter().enumerate() {
        for &(n, mean) in &t.checkpoints {
            writeln!(out, "{id},{},{n},{mean:.10}", t.seed).unwrap();
        }
    }
    Ok(out)
}

/// Exact inner/outer probabilities of `{|S_n/n - center| > epsilon}` for
/// each `n`, plus the plan's exact probability when a plan is configured.
pub fn weaklaw(config: &ValidatedConfig) -> Result<String, CommandError> {
    let spec = config.weaklaw.as_ref().ok_or_else(|| missing("weaklaw", "weaklaw"))?;
    let budget = config.run.budget;
    let mut out = String::from("n,event,inner,inner_decimal,outer,outer_decimal");
    if config.plan.is_some() {
        out.push_str(",plan,plan_decimal");
    }
    out.push('\n');
    for n in spec.n_from..=spec.n_to {
        let event = DeviationEvent::new(n, spec.center.clone(), spec.epsilon.clone())?;
        let bounds = exact_event_bounds(&config.scenario, &event, budget)?;
        let shape = if !bounds.is_nonempty() {
            "empty"
        } else if !bounds.is_proper() {
            "full"
        } else {
            "proper"
        };
        write!(
            out,
            "{n},{shape},{},{},{},{}",
            format(&bounds.inner),
            decimal(&bounds.inner),
            format(&bounds.outer),
            decimal(&bounds.outer)
        )
        .unwrap();
        if let Some(plan) = &config.plan {
            let p = exact_plan_event_prob(plan, &event, budget)?;
            write!(out, ",{},{}", format(&p), decimal(&p)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Two-extension certificates for one event kind, or all five.
pub fn certify(config: &ValidatedConfig) -> Result<String, CommandError> {
    let spec = config.certify.as_ref().ok_or_else(|| missing("certify", "certify"))?;
    let settings = config.certify_settings().expect("certify section present");
    let reports = match spec.event {
        Some(kind) => vec![certify_nonmeasurable(&config.scenario, kind, &spec.set, &settings)?],
        None => certify_all(&config.scenario, &spec.set, &settings)?,
    };
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&r.to_string());
    }
    Ok(out)
}
