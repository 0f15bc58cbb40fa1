//! Product measures on `Ω₁^∞` built from per-coordinate extensions, sample
//! paths of `S_n / n`, exact finite-horizon probabilities and the block
//! schedules that force divergence.

pub mod approx;
pub mod certify;
pub mod exact;
pub mod plan;
pub mod product;
pub mod sample;
pub mod scenario;
pub mod schedule;

pub use approx::{coordinate_approximant, exactness_threshold, simple_approx, truncate};
pub use certify::{
    certify_all, certify_nonmeasurable, CertificateReport, CertifySettings, EventKind, PlanOutcome, PlanRole,
    Surrogate, TargetSet,
};
pub use exact::{
    exact_event_bounds, exact_plan_event_prob, expected_mean_at, expected_mean_profile, sum_distribution,
    variance_sum_diagnostic, DeviationEvent, EventBounds, DEFAULT_BUDGET,
};
pub use plan::{target_mixture_weight, CoordinateChoice, CoordinatePlan, PlanVariant};
pub use product::ProductSpace;
pub use sample::{derive_seed, sample_trajectory, simulate, PlanSampler, Trajectory};
pub use scenario::Scenario;
pub use schedule::{make_schedule, BlockSchedule, ScheduleKind};
