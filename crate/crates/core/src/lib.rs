//! Laws of large numbers for nonmeasurable iid random variables, made
//! computable on finite spaces.
//!
//! A coordinate space `(Ω₁, F₁, P₁)` is a [`FiniteSpace`] with a sub-σ-field
//! given by its atoms ([`FieldPartition`]); `Ψ` is an arbitrary
//! [`RandomQuantity`] on it, typically not `F₁`-measurable. The crate
//!
//! * computes inner/outer measures, measurable minorants/majorants and the
//!   lower/upper expectations `E_*[Ψ] ≤ E^*[Ψ]` exactly ([`measure`]);
//! * builds extensions of `P₁` to refined fields ([`extension`]);
//! * assembles product measures on `Ω₁^∞` from per-coordinate extensions,
//!   samples `S_n / n` along seeded trajectories and evaluates weak-law
//!   events exactly at finite `n` ([`lln`]).
//!
//! ```
//! use nmlln::lln::{simulate, CoordinatePlan, Scenario};
//! use nmlln::rational::ratio;
//!
//! let scenario = Scenario::reference();
//! assert_eq!(scenario.lower(), &ratio(1, 2));
//! assert_eq!(scenario.upper(), &ratio(3, 2));
//!
//! // steer the sample mean to 5/4
//! let plan = CoordinatePlan::targeting(&scenario, &ratio(5, 4)).unwrap();
//! let runs = simulate(&plan, 20_000, &[20_000], 4, 7).unwrap();
//! for t in &runs {
//!     assert!((t.final_mean().unwrap() - 1.25).abs() < 0.05);
//! }
//! ```

pub mod cli;
pub mod error;
pub mod extension;
pub mod lln;
pub mod measure;
pub mod rational;

pub use error::{Error, Result};
pub use extension::{extend_by_set, extend_max, extend_min, is_extension, mix, refined_field, ExtensionMeasure};
pub use measure::{
    inner_measure, is_measurable_fn, is_measurable_set, lower_expectation, majorant, minorant, outer_measure,
    upper_expectation, FieldPartition, FiniteSpace, PointSet, RandomQuantity,
};
pub use rational::Rational;
