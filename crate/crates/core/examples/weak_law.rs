//! Exact finite-`n` deviation probabilities for a fair coin observed through
//! the trivial field: inner probability 0, outer 1, while any single
//! extension gives an honest binomial tail.

use nmlln::lln::{exact_event_bounds, exact_plan_event_prob, CoordinatePlan, DeviationEvent, Scenario, DEFAULT_BUDGET};
use nmlln::rational::{format, ratio, to_f64};

fn main() -> nmlln::Result<()> {
    let scenario = Scenario::fair_coin();
    let fair = CoordinatePlan::constant_mixture(&scenario, ratio(1, 2))?;
    let biased = CoordinatePlan::constant_mixture(&scenario, ratio(0, 1))?;
    println!("P(|S_n/n - 1/2| > 1/4)");
    println!(
        "{:>3}  {:>5}  {:>5}  {:>16}  {:>6}",
        "n", "inner", "outer", "a = 1/2", "a = 0"
    );
    for n in 2..=12 {
        let event = DeviationEvent::new(n, ratio(1, 2), ratio(1, 4))?;
        let bounds = exact_event_bounds(&scenario, &event, DEFAULT_BUDGET)?;
        let p = exact_plan_event_prob(&fair, &event, DEFAULT_BUDGET)?;
        let q = exact_plan_event_prob(&biased, &event, DEFAULT_BUDGET)?;
        println!(
            "{n:>3}  {:>5}  {:>5}  {:>16}  {:>6.3}",
            format(&bounds.inner),
            format(&bounds.outer),
            format!("{} ({:.3})", format(&p), to_f64(&p)),
            to_f64(&q)
        );
    }
    Ok(())
}
