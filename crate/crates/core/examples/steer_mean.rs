//! One nonmeasurable `Ψ`, five different almost-sure limits of `S_n/n`:
//! each target in `[E_*, E^*]` is reached by mixing the two corner laws.

use nmlln::lln::{simulate, target_mixture_weight, CoordinatePlan, Scenario};
use nmlln::rational::{format, int, ratio, to_f64};

fn main() -> nmlln::Result<()> {
    let scenario = Scenario::reference();
    let n_max = 10_000;
    for alpha in [ratio(1, 2), ratio(3, 4), int(1), ratio(5, 4), ratio(3, 2)] {
        let weight = target_mixture_weight(&alpha, scenario.lower(), scenario.upper())?;
        let plan = CoordinatePlan::constant_mixture(&scenario, weight)?;
        let runs = simulate(&plan, n_max, &[n_max], 200, 1)?;
        let finals: Vec<f64> = runs.iter().filter_map(|t| t.final_mean()).collect();
        let mean = finals.iter().sum::<f64>() / finals.len() as f64;
        let close = finals.iter().filter(|m| (*m - to_f64(&alpha)).abs() <= 0.03).count();
        println!(
            "target {:>3}  {:<26} average S_n/n = {mean:.4}, {close}/200 within 0.03",
            format(&alpha),
            plan.describe()
        );
    }
    Ok(())
}
