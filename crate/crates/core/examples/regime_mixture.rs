//! Mixing the two corner product measures (rather than mixing per
//! coordinate) does not steer the mean to the middle: each trajectory
//! commits to one regime and converges to `E_*` or `E^*`.

use nmlln::lln::{simulate, CoordinatePlan, Scenario};
use nmlln::rational::ratio;

fn main() -> nmlln::Result<()> {
    let scenario = Scenario::reference();
    let n_max = 10_000;
    let regime = CoordinatePlan::regime_mixture(&scenario, ratio(1, 2))?;
    let product = CoordinatePlan::constant_mixture(&scenario, ratio(1, 2))?;

    for plan in [&regime, &product] {
        let runs = simulate(plan, n_max, &[n_max], 1000, 8)?;
        let mut counts = [0usize; 3];
        for t in &runs {
            let m = t.final_mean().unwrap_or(f64::NAN);
            let slot = if (m - 0.5).abs() <= 0.03 {
                0
            } else if (m - 1.0).abs() <= 0.03 {
                1
            } else if (m - 1.5).abs() <= 0.03 {
                2
            } else {
                continue;
            };
            counts[slot] += 1;
        }
        println!(
            "{:<28} near 1/2: {:>4}  near 1: {:>4}  near 3/2: {:>4}",
            plan.describe(),
            counts[0],
            counts[1],
            counts[2]
        );
    }
    Ok(())
}
