//! Alternating the two corner laws over blocks of factorial length makes
//! `S_n/n` swing between `E_*` and `E^*` forever.

use nmlln::lln::{expected_mean_at, make_schedule, sample_trajectory, CoordinatePlan, Scenario, ScheduleKind};
use nmlln::rational::to_f64;

fn main() -> nmlln::Result<()> {
    let scenario = Scenario::reference();
    let schedule = make_schedule(ScheduleKind::Factorial { start: 20 }, &scenario)?;
    println!("block ends: {:?}", &schedule.terms()[..6]);

    let n_max = 362_880;
    let ends: Vec<u64> = schedule.block_ends_upto(n_max).into_iter().map(|(_, a)| a).collect();
    let plan = CoordinatePlan::block_alternating(&scenario, schedule)?;
    let trajectory = sample_trajectory(&plan, n_max, 2024, &ends)?;
    let profile = expected_mean_at(&plan, &ends);

    println!("{:>8}  {:>9}  {:>9}", "n", "S_n/n", "E[S_n]/n");
    for ((n, mean), (_, exact)) in trajectory.checkpoints.iter().zip(&profile) {
        println!("{n:>8}  {mean:>9.4}  {:>9.4}", to_f64(exact));
    }
    Ok(())
}
