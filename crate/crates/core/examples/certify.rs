//! Finite-horizon certificates that the five limit events are maximally
//! nonmeasurable for the reference scenario and `A = {1}`.

use nmlln::lln::{certify_all, CertifySettings, Scenario, TargetSet};
use nmlln::rational::int;

fn main() -> nmlln::Result<()> {
    let scenario = Scenario::reference();
    let set = TargetSet::point(int(1));
    let reports = certify_all(&scenario, &set, &CertifySettings::default())?;
    for report in &reports {
        println!("{report}");
    }
    let certified = reports.iter().filter(|r| r.is_certified()).count();
    println!("{certified}/{} events certified", reports.len());
    Ok(())
}
