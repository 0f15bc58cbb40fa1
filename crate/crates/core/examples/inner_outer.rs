//! Inner/outer measure and minorant/majorant on a four-point space where the
//! sub-σ-field only sees `{a, b}` and `{c, d}`.

use nmlln::measure::{
    inner_measure, is_measurable_set, lower_expectation, majorant, minorant, outer_measure, upper_expectation,
    FieldPartition, FiniteSpace, RandomQuantity,
};
use nmlln::rational::{format, int};

fn main() -> nmlln::Result<()> {
    let space = FiniteSpace::uniform(["a", "b", "c", "d"])?;
    let field = FieldPartition::from_labels(&space, &[vec!["a", "b"], vec!["c", "d"]])?;

    for labels in [vec!["a", "b"], vec!["a", "c"], vec!["a", "b", "c"]] {
        let h = space.subset(&labels)?;
        println!(
            "H = {{{}}}: P_* = {}, P^* = {}, measurable: {}",
            labels.join(","),
            format(&inner_measure(&space, &field, &h)?),
            format(&outer_measure(&space, &field, &h)?),
            is_measurable_set(&space, &field, &h)?,
        );
    }

    let psi = RandomQuantity::new(vec![int(0), int(1), int(1), int(2)]);
    let lo = minorant(&space, &field, &psi)?;
    let hi = majorant(&space, &field, &psi)?;
    for p in 0..space.len() {
        println!(
            "{}: psi = {}, psi_* = {}, psi^* = {}",
            space.label(p),
            format(psi.value(p)),
            format(lo.value(p)),
            format(hi.value(p))
        );
    }
    println!(
        "E_*[psi] = {}, E^*[psi] = {}",
        format(&lower_expectation(&space, &field, &psi)?),
        format(&upper_expectation(&space, &field, &psi)?)
    );
    Ok(())
}
