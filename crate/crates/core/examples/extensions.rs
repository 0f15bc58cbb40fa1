//! Extensions of the base measure to a finer field: the two corners, a
//! mixture, and one that gives a nonmeasurable set a prescribed mass.

use nmlln::extension::{extend_by_set, extend_max, extend_min, is_extension, mix};
use nmlln::measure::{inner_measure, outer_measure, FieldPartition, FiniteSpace, RandomQuantity};
use nmlln::rational::{format, int, ratio};

fn main() -> nmlln::Result<()> {
    let space = FiniteSpace::uniform(["a", "b", "c", "d"])?;
    let field = FieldPartition::from_labels(&space, &[vec!["a", "b"], vec!["c", "d"]])?;
    let psi = RandomQuantity::new(vec![int(0), int(1), int(1), int(2)]);

    let low = extend_min(&space, &field, &psi)?;
    let high = extend_max(&space, &field, &psi)?;
    println!("E under extend_min = {}", format(&low.expectation(&psi)?));
    println!("E under extend_max = {}", format(&high.expectation(&psi)?));

    let half = mix(&low, &high, &ratio(1, 2))?;
    println!("E under the even mixture = {}", format(&half.expectation(&psi)?));

    let set = space.subset(&["a", "c"])?;
    println!(
        "A = {{a,c}}: P_*(A) = {}, P^*(A) = {}",
        format(&inner_measure(&space, &field, &set)?),
        format(&outer_measure(&space, &field, &set)?)
    );
    for alpha in [ratio(0, 1), ratio(1, 3), ratio(1, 1)] {
        let q = extend_by_set(&space, &field, &set, &alpha)?;
        println!(
            "  Q(A) = {} (extension of P: {})",
            format(&q.measure_of(&set)?),
            is_extension(&q, &space, &field)
        );
    }
    if extend_by_set(&space, &field, &set, &ratio(3, 2)).is_err() {
        println!("  alpha = 3/2 lies outside [P_*(A), P^*(A)] and is rejected");
    }
    Ok(())
}
