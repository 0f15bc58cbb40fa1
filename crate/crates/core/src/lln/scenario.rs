use crate::error::Result;
use crate::measure::{lower_expectation, upper_expectation, FieldPartition, FiniteSpace, RandomQuantity};
use crate::rational::{int, Rational};

/// The coordinate space `(Ω₁, F₁, P₁)` together with the function `Ψ`
/// observed at every coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    space: FiniteSpace,
    field: FieldPartition,
    psi: RandomQuantity,
    lower: Rational,
    upper: Rational,
}

impl Scenario {
    pub fn new(space: FiniteSpace, field: FieldPartition, psi: RandomQuantity) -> Result<Self> {
        let lower = lower_expectation(&space, &field, &psi)?;
        let upper = upper_expectation(&space, &field, &psi)?;
        Ok(Self {
            space,
            field,
            psi,
            lower,
            upper,
        })
    }

    /// Uniform `{a, b, c, d}`, atoms `{a, b}` and `{c, d}`, `Ψ = (0, 1, 1, 2)`.
    /// Lower expectation 1/2, upper 3/2.
    pub fn reference() -> Self {
        let space = FiniteSpace::uniform(["a", "b", "c", "d"]).expect("valid space");
        let field = FieldPartition::from_labels(&space, &[vec!["a", "b"], vec!["c", "d"]]).expect("valid field");
        let psi = RandomQuantity::new(vec![int(0), int(1), int(1), int(2)]);
        Self::new(space, field, psi).expect("consistent scenario")
    }

    /// Uniform `{0, 1}` with the trivial field and `Ψ` the identity.
    pub fn fair_coin() -> Self {
        let space = FiniteSpace::uniform(["0", "1"]).expect("valid space");
        let field = FieldPartition::trivial(&space);
        let psi = RandomQuantity::new(vec![int(0), int(1)]);
        Self::new(space, field, psi).expect("consistent scenario")
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn field(&self) -> &FieldPartition {
        &self.field
    }

    pub fn psi(&self) -> &RandomQuantity {
        &self.psi
    }

    /// `E_*[Ψ]`, written γ in the block-schedule argument.
    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    /// `E^*[Ψ]`, written δ in the block-schedule argument.
    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    /// `Ψ` is measurable, so every plan has the same law.
    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    pub fn psi_min(&self) -> &Rational {
        self.psi.min_value().expect("spaces are nonempty")
    }

    pub fn psi_max(&self) -> &Rational {
        self.psi.max_value().expect("spaces are nonempty")
    }
}
