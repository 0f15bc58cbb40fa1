//! Truncation and grid approximation of the coordinate function.
//!
//! `Ψ_{1,k} = simple_approx(truncate(Ψ, k), k)` equals `Ψ` itself as soon as
//! `k ≥ max|Ψ|` and every value of `Ψ` lies on the `1/k` grid. Block
//! schedules start past that point, which is why plans sample `Ψ` directly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measure::RandomQuantity;
use crate::rational::{denominator_lcm, floor_to_grid, Rational};

/// `f` where `|f| ≤ n`, zero elsewhere.
pub fn truncate(f: &RandomQuantity, n: u64) -> RandomQuantity {
    let bound = Rational::from_integer(BigInt::from(n));
    f.map(|v| if v.abs() <= bound { v.clone() } else { Rational::zero() })
}

/// Rounds `f` down to the `1/n` grid and clamps to `[-n, n]`.
///
/// Requires `|f| ≤ n`; the result is within `1/n` of `f` and bounded by `n`.
pub fn simple_approx(f: &RandomQuantity, n: u64) -> Result<RandomQuantity> {
    if n == 0 {
        return Err(Error::ApproximationDomain { bound: 0, index: 0 });
    }
    let bound = Rational::from_integer(BigInt::from(n));
    if let Some(index) = f.values().iter().position(|v| v.abs() > bound) {
        return Err(Error::ApproximationDomain { bound: n, index });
    }
    let low = -bound.clone();
    Ok(f.map(|v| floor_to_grid(v, n).clamp(low.clone(), bound.clone())))
}

/// `Ψ_{1,k}`, the simple function used at coordinate `k`.
pub fn coordinate_approximant(psi: &RandomQuantity, k: u64) -> RandomQuantity {
    simple_approx(&truncate(psi, k), k).expect("truncated values are bounded by k")
}

/// Decides cheaply whether `Ψ_{1,k} = Ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessRule {
    min_k: u64,
    grid: Option<u64>,
}

impl ExactnessRule {
    pub fn new(psi: &RandomQuantity) -> Self {
        let max_abs = psi.max_abs();
        let ceil = max_abs.ceil().to_integer().to_u64().unwrap_or(u64::MAX);
        Self {
            min_k: ceil.max(1),
            grid: denominator_lcm(psi.values()),
        }
    }

    /// True iff truncation at `k` is the identity and every value is a
    /// multiple of `1/k`.
    pub fn is_exact(&self, k: u64) -> bool {
        k >= self.min_k && self.grid.is_some_and(|g| k.is_multiple_of(g))
    }

    /// True iff `Ψ_{1,k} = Ψ` for every `k ≥` some finite threshold.
    pub fn eventually_exact(&self) -> bool {
        self.grid == Some(1)
    }
}

/// Smallest `k` strictly above `max|Ψ|`; from there on truncation is the
/// identity and `|Ψ_{1,k} - Ψ| ≤ 1/k`.
pub fn exactness_threshold(psi: &RandomQuantity) -> u64 {
    psi.max_abs().floor().to_integer().to_u64().unwrap_or(u64::MAX - 1) + 1
}
