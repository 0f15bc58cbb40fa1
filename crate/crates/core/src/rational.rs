//! Exact rational arithmetic helpers.
//!
//! Every probability, weight and expectation in this crate is a
//! [`Rational`]. Text encodings use `"num/den"` (or a bare integer) so that
//! probabilities never pass through floating point on the way in.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"3/4"`, `"-2"` or `" 5 / 10 "` into a reduced rational.
pub fn parse(text: &str) -> Result<Rational> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("{text:?} is not a rational of the form num/den"));
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{text:?} has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let scale = value.denom().bits().saturating_sub(60);
        let num = value.numer() >> scale;
        let den = value.denom() >> scale;
        num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
    })
}

/// Largest multiple of `1/grid` not exceeding `value`.
pub fn floor_to_grid(value: &Rational, grid: u64) -> Rational {
    let grid = BigInt::from(grid);
    let scaled = value * Rational::from_integer(grid.clone());
    let floored = scaled.numer().div_floor(scaled.denom());
    Rational::new(floored, grid)
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Least common multiple of the denominators, as a `u64` when it fits.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<u64> {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc.to_u64()
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
