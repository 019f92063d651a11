use serde::{Deserialize, Serialize};

use super::{GapError, X0};
use crate::numeric::{pow_enclosure, Rational, RealEnclosure};

/// Extra digits carried by the exact exponent before the power is taken.
const EXPONENT_GUARD: u32 = 10;

/// Certified threshold beyond which `p_{n+1} / p_n < a` follows from
/// `A·x/log x < π(x) < B·x/log x`.
///
/// With `C = B/A`, the inequality `A·(ap)/log(ap) > B·p/log p` rearranges to
/// `(a - C)·log p > C·log a`, i.e. `p > a^{C/(a-C)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdResult {
    #[serde(rename = "A")]
    pub lower_constant: Rational,
    #[serde(rename = "B")]
    pub upper_constant: Rational,
    pub a: Rational,
    #[serde(rename = "C")]
    pub c: Rational,
    /// Enclosure of `C / (a - C)`.
    pub exponent: RealEnclosure,
    /// Enclosure of `a^{C/(a-C)}`.
    pub threshold: RealEnclosure,
    /// Enclosure of the misprinted form `a·C / (a - C)`.
    pub misprint_variant: RealEnclosure,
    pub x0: u64,
    pub below_x0: bool,
}

impl ThresholdResult {
    pub fn passed(&self) -> bool {
        self.below_x0
    }
}

fn split_constants(
    lower_constant: &Rational,
    upper_constant: &Rational,
    a: &Rational,
) -> Result<(Rational, Rational), GapError> {
    for (name, v) in [("A", lower_constant), ("B", upper_constant), ("a", a)] {
        if !v.is_positive() {
            return Err(GapError::NonPositive(name));
        }
    }
    let c = upper_constant / lower_constant;
    let gap = a - &c;
    if !gap.is_positive() {
        return Err(GapError::Degenerate { a: a.clone(), c });
    }
    Ok((c, gap))
}

/// Encloses `a·C/(a - C)`.
pub fn misprinted_threshold(
    lower_constant: &Rational,
    upper_constant: &Rational,
    a: &Rational,
    digits: u32,
) -> Result<RealEnclosure, GapError> {
    let (c, gap) = split_constants(lower_constant, upper_constant, a)?;
    Ok(RealEnclosure::point(&(a * &c / gap), digits))
}

pub fn chebyshev_threshold(
    lower_constant: &Rational,
    upper_constant: &Rational,
    a: &Rational,
    digits: u32,
) -> Result<ThresholdResult, GapError> {
    let (c, gap) = split_constants(lower_constant, upper_constant, a)?;
    let exponent_exact = &c / &gap;
    let exponent = RealEnclosure::point(&exponent_exact, digits + EXPONENT_GUARD);
    let threshold = pow_enclosure(a, &exponent, digits)?;
    let below_x0 = threshold.upper() < Rational::from(X0);
    Ok(ThresholdResult {
        lower_constant: lower_constant.clone(),
        upper_constant: upper_constant.clone(),
        a: a.clone(),
        misprint_variant: misprinted_threshold(lower_constant, upper_constant, a, digits)?,
        c,
        exponent: exponent.with_digits(digits),
        threshold,
        x0: X0,
        below_x0,
    })
}
