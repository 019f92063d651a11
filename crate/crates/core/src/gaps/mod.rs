//! Certified checks of the analytic estimates behind the descent: ratio
//! bounds for consecutive primes, the Chebyshev threshold, the quotient
//! families for the chosen twist, and the `m > 6` implication.

mod mbound;
mod star;
mod threshold;

pub use mbound::{
    coprime_cofactors_exhausted, m_bound_check, MBoundFailure, MBoundReport, MBoundRow,
};
pub use star::{
    star_inequality_check, FamilyHead, StarFailure, StarReport, StarWitness, PRINTED_FAMILIES,
};
pub use threshold::{chebyshev_threshold, misprinted_threshold, ThresholdResult};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{NumericError, Rational};
use crate::primes::{PrimeError, PrimeTable};

/// Beyond this the Chebyshev constants are trusted inputs.
pub const X0: u64 = 100_000;
/// The ratio audit starts above this prime.
pub const GAP_LOW: u64 = 37;

pub fn ratio_bound() -> Rational {
    Rational::frac(143, 125)
}

pub fn shifted_bound() -> Rational {
    Rational::frac(23, 20)
}

pub fn six_fifths() -> Rational {
    Rational::frac(6, 5)
}

pub fn chebyshev_lower_constant() -> Rational {
    Rational::one()
}

pub fn chebyshev_upper_constant() -> Rational {
    Rational::frac(1_130_289, 1_000_000)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("degenerate: a <= C (a = {a}, C = {c})")]
    Degenerate { a: Rational, c: Rational },
    #[error("parameter {0} must be positive")]
    NonPositive(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_pass() { "pass" } else { "fail" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioKind {
    /// `p_{n+1} / p_n`
    Plain,
    /// `(p_{n+1} - 1) / (p_n - 1)`
    Shifted,
}

impl RatioKind {
    fn ratio(self, p: u64, q: u64) -> Rational {
        match self {
            RatioKind::Plain => Rational::frac(q as i64, p as i64),
            RatioKind::Shifted => Rational::frac(q as i64 - 1, p as i64 - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub kind: RatioKind,
    /// Half-open `(low, high]` on `p_{n+1}`.
    pub range: (u64, u64),
    pub bound: Rational,
    pub pairs_checked: usize,
    /// Every pair whose ratio is `>= bound`, ascending.
    pub violations: Vec<(u64, u64)>,
    pub max_ratio_pair: Option<(u64, u64)>,
    pub max_ratio: Option<Rational>,
    pub verdict: Verdict,
}

impl GapReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

fn scan(
    kind: RatioKind,
    table: &PrimeTable,
    low: u64,
    high: u64,
    bound: &Rational,
) -> Result<GapReport, GapError> {
    let pairs = table.consecutive_pairs(low, high)?;
    let mut violations = Vec::new();
    let mut best: Option<((u64, u64), Rational)> = None;
    for &(p, q) in &pairs {
        let r = kind.ratio(p, q);
        if r >= *bound {
            violations.push((p, q));
        }
        // strict comparison keeps the smaller p_n on ties
        if best.as_ref().map_or(true, |(_, b)| r > *b) {
            best = Some(((p, q), r));
        }
    }
    let (max_ratio_pair, max_ratio) = match best {
        Some((pair, r)) => (Some(pair), Some(r)),
        None => (None, None),
    };
    Ok(GapReport {
        kind,
        range: (low, high),
        bound: bound.clone(),
        pairs_checked: pairs.len(),
        verdict: Verdict::from_ok(violations.is_empty()),
        violations,
        max_ratio_pair,
        max_ratio,
    })
}

/// Checks `p_{n+1} / p_n < bound` for every pair with `low < p_{n+1} <= high`.
pub fn verify_ratio(
    table: &PrimeTable,
    low: u64,
    high: u64,
    bound: &Rational,
) -> Result<GapReport, GapError> {
    scan(RatioKind::Plain, table, low, high, bound)
}

/// Checks `(p_{n+1} - 1) / (p_n - 1) < bound` over the same pairs.
pub fn verify_shifted_ratio(
    table: &PrimeTable,
    low: u64,
    high: u64,
    bound: &Rational,
) -> Result<GapReport, GapError> {
    scan(RatioKind::Shifted, table, low, high, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;
    use proptest::prelude::*;

    #[test]
    fn small_window_violation() {
        let t = sieve(100);
        let r = verify_ratio(&t, 20, 32, &ratio_bound()).unwrap();
        assert_eq!(r.violations, vec![(19, 23), (23, 29)]);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.max_ratio_pair, Some((23, 29)));
    }

    #[test]
    fn shifted_pair_113_127_is_fine() {
        assert_eq!(RatioKind::Shifted.ratio(113, 127), Rational::frac(9, 8));
        assert!(Rational::frac(9, 8) < shifted_bound());
        let t = sieve(200);
        let r = verify_shifted_ratio(&t, 100, 130, &shifted_bound()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn full_range_passes_with_max_at_47_53() {
        let t = sieve(X0);
        let r = verify_ratio(&t, GAP_LOW, X0, &ratio_bound()).unwrap();
        assert!(r.passed());
        // 53/47 beats 127/113, the largest ratio once p_n > 100
        assert_eq!(r.max_ratio_pair, Some((47, 53)));
        assert_eq!(
            verify_ratio(&t, 100, X0, &ratio_bound())
                .unwrap()
                .max_ratio_pair,
            Some((113, 127))
        );
        let s = verify_shifted_ratio(&t, GAP_LOW, X0, &shifted_bound()).unwrap();
        assert!(s.passed());
        assert_eq!(s.max_ratio_pair, Some((47, 53)));
    }

    #[test]
    fn empty_range_is_vacuous_pass() {
        let t = sieve(100);
        let r = verify_shifted_ratio(&t, 37, 37, &shifted_bound()).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 0);
        assert_eq!(r.max_ratio_pair, None);
    }

    #[test]
    fn range_beyond_table_errors() {
        let t = sieve(100);
        assert!(matches!(
            verify_ratio(&t, 37, 1000, &ratio_bound()),
            Err(GapError::Prime(_))
        ));
    }

    #[test]
    fn json_bound_is_fraction_string() {
        let t = sieve(100);
        let r = verify_ratio(&t, 37, 100, &ratio_bound()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["bound"], "143/125");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["range"], serde_json::json!([37, 100]));
    }

    proptest! {
        #[test]
        fn pass_is_monotone_in_bound(low in 0u64..3000, span in 1u64..3000, num in 100i64..200, extra in 1i64..50) {
            let t = sieve(low + span);
            let b = Rational::frac(num, 100);
            let b2 = Rational::frac(num + extra, 100);
            let r1 = verify_ratio(&t, low, low + span, &b).unwrap();
            let r2 = verify_ratio(&t, low, low + span, &b2).unwrap();
            if r1.passed() {
                prop_assert!(r2.passed());
            }
            prop_assert!(r2.violations.iter().all(|v| r1.violations.contains(v)));
        }
    }
}
