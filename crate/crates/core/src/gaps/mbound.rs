use serde::{Deserialize, Serialize};

use super::{six_fifths, GapError, Verdict};
use crate::numeric::{gcd, Rational};
use crate::primes::PrimeTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MBoundRow {
    pub k: u64,
    pub p: u64,
    pub ratio: Rational,
    pub d: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MBoundFailure {
    pub row: MBoundRow,
    pub ratio_ok: bool,
    pub m_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MBoundReport {
    pub k_max: u64,
    pub checked: usize,
    pub failures: Vec<MBoundFailure>,
    /// `k = 32, p = 37`, where the ratio is exactly `6/5` and `m = 6`.
    pub near_miss: MBoundRow,
    pub cofactors_exhausted: bool,
    pub verdict: Verdict,
}

impl MBoundReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

fn row(k: u64, p: u64) -> MBoundRow {
    let d = gcd(p - 1, k - 2);
    MBoundRow {
        k,
        p,
        ratio: Rational::frac((p - 1) as i64, (k - 2) as i64),
        d,
        m: (p - 1) / d,
    }
}

/// If `(p-1)/(k-2) = m/s` in lowest terms with `m > s`, then `m <= 6` forces
/// `m/s >= m/(m-1) >= 6/5`. Checks that over every coprime pair `s < m <= 6`.
pub fn coprime_cofactors_exhausted() -> bool {
    let bound = six_fifths();
    (1..=6u64).all(|m| {
        (1..m)
            .filter(|&s| gcd(m, s) == 1)
            .all(|s| Rational::frac(m as i64, s as i64) >= bound)
    })
}

/// For every even `k` in `(36, k_max]` with `p = next_prime(k)`, checks
/// `(p-1)/(k-2) < 6/5` and `m > 6`.
pub fn m_bound_check(table: &PrimeTable, k_max: u64) -> Result<MBoundReport, GapError> {
    if k_max < 38 {
        return Err(GapError::InvalidParameter(format!(
            "k_max = {k_max} must be at least 38"
        )));
    }
    if k_max >= table.limit() {
        return Err(crate::primes::PrimeError::RangeBeyondTable {
            high: k_max,
            limit: table.limit(),
        }
        .into());
    }
    let bound = six_fifths();
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in (38..=k_max).step_by(2) {
        let r = row(k, table.next_prime(k));
        checked += 1;
        let ratio_ok = r.ratio < bound;
        let m_ok = r.m > 6;
        if !(ratio_ok && m_ok) {
            failures.push(MBoundFailure {
                row: r,
                ratio_ok,
                m_ok,
            });
        }
    }
    Ok(MBoundReport {
        k_max,
        checked,
        near_miss: row(32, 37),
        cofactors_exhausted: coprime_cofactors_exhausted(),
        verdict: Verdict::from_ok(failures.is_empty()),
        failures,
    })
}
