//! Whole-range audit: termination plus the per-step facts that make the
//! descent work above the hand-checked table.

use serde::{Deserialize, Serialize};

use super::{build_graph, verify_termination, DescentError, TerminationReport};
use crate::gaps::{ratio_bound, Verdict};
use crate::numeric::Rational;
use crate::primes::PrimeTable;

/// Above this weight every step is expected to use the next prime directly.
pub const TABLE_MAX_K: u64 = 36;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LateStepFailure {
    pub k: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentAudit {
    pub termination: TerminationReport,
    /// Weights whose first prime above `k` was rejected.
    pub skipped_weights: Vec<u64>,
    /// Steps with `k > 36` checked for `p = next_prime(k)`, `m > 6` and
    /// `p / k' > 143/125` on both branches.
    pub late_steps_checked: usize,
    pub late_failures: Vec<LateStepFailure>,
    pub verdict: Verdict,
}

impl DescentAudit {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

pub fn audit_descent(max_k: u64, table: &PrimeTable) -> Result<DescentAudit, DescentError> {
    let graph = build_graph(max_k, table)?;
    let termination = verify_termination(&graph);
    let skipped_weights: Vec<u64> = termination.skipped.iter().map(|s| s.k).collect();
    let bound = ratio_bound();
    let mut late_failures = Vec::new();
    let mut late_steps_checked = 0;
    for s in graph.steps().filter(|s| s.k > TABLE_MAX_K) {
        late_steps_checked += 1;
        let mut fail = |reason: String| late_failures.push(LateStepFailure { k: s.k, reason });
        if s.prime_skips != 0 {
            fail(format!("p = {} is not the next prime", s.p));
        }
        if s.m <= 6 {
            fail(format!("m = {}", s.m));
        }
        for target in [s.k_hi, s.k_lo] {
            if Rational::frac(s.p as i64, target as i64) <= bound {
                fail(format!("p / {target} <= 143/125"));
            }
        }
    }
    let ok = termination.passed()
        && skipped_weights.iter().all(|&k| k <= TABLE_MAX_K)
        && late_failures.is_empty();
    Ok(DescentAudit {
        termination,
        skipped_weights,
        late_steps_checked,
        late_failures,
        verdict: Verdict::from_ok(ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audit_to_two_thousand() {
        let t = PrimeTable::sieve(4000);
        let a = audit_descent(2000, &t).unwrap();
        assert!(a.passed());
        assert_eq!(a.skipped_weights, vec![32]);
        assert_eq!(a.late_steps_checked, (38..=2000).step_by(2).count());
    }
}
