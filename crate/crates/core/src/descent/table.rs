use serde::{Deserialize, Serialize};

use super::{reduction_step, ReductionStep};
use crate::primes::PrimeTable;

/// A row of the published hand-check table for `k <= 36`. The rows for
/// `k = 34` and `k = 36` print only the prime and the two target weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedRow {
    pub k: u64,
    pub p: u64,
    /// `(d, m, t, dt)` when printed.
    pub detail: Option<(u64, u64, u64, u64)>,
    pub k_prime: (u64, u64),
}

const fn full(k: u64, p: u64, d: u64, m: u64, t: u64, dt: u64, hi: u64, lo: u64) -> PrintedRow {
    PrintedRow {
        k,
        p,
        detail: Some((d, m, t, dt)),
        k_prime: (hi, lo),
    }
}

pub const PRINTED_ROWS: [PrintedRow; 12] = [
    full(10, 11, 2, 5, 3, 6, 8, 6),
    full(16, 17, 2, 8, 5, 10, 12, 8),
    full(18, 19, 2, 9, 5, 10, 12, 10),
    full(20, 23, 2, 11, 6, 12, 14, 12),
    full(22, 23, 2, 11, 6, 12, 14, 12),
    full(24, 29, 2, 14, 9, 18, 20, 12),
    full(26, 29, 4, 7, 4, 16, 18, 14),
    full(28, 29, 2, 14, 9, 18, 20, 12),
    full(30, 31, 2, 15, 8, 16, 18, 16),
    full(32, 43, 6, 7, 4, 24, 26, 20),
    PrintedRow {
        k: 34,
        p: 37,
        detail: None,
        k_prime: (22, 18),
    },
    PrintedRow {
        k: 36,
        p: 37,
        detail: None,
        k_prime: (22, 16),
    },
];

pub fn printed_row(k: u64) -> Option<&'static PrintedRow> {
    PRINTED_ROWS.iter().find(|r| r.k == k)
}

impl PrintedRow {
    /// Compares every printed field against a computed step.
    pub fn agrees_with(&self, step: &ReductionStep) -> bool {
        let detail_ok = match self.detail {
            Some(detail) => detail == (step.d, step.m, step.t, step.dt),
            None => true,
        };
        self.k == step.k && self.p == step.p && detail_ok && self.k_prime == (step.k_hi, step.k_lo)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub step: ReductionStep,
    pub printed: PrintedRow,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.step.matches_paper == Some(true)
    }
}

/// Recomputes the twelve hand-checked rows, `k = 10, 16, 18, ..., 36`.
pub fn paper_table() -> Vec<TableRow> {
    paper_table_with(&PrimeTable::sieve(100))
}

pub fn paper_table_with(primes: &PrimeTable) -> Vec<TableRow> {
    PRINTED_ROWS
        .iter()
        .map(|printed| TableRow {
            step: reduction_step(printed.k, primes).expect("table weights are reducible"),
            printed: *printed,
        })
        .collect()
}
