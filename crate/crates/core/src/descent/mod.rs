//! The weight-reduction recipe for level-1 Serre weights.
//!
//! For an even weight `k` (with `k = 10` or `k >= 16`) a prime `p > k` is
//! chosen, `d = gcd(p - 1, k - 2)` and `m = (p - 1) / d` give the order of
//! the nebentypus exponent, and a twist exponent `t` coprime to `m` moves the
//! exponent to `dt`. The two possible residual weights are `dt + 2` and
//! `p + 1 - dt`; both must fall below `k`.

mod audit;
mod graph;
mod table;

pub use audit::{audit_descent, DescentAudit, LateStepFailure, TABLE_MAX_K};
pub use graph::{
    build_graph, chain, verify_termination, BranchPolicy, DescentGraph, SkipRecord,
    TerminationReport,
};
pub use table::{paper_table, paper_table_with, printed_row, PrintedRow, TableRow, PRINTED_ROWS};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::gcd;
use crate::primes::PrimeTable;

/// Weights whose modularity is an input to the induction.
pub const BASE_WEIGHTS: [u64; 6] = [2, 4, 6, 8, 12, 14];

/// More skips than this means the selection loop is not converging.
const MAX_PRIME_SKIPS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("weight {0} is not reducible (needs even k = 10 or k >= 16)")]
    NotReducible(u64),
    #[error("inadmissible m = {0}: no twist exponent t with gcd(t, m) = 1 and 1 < t < m - 1")]
    InadmissibleModulus(u64),
    #[error("no admissible prime found for k = {k} after {skipped} skips")]
    NoAdmissiblePrime { k: u64, skipped: u32 },
    #[error("max_k = {0} is below 14")]
    GraphTooSmall(u64),
}

pub fn is_base(k: u64) -> bool {
    BASE_WEIGHTS.contains(&k)
}

/// Weights the recipe applies to: even, and `k = 10` or `k >= 16`.
pub fn is_reducible(k: u64) -> bool {
    k % 2 == 0 && (k == 10 || k >= 16)
}

/// Picks the twist exponent for a nebentypus of order `m`:
/// `(m + 1) / 2` for odd `m`, `m / 2 + 2` for `m ≡ 2 (mod 4)`, `m / 2 + 1`
/// for `4 | m`. Fails unless `gcd(t, m) = 1` and `1 < t < m - 1`; `t = 1`
/// would keep the exponent and `t = m - 1` would conjugate it.
pub fn choose_t(m: u64) -> Result<u64, DescentError> {
    if m == 0 {
        return Err(DescentError::InadmissibleModulus(m));
    }
    let t = if m % 2 == 1 {
        (m + 1) / 2
    } else if m % 4 == 2 {
        m / 2 + 2
    } else {
        m / 2 + 1
    };
    if t > 1 && t + 1 < m && gcd(t, m) == 1 {
        Ok(t)
    } else {
        Err(DescentError::InadmissibleModulus(m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeChoice {
    pub p: u64,
    pub prime_skips: u32,
}

fn modulus_for(k: u64, p: u64) -> (u64, u64) {
    let d = gcd(p - 1, k - 2);
    (d, (p - 1) / d)
}

/// Smallest prime `p > k` whose `m` admits a twist exponent, with the number
/// of smaller primes that were rejected.
pub fn select_prime(k: u64, table: &PrimeTable) -> Result<PrimeChoice, DescentError> {
    if !is_reducible(k) {
        return Err(DescentError::NotReducible(k));
    }
    let mut p = table.next_prime(k);
    let mut prime_skips = 0;
    loop {
        let (_, m) = modulus_for(k, p);
        if choose_t(m).is_ok() {
            return Ok(PrimeChoice { p, prime_skips });
        }
        prime_skips += 1;
        if prime_skips > MAX_PRIME_SKIPS {
            return Err(DescentError::NoAdmissiblePrime {
                k,
                skipped: prime_skips - 1,
            });
        }
        p = table.next_prime(p);
    }
}

/// One application of the recipe. `matches_paper` is set only for the
/// weights in the hand-checked table (k <= 36).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub k: u64,
    pub p: u64,
    pub d: u64,
    pub m: u64,
    pub t: u64,
    pub dt: u64,
    pub k_hi: u64,
    pub k_lo: u64,
    pub prime_skips: u32,
    pub matches_paper: Option<bool>,
}

impl ReductionStep {
    pub fn targets(&self) -> (u64, u64) {
        (self.k_hi, self.k_lo)
    }

    /// Lists every violated step invariant; empty when the step is sound.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if gcd(self.p - 1, self.k - 2) != self.d {
            v.push(format!("d = {} is not gcd(p-1, k-2)", self.d));
        }
        if self.m * self.d != self.p - 1 {
            v.push(format!("m·d = {} != p-1", self.m * self.d));
        }
        if self.dt != self.d * self.t {
            v.push("dt != d·t".to_string());
        }
        if gcd(self.t, self.m) != 1 {
            v.push(format!("gcd(t, m) = {}", gcd(self.t, self.m)));
        }
        if !(self.t > 1 && self.t + 1 < self.m) {
            v.push(format!("t = {} outside (1, m-1)", self.t));
        }
        if self.k_hi != self.dt + 2 || self.k_lo + self.dt != self.p + 1 {
            v.push("targets are not dt+2 and p+1-dt".to_string());
        }
        if self.k_hi % 2 != 0 || self.k_lo % 2 != 0 {
            v.push("odd target weight".to_string());
        }
        if self.k_hi >= self.k || self.k_lo >= self.k {
            v.push(format!(
                "target not below k: ({}, {})",
                self.k_hi, self.k_lo
            ));
        }
        let modulus = self.p - 1;
        let nebentypus = (self.k - 2) % modulus;
        let conjugate = (modulus - nebentypus) % modulus;
        let twisted = self.dt % modulus;
        if twisted == nebentypus || twisted == conjugate {
            v.push("dt ≡ ±(k-2) mod p-1".to_string());
        }
        v
    }
}

pub fn reduction_step(k: u64, table: &PrimeTable) -> Result<ReductionStep, DescentError> {
    let PrimeChoice { p, prime_skips } = select_prime(k, table)?;
    let (d, m) = modulus_for(k, p);
    let t = choose_t(m)?;
    let dt = d * t;
    let mut step = ReductionStep {
        k,
        p,
        d,
        m,
        t,
        dt,
        k_hi: dt + 2,
        k_lo: p + 1 - dt,
        prime_skips,
        matches_paper: None,
    };
    step.matches_paper = printed_row(k).map(|row| row.agrees_with(&step));
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;

    #[test]
    fn choose_t_rules() {
        assert_eq!(choose_t(5), Ok(3));
        assert_eq!(choose_t(14), Ok(9));
        assert_eq!(choose_t(8), Ok(5));
        assert_eq!(choose_t(7), Ok(4));
        assert_eq!(choose_t(18), Ok(11));
        assert_eq!(choose_t(6), Err(DescentError::InadmissibleModulus(6)));
        for m in [0, 1, 2, 3, 4] {
            assert!(choose_t(m).is_err(), "m = {m}");
        }
    }

    #[test]
    fn every_m_above_six_is_admissible() {
        for m in 7..2000 {
            let t = choose_t(m).unwrap();
            assert_eq!(gcd(t, m), 1);
            assert!(1 < t && t < m - 1);
        }
    }

    #[test]
    fn select_prime_examples() {
        let t = sieve(200);
        assert_eq!(
            select_prime(10, &t),
            Ok(PrimeChoice {
                p: 11,
                prime_skips: 0
            })
        );
        assert_eq!(
            select_prime(32, &t),
            Ok(PrimeChoice {
                p: 43,
                prime_skips: 2
            })
        );
        assert_eq!(
            select_prime(20, &t),
            Ok(PrimeChoice {
                p: 23,
                prime_skips: 0
            })
        );
    }

    #[test]
    fn rejects_non_reducible_weights() {
        let t = sieve(100);
        for k in [0, 2, 4, 6, 8, 11, 12, 14, 15, 17] {
            assert_eq!(reduction_step(k, &t), Err(DescentError::NotReducible(k)));
        }
    }

    #[test]
    fn step_examples() {
        let table = sieve(100);
        let s = reduction_step(16, &table).unwrap();
        assert_eq!(
            (s.p, s.d, s.m, s.t, s.dt, s.k_hi, s.k_lo),
            (17, 2, 8, 5, 10, 12, 8)
        );
        let s = reduction_step(26, &table).unwrap();
        assert_eq!(
            (s.p, s.d, s.m, s.t, s.dt, s.k_hi, s.k_lo),
            (29, 4, 7, 4, 16, 18, 14)
        );
        let s = reduction_step(34, &table).unwrap();
        assert_eq!(
            (s.p, s.d, s.m, s.t, s.dt, s.k_hi, s.k_lo),
            (37, 4, 9, 5, 20, 22, 18)
        );
        assert_eq!(s.matches_paper, Some(true));
        let s = reduction_step(36, &table).unwrap();
        assert_eq!(
            (s.p, s.d, s.m, s.t, s.dt, s.k_hi, s.k_lo),
            (37, 2, 18, 11, 22, 24, 16)
        );
        assert_eq!(s.matches_paper, Some(false));
        let s = reduction_step(38, &table).unwrap();
        assert_eq!(s.matches_paper, None);
        assert!(s.invariant_violations().is_empty());
    }

    #[test]
    fn k32_skips_37_and_41() {
        let table = sieve(100);
        let (_, m37) = modulus_for(32, 37);
        assert_eq!(m37, 6);
        let (d41, m41) = modulus_for(32, 41);
        assert_eq!((d41, m41), (10, 4));
        let s = reduction_step(32, &table).unwrap();
        assert_eq!(
            (s.p, s.d, s.m, s.t, s.dt, s.k_hi, s.k_lo, s.prime_skips),
            (43, 6, 7, 4, 24, 26, 20, 2)
        );
    }

    #[test]
    fn serializes_with_expected_keys() {
        let step = reduction_step(16, &sieve(100)).unwrap();
        let v = serde_json::to_value(&step).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for key in [
            "k",
            "p",
            "d",
            "m",
            "t",
            "dt",
            "k_hi",
            "k_lo",
            "prime_skips",
            "matches_paper",
        ] {
            assert!(keys.contains(&key), "missing {key}");
        }
    }
}
