//! Segmented sieve of Eratosthenes and consecutive-prime iteration.
//!
//! Base primes up to `sqrt(limit)` come from a plain sieve; the range
//! `[0, limit]` is then crossed off one fixed-size window at a time so the
//! working set never exceeds a segment. `next_prime` keeps sieving windows
//! past the table limit instead of failing.

use thiserror::Error;

/// Entries per sieve window.
pub const DEFAULT_SEGMENT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("range upper end {high} exceeds sieve limit {limit}")]
    RangeBeyondTable { high: u64, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes `<= n` by an unsegmented sieve; used for base primes only.
fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Appends the primes in `[lo, hi)` to `out`. `base` must hold every prime
/// up to `sqrt(hi - 1)`.
fn sieve_window(lo: u64, hi: u64, base: &[u64], out: &mut Vec<u64>) {
    if hi <= lo {
        return;
    }
    let mut is_prime = vec![true; (hi - lo) as usize];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut j = start;
        while j < hi {
            is_prime[(j - lo) as usize] = false;
            j += p;
        }
    }
    for (i, &flag) in is_prime.iter().enumerate() {
        let n = lo + i as u64;
        if flag && n >= 2 {
            out.push(n);
        }
    }
}

/// Primes in `[lo, hi]` using windows of `segment` entries.
fn primes_between(lo: u64, hi: u64, segment: usize) -> Vec<u64> {
    let base = small_primes(isqrt(hi));
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = hi
            .saturating_add(1)
            .min(start.saturating_add(segment as u64));
        sieve_window(start, end, &base, &mut out);
        start = end;
    }
    out
}

impl PrimeTable {
    pub fn sieve(limit: u64) -> Self {
        Self::sieve_with_segment(limit, DEFAULT_SEGMENT)
    }

    pub fn sieve_with_segment(limit: u64, segment: usize) -> Self {
        assert!(segment > 0, "segment size must be positive");
        PrimeTable {
            limit,
            primes: primes_between(0, limit, segment),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Membership for `n <= limit`; falls back to trial division above it.
    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            self.primes.binary_search(&n).is_ok()
        } else {
            trial_division_is_prime(n)
        }
    }

    /// Smallest prime strictly greater than `n`.
    pub fn next_prime(&self, n: u64) -> u64 {
        let idx = self.primes.partition_point(|&p| p <= n);
        if let Some(&p) = self.primes.get(idx) {
            return p;
        }
        next_prime_beyond(n.max(self.limit), n)
    }

    /// Adjacent pairs `(p_n, p_{n+1})` with `low < p_{n+1} <= high`.
    pub fn consecutive_pairs(&self, low: u64, high: u64) -> Result<Vec<(u64, u64)>, PrimeError> {
        if high > self.limit {
            return Err(PrimeError::RangeBeyondTable {
                high,
                limit: self.limit,
            });
        }
        Ok(self
            .primes
            .windows(2)
            .map(|w| (w[0], w[1]))
            .skip_while(|&(_, q)| q <= low)
            .take_while(|&(_, q)| q <= high)
            .collect())
    }
}

pub fn sieve(limit: u64) -> PrimeTable {
    PrimeTable::sieve(limit)
}

/// Smallest prime strictly greater than `n`, found by sieving windows.
pub fn next_prime(n: u64) -> u64 {
    next_prime_beyond(n, n)
}

fn next_prime_beyond(start: u64, n: u64) -> u64 {
    let mut lo = start.max(n) + 1;
    let width = 1024u64;
    loop {
        let hi = lo + width - 1;
        if let Some(&p) = primes_between(lo, hi, DEFAULT_SEGMENT)
            .iter()
            .find(|&&p| p > n)
        {
            return p;
        }
        lo = hi + 1;
    }
}

fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_limits() {
        assert_eq!(sieve(30).primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(sieve(1).is_empty());
        assert!(sieve(0).is_empty());
        assert_eq!(sieve(2).primes(), &[2]);
    }

    #[test]
    fn segment_size_does_not_change_output() {
        let reference = PrimeTable::sieve_with_segment(20_000, 1 << 20);
        for seg in [1, 7, 64, 1000, 4096] {
            assert_eq!(
                PrimeTable::sieve_with_segment(20_000, seg),
                reference,
                "segment {seg}"
            );
        }
    }

    #[test]
    fn next_prime_examples() {
        let t = sieve(100);
        assert_eq!(t.next_prime(24), 29);
        assert_eq!(t.next_prime(32), 37);
        assert_eq!(t.next_prime(36), 37);
        assert_eq!(t.next_prime(1), 2);
        assert_eq!(next_prime(36), 37);
    }

    #[test]
    fn next_prime_extends_past_limit() {
        let t = sieve(50);
        assert_eq!(t.next_prime(47), 53);
        assert_eq!(t.next_prime(100), 101);
        assert_eq!(t.next_prime(1_000_000), 1_000_003);
    }

    #[test]
    fn pairs_in_window() {
        let t = sieve(200);
        assert_eq!(
            t.consecutive_pairs(37, 48).unwrap(),
            vec![(37, 41), (41, 43), (43, 47)]
        );
        assert!(t.consecutive_pairs(37, 37).unwrap().is_empty());
        assert!(t.consecutive_pairs(100, 130).unwrap().contains(&(113, 127)));
        assert_eq!(
            t.consecutive_pairs(0, 300),
            Err(PrimeError::RangeBeyondTable {
                high: 300,
                limit: 200
            })
        );
    }

    proptest! {
        #[test]
        fn window_agrees_with_trial_division(start in 0u64..200_000, len in 1u64..2_000) {
            let table = sieve(start + len);
            let listed: Vec<u64> = table.primes().iter().copied().filter(|&p| p >= start).collect();
            let oracle: Vec<u64> = (start..=start + len).filter(|&n| trial_division_is_prime(n)).collect();
            prop_assert_eq!(listed, oracle);
        }

        #[test]
        fn pairs_have_no_prime_between(low in 0u64..50_000, span in 1u64..5_000) {
            let table = sieve(low + span);
            for (p, q) in table.consecutive_pairs(low, low + span).unwrap() {
                prop_assert!(p < q);
                prop_assert!(((p + 1)..q).all(|n| !trial_division_is_prime(n)));
                prop_assert_eq!(table.next_prime(p), q);
            }
        }
    }
}
