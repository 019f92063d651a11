//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails, except for the ones listed in `UNATTAINABLE`, which are
//! still reported as FAIL.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serre_audit::charconj::campaign::{
    builtin_suite, frobenius_campaign, invariance_campaign, mackey_campaign, random_class_function,
    rng, two_generated_subgroups,
};
use serre_audit::charconj::{induce, Cyclo, FiniteGroup, MAX_ORDER};
use serre_audit::descent::{
    audit_descent, build_graph, paper_table, verify_termination, BASE_WEIGHTS,
};
use serre_audit::gaps::{
    chebyshev_lower_constant, chebyshev_threshold, chebyshev_upper_constant, ratio_bound,
    shifted_bound, star_inequality_check, verify_ratio, verify_shifted_ratio,
};
use serre_audit::numeric::Rational;
use serre_audit::primes::PrimeTable;

/// Criteria whose stated expectation disagrees with an exhaustive oracle.
const UNATTAINABLE: [u32; 1] = [2];

struct Outcome {
    id: u32,
    name: &'static str,
    budget: Duration,
    elapsed: Duration,
    failures: Vec<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed < self.budget
    }
}

fn criterion(
    id: u32,
    name: &'static str,
    budget_ms: u64,
    body: impl FnOnce(&mut Vec<String>),
) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    body(&mut failures);
    let elapsed = start.elapsed();
    Outcome {
        id,
        name,
        budget: Duration::from_millis(budget_ms),
        elapsed,
        failures,
    }
}

macro_rules! check {
    ($f:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $f.push(format!($($msg)+));
        }
    };
}

// ---- independent oracles ----

fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn trial_division_primes(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&n| trial_division_is_prime(n))
        .collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `a/b > c/d` for positive denominators.
fn frac_gt(a: u64, b: u64, c: u64, d: u64) -> bool {
    (a as u128) * (d as u128) > (c as u128) * (b as u128)
}

fn twist(m: u64) -> Option<u64> {
    let t = match m % 4 {
        1 | 3 => (m + 1) / 2,
        2 => m / 2 + 2,
        _ => m / 2 + 1,
    };
    (t > 1 && t + 1 < m && gcd(t, m) == 1).then_some(t)
}

// ---- criteria ----

fn table() -> Outcome {
    criterion(1, "table reproduction", 1_000, |f| {
        // (k, p, d, m, t, dt, k'_hi, k'_lo) as printed
        let printed: [(u64, u64, u64, u64, u64, u64, u64, u64); 10] = [
            (10, 11, 2, 5, 3, 6, 8, 6),
            (16, 17, 2, 8, 5, 10, 12, 8),
            (18, 19, 2, 9, 5, 10, 12, 10),
            (20, 23, 2, 11, 6, 12, 14, 12),
            (22, 23, 2, 11, 6, 12, 14, 12),
            (24, 29, 2, 14, 9, 18, 20, 12),
            (26, 29, 4, 7, 4, 16, 18, 14),
            (28, 29, 2, 14, 9, 18, 20, 12),
            (30, 31, 2, 15, 8, 16, 18, 16),
            (32, 43, 6, 7, 4, 24, 26, 20),
        ];
        let rows = paper_table();
        check!(f, rows.len() == 12, "{} rows", rows.len());
        for (i, &(k, p, d, m, t, dt, hi, lo)) in printed.iter().enumerate() {
            let s = &rows[i].step;
            check!(
                f,
                (s.k, s.p, s.d, s.m, s.t, s.dt, s.k_hi, s.k_lo) == (k, p, d, m, t, dt, hi, lo),
                "row k = {k} differs: {s:?}"
            );
            check!(f, rows[i].matches(), "row k = {k} not flagged as matching");
        }
        let r34 = &rows[10].step;
        check!(
            f,
            (r34.k, r34.p, r34.d, r34.m, r34.t, r34.dt, r34.k_hi, r34.k_lo)
                == (34, 37, 4, 9, 5, 20, 22, 18),
            "k = 34: {r34:?}"
        );
        check!(
            f,
            rows[10].matches(),
            "k = 34 should match the printed pair"
        );
        let r36 = &rows[11];
        check!(
            f,
            r36.step.k == 36 && r36.step.targets() == (24, 16),
            "k = 36 targets {:?}",
            r36.step.targets()
        );
        check!(
            f,
            r36.printed.k_prime == (22, 16) && !r36.matches(),
            "k = 36 not flagged divergent"
        );
    })
}

fn gaps(primes: &[u64]) -> Outcome {
    criterion(2, "gap audit", 5_000, |f| {
        let table = PrimeTable::sieve(100_000);
        let plain = verify_ratio(&table, 37, 100_000, &ratio_bound()).expect("range within sieve");
        let shifted = verify_shifted_ratio(&table, 37, 100_000, &shifted_bound())
            .expect("range within sieve");

        let pairs: Vec<(u64, u64)> = primes
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|&(_, q)| q > 37 && q <= 100_000)
            .collect();
        let plain_viol: Vec<_> = pairs
            .iter()
            .copied()
            .filter(|&(p, q)| !frac_gt(143, 125, q, p))
            .collect();
        let shifted_viol: Vec<_> = pairs
            .iter()
            .copied()
            .filter(|&(p, q)| !frac_gt(23, 20, q - 1, p - 1))
            .collect();
        let mut oracle_max = pairs[0];
        for &(p, q) in &pairs[1..] {
            if frac_gt(q, p, oracle_max.1, oracle_max.0) {
                oracle_max = (p, q);
            }
        }

        check!(
            f,
            plain.pairs_checked == pairs.len(),
            "pairs {} vs oracle {}",
            plain.pairs_checked,
            pairs.len()
        );
        check!(
            f,
            plain.violations == plain_viol && plain_viol.is_empty(),
            "plain violations {:?}",
            plain.violations
        );
        check!(
            f,
            shifted.violations == shifted_viol && shifted_viol.is_empty(),
            "shifted violations {:?}",
            shifted.violations
        );
        check!(
            f,
            plain.passed() && shifted.passed(),
            "verdicts {} / {}",
            plain.verdict,
            shifted.verdict
        );
        check!(
            f,
            plain.max_ratio_pair == Some(oracle_max),
            "max pair {:?} vs oracle {:?}",
            plain.max_ratio_pair,
            oracle_max
        );
        check!(
            f,
            plain.max_ratio_pair == Some((113, 127)),
            "stated max ratio pair (113, 127), but 53/47 > 127/113 and the exhaustive oracle gives {:?}",
            oracle_max
        );
    })
}

fn threshold() -> Outcome {
    criterion(3, "Chebyshev threshold", 1_000, |f| {
        let r = chebyshev_threshold(
            &chebyshev_lower_constant(),
            &chebyshev_upper_constant(),
            &ratio_bound(),
            30,
        )
        .expect("valid constants");
        let dec = |s: &str| s.parse::<Rational>().expect("decimal literal");
        check!(
            f,
            r.threshold.width() < Rational::frac(1, 100),
            "width {}",
            r.threshold.width()
        );
        check!(
            f,
            r.threshold.lies_within(&dec("65530.89"), &dec("65530.90")),
            "enclosure {} not within [65530.89, 65530.90]",
            r.threshold
        );
        // 40-digit reference computed independently with mpmath
        check!(
            f,
            r.threshold
                .contains(&dec("65530.8981683731542370962531834094202938")),
            "reference value outside {}",
            r.threshold
        );
        check!(
            f,
            r.threshold.upper() < Rational::from(100_000i64),
            "upper {}",
            r.threshold.upper()
        );
        check!(f, r.below_x0, "below_x0 false");
    })
}

fn descent(primes: &[u64]) -> Outcome {
    criterion(4, "descent termination to 10^6", 60_000, |f| {
        const MAX_K: u64 = 1_000_000;
        let table = PrimeTable::sieve(MAX_K + MAX_K / 4);
        let audit = audit_descent(MAX_K, &table).expect("graph builds");
        check!(f, audit.passed(), "audit verdict {}", audit.verdict);
        check!(
            f,
            audit.termination.terminates && audit.termination.stuck.is_empty(),
            "stuck weights {:?}",
            audit.termination.stuck
        );
        check!(
            f,
            audit.skipped_weights == vec![32],
            "skipped weights {:?}",
            audit.skipped_weights
        );

        // recompute every step from scratch with the oracle prime list
        let graph = build_graph(MAX_K, &table).expect("graph builds");
        check!(
            f,
            verify_termination(&graph).passed(),
            "termination report fails"
        );
        let next_prime = |n: u64| primes.get(primes.partition_point(|&p| p <= n)).copied();
        let mut checked = 0usize;
        let mut reaches_base = vec![false; (MAX_K / 2 + 1) as usize];
        for &b in &BASE_WEIGHTS {
            reaches_base[(b / 2) as usize] = true;
        }
        for k in (10..=MAX_K).step_by(2).filter(|&k| k == 10 || k >= 16) {
            let Some(step) = graph.step(k) else {
                f.push(format!("missing step for k = {k}"));
                continue;
            };
            checked += 1;
            let mut p = next_prime(k).expect("oracle covers range");
            let mut skips = 0;
            let (d, m, t) = loop {
                let d = gcd(p - 1, k - 2);
                let m = (p - 1) / d;
                if let Some(t) = twist(m) {
                    break (d, m, t);
                }
                skips += 1;
                p = next_prime(p).expect("oracle covers range");
            };
            let (hi, lo) = (d * t + 2, p + 1 - d * t);
            check!(
                f,
                (step.p, step.d, step.m, step.t, step.k_hi, step.k_lo) == (p, d, m, t, hi, lo),
                "k = {k}: {step:?}"
            );
            check!(
                f,
                hi < k && lo < k && hi % 2 == 0 && lo % 2 == 0 && lo >= 2,
                "k = {k} does not reduce: ({hi}, {lo})"
            );
            check!(f, (skips > 0) == (k == 32), "k = {k}: {skips} skips");
            if k > 36 {
                check!(f, skips == 0 && m > 6, "k = {k}: skips {skips}, m {m}");
                check!(
                    f,
                    frac_gt(p, hi, 143, 125) && frac_gt(p, lo, 143, 125),
                    "k = {k}: ratio p/k' <= 143/125"
                );
            }
            // targets are smaller, so their status is already known
            let ok = reaches_base[(hi / 2) as usize] && reaches_base[(lo / 2) as usize];
            check!(f, ok, "k = {k}: a branch does not reach the base set");
            reaches_base[(k / 2) as usize] = ok;
        }
        check!(
            f,
            checked == graph.steps().count(),
            "checked {checked} weights"
        );
    })
}

fn star() -> Outcome {
    criterion(5, "star inequality grid", 1_000, |f| {
        let r = star_inequality_check(200, 200);
        check!(
            f,
            r.passed() && r.failures.is_empty(),
            "{} failures",
            r.failures.len()
        );
        let mut cells = 0;
        for m in 7..=200u64 {
            let Some(t) = twist(m) else { continue };
            for d in 1..=200u64 {
                cells += 1;
                let p = m * d + 1;
                let (hi, lo) = (t * d + 2, p + 1 - t * d);
                check!(
                    f,
                    frac_gt(p, hi, 143, 125) && frac_gt(p, lo, 143, 125),
                    "oracle failure at m = {m}, d = {d}"
                );
            }
        }
        check!(
            f,
            r.cells_checked == cells,
            "cells {} vs oracle {cells}",
            r.cells_checked
        );
        let expected = [
            "(7d+1)/(4d+2)",
            "(9d+1)/(5d+2)",
            "(11d+1)/(6d+2)",
            "(10d+1)/(7d+2)",
            "(14d+1)/(9d+2)",
            "(18d+1)/(11d+2)",
            "(8d+1)/(5d+2)",
            "(12d+1)/(7d+2)",
            "(16d+1)/(9d+2)",
        ];
        let got: Vec<&str> = r.families.iter().map(|h| h.quotient.as_str()).collect();
        check!(f, got == expected, "family heads {got:?}");
        check!(
            f,
            r.families_match,
            "family heads do not match the printed quotients"
        );
    })
}

/// `(Ind χ)(g) = 1/|H| Σ_{x ∈ G} χ°(x⁻¹gx)`, written against the raw table.
fn oracle_induce(
    g: &FiniteGroup,
    h_elems: &[usize],
    chi_at: impl Fn(usize) -> Cyclo,
    rep: usize,
) -> Cyclo {
    let mut acc = Cyclo::from_integer(0);
    for x in 0..g.order() {
        let y = g.mul(g.mul(g.inverse(x), rep), x);
        if h_elems.contains(&y) {
            acc = &acc + &chi_at(y);
        }
    }
    acc.scale(&Rational::frac(1, h_elems.len() as i64))
}

fn characters() -> Outcome {
    criterion(6, "character suite", 30_000, |f| {
        let suite = builtin_suite();
        let labels: BTreeSet<&str> = suite.iter().map(|g| g.label()).collect();
        for want in ["C1", "C12", "S3", "S4", "D4", "Q8"] {
            check!(f, labels.contains(want), "suite lacks {want}");
        }
        for (i, g) in suite.iter().enumerate() {
            let seed = 20_000 + 10 * i as u64;
            let fr = frobenius_campaign(g, 50, seed).expect("campaign runs");
            check!(
                f,
                fr.passed && fr.draws >= 50,
                "Frobenius on {}: {:?}",
                g.label(),
                fr.failures
            );
            let mk = mackey_campaign(g, 50, seed + 1).expect("campaign runs");
            check!(
                f,
                mk.passed && mk.draws >= 50,
                "Mackey on {}: {:?}",
                g.label(),
                mk.failures
            );
        }

        let mut specs = 0;
        for name in ["S3", "S4", "Q8"] {
            let g = Arc::new(FiniteGroup::builtin(name).expect("built-in"));
            let inv = invariance_campaign(&g, 100, 30_000).expect("campaign runs");
            specs += inv.draws;
            check!(f, inv.passed, "invariance on {name}: {:?}", inv.failures);
        }
        check!(f, specs >= 100, "only {specs} Brauer specs");

        for (i, g) in suite.iter().filter(|g| g.order() <= 24).enumerate() {
            let mut r = rng(40_000 + i as u64);
            for h in two_generated_subgroups(g) {
                let chi = random_class_function(&mut r, h.group());
                let induced = induce(&h, &chi).expect("induction");
                let chi_at = |y: usize| chi.value(h.to_local(y).expect("y in H")).clone();
                for c in 0..g.class_count() {
                    let rep = g.class_representative(c);
                    let want = oracle_induce(g, h.elements(), chi_at, rep);
                    check!(
                        f,
                        *induced.value(rep) == want,
                        "{}: |H| = {} class {c}",
                        g.label(),
                        h.order()
                    );
                }
            }
        }
        check!(
            f,
            suite.iter().all(|g| g.order() <= MAX_ORDER),
            "suite exceeds the order cap"
        );
    })
}

fn oracle_count(primes: &[u64]) -> Outcome {
    criterion(7, "sieve vs trial division", 10_000, |f| {
        let table = PrimeTable::sieve(100_000);
        let oracle: Vec<u64> = primes
            .iter()
            .copied()
            .take_while(|&p| p <= 100_000)
            .collect();
        check!(f, oracle.len() == 9592, "oracle count {}", oracle.len());
        check!(f, table.len() == 9592, "sieve count {}", table.len());
        check!(
            f,
            table.primes() == oracle.as_slice(),
            "sieve and oracle lists differ"
        );
    })
}

fn main() {
    // trial division to 1.25·10^6 covers every prime the descent audit touches
    let primes = trial_division_primes(1_250_000);
    let outcomes = [
        table(),
        gaps(&primes),
        threshold(),
        descent(&primes),
        star(),
        characters(),
        oracle_count(&primes),
    ];

    let mut hard_failures = 0;
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let waived = !o.passed() && UNATTAINABLE.contains(&o.id);
        println!(
            "criterion {} {:<28} {status}  ({:.2?} of {:?}){}",
            o.id,
            o.name,
            o.elapsed,
            o.budget,
            if waived {
                "  [stated expectation unattainable]"
            } else {
                ""
            }
        );
        if o.elapsed >= o.budget {
            println!("    over time budget");
        }
        for msg in &o.failures {
            println!("    {msg}");
        }
        if !o.passed() && !waived {
            hard_failures += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("{passed}/{} criteria pass", outcomes.len());
    if hard_failures > 0 {
        std::process::exit(1);
    }
}
