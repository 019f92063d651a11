//! The quotient families `p / k'` for `p = m·d + 1` and the chosen twist.
//!
//! For fixed `m` the larger target is `k_hi = t·d + 2`, so `p / k_hi =
//! (m·d + 1) / (t·d + 2)`; the smaller is `k_lo = (m - t)·d + 2`. Both are
//! increasing in `d` (because `2m > t` and `2m > m - t`), so the minimum over
//! a grid sits at `d = 1`.

use serde::{Deserialize, Serialize};

use super::{ratio_bound, Verdict};
use crate::descent::choose_t;
use crate::numeric::Rational;

/// `(m, numerator coefficient, denominator coefficient)` of the printed
/// quotients `(m·d + 1) / (c·d + 2)`, three per residue class of `m`.
pub const PRINTED_FAMILIES: [(u64, u64, u64); 9] = [
    (7, 7, 4),
    (9, 9, 5),
    (11, 11, 6),
    (10, 10, 7),
    (14, 14, 9),
    (18, 18, 11),
    (8, 8, 5),
    (12, 12, 7),
    (16, 16, 9),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyHead {
    pub m: u64,
    pub t: u64,
    /// Rendered as `(md+1)/(td+2)`.
    pub quotient: String,
    pub printed: String,
    pub matches_paper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Hi,
    Lo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFailure {
    pub m: u64,
    pub d: u64,
    pub branch: Branch,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub m: u64,
    pub d: u64,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub m_max: u64,
    pub d_max: u64,
    pub bound: Rational,
    pub cells_checked: usize,
    pub failures: Vec<StarFailure>,
    pub min_hi: Option<StarWitness>,
    pub min_lo: Option<StarWitness>,
    pub families: Vec<FamilyHead>,
    pub families_match: bool,
    /// Both quotients strictly increase with `d` for every `m` in the grid.
    pub monotone_in_d: bool,
    pub verdict: Verdict,
}

impl StarReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

fn render(a: u64, b: u64) -> String {
    format!("({a}d+1)/({b}d+2)")
}

fn family_heads() -> Vec<FamilyHead> {
    PRINTED_FAMILIES
        .iter()
        .map(|&(m, num, den)| {
            let t = choose_t(m).expect("printed families have m > 6");
            FamilyHead {
                m,
                t,
                quotient: render(m, t),
                printed: render(num, den),
                matches_paper: num == m && den == t,
            }
        })
        .collect()
}

fn keep_min(slot: &mut Option<StarWitness>, m: u64, d: u64, ratio: &Rational) {
    if slot.as_ref().map_or(true, |w| *ratio < w.ratio) {
        *slot = Some(StarWitness {
            m,
            d,
            ratio: ratio.clone(),
        });
    }
}

/// Checks `p / k_hi > 1.144` and `p / k_lo > 1.144` for every admissible
/// `m` in `(6, m_max]` and `d` in `[1, d_max]`.
pub fn star_inequality_check(m_max: u64, d_max: u64) -> StarReport {
    let bound = ratio_bound();
    let mut failures = Vec::new();
    let mut min_hi = None;
    let mut min_lo = None;
    let mut cells = 0;
    let mut monotone = true;
    for m in 7..=m_max {
        let Ok(t) = choose_t(m) else { continue };
        let mut prev: Option<(Rational, Rational)> = None;
        for d in 1..=d_max {
            let p = m * d + 1;
            let hi = Rational::frac(p as i64, (t * d + 2) as i64);
            let lo = Rational::frac(p as i64, (p + 1 - t * d) as i64);
            cells += 1;
            if hi <= bound {
                failures.push(StarFailure {
                    m,
                    d,
                    branch: Branch::Hi,
                    ratio: hi.clone(),
                });
            }
            if lo <= bound {
                failures.push(StarFailure {
                    m,
                    d,
                    branch: Branch::Lo,
                    ratio: lo.clone(),
                });
            }
            keep_min(&mut min_hi, m, d, &hi);
            keep_min(&mut min_lo, m, d, &lo);
            if let Some((ph, pl)) = &prev {
                monotone &= *ph < hi && *pl < lo;
            }
            prev = Some((hi, lo));
        }
    }
    let families = family_heads();
    let families_match = families.iter().all(|f| f.matches_paper);
    StarReport {
        m_max,
        d_max,
        bound,
        cells_checked: cells,
        verdict: Verdict::from_ok(failures.is_empty() && families_match),
        failures,
        min_hi,
        min_lo,
        families,
        families_match,
        monotone_in_d: monotone,
    }
}
