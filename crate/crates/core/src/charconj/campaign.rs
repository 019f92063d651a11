//! Seeded randomized checks of Frobenius reciprocity, the Mackey formula,
//! Galois invariance of Brauer-style combinations, and the induction oracle.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    induce, induce_brute_force, inner_product, linear_characters, mackey_check, restrict,
    verify_conjugation_invariance, BrauerSpec, BrauerSummand, CharError, ClassFunction, Cyclo,
    FiniteGroup, Subgroup,
};
use crate::numeric::{gcd, Rational};

/// `C1..C12, S3, S4, D4, Q8`.
pub fn builtin_suite() -> Vec<Arc<FiniteGroup>> {
    let mut out: Vec<Arc<FiniteGroup>> = (1..=12)
        .map(|n| Arc::new(FiniteGroup::cyclic(n).expect("small cyclic group")))
        .collect();
    for g in [
        FiniteGroup::symmetric(3),
        FiniteGroup::symmetric(4),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ] {
        out.push(Arc::new(g.expect("built-in group")));
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A sum of one to three terms `c·ζ_e^k` with `c ∈ [-2, 2]`.
pub fn random_cyclo(rng: &mut impl Rng, e: u64) -> Cyclo {
    let terms = rng.gen_range(1..=3);
    Cyclo::from_terms(
        e,
        (0..terms).map(|_| {
            (
                rng.gen_range(0..e as i64),
                Rational::from(rng.gen_range(-2i64..=2)),
            )
        }),
    )
}

/// Arbitrary class function with values in `Q(ζ_e)`, `e` the group exponent.
pub fn random_class_function(rng: &mut impl Rng, group: &Arc<FiniteGroup>) -> ClassFunction {
    let e = group.exponent();
    let values = (0..group.class_count())
        .map(|_| random_cyclo(rng, e))
        .collect();
    ClassFunction::new(group, values).expect("one value per class")
}

/// Subgroup generated by one or two random elements.
pub fn random_subgroup(rng: &mut impl Rng, group: &Arc<FiniteGroup>) -> Subgroup {
    let count = rng.gen_range(1..=2);
    let gens: Vec<usize> = (0..count)
        .map(|_| rng.gen_range(0..group.order()))
        .collect();
    Subgroup::generated(group, &gens).expect("generated sets are subgroups")
}

/// Every subgroup generated by at most two elements, ordered by size then
/// elements.
pub fn two_generated_subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let n = group.order();
    let mut seen = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            let elems = group.generate(&[a, b]);
            seen.insert((elems.len(), elems));
        }
    }
    seen.into_iter()
        .map(|(_, e)| Subgroup::new(group, &e).expect("generated sets are subgroups"))
        .collect()
}

/// A character (nonnegative combination of linear characters, not all zero).
fn random_character(rng: &mut impl Rng, linear: &[ClassFunction]) -> ClassFunction {
    let group = linear[0].group();
    loop {
        let mut chi = ClassFunction::zero(group);
        for lambda in linear {
            let c: i64 = rng.gen_range(0..=2);
            if c > 0 {
                chi = chi
                    .add(&lambda.scale(&Rational::from(c)))
                    .expect("same group");
            }
        }
        if !chi.degree().is_zero() {
            return chi;
        }
    }
}

/// One to three summands with `n ∈ {±1, ±2}`, `χ` a character and `φ` a
/// linear character of a random subgroup.
pub fn random_brauer_spec(rng: &mut impl Rng, group: &Arc<FiniteGroup>) -> BrauerSpec {
    let count = rng.gen_range(1..=3);
    let summands = (0..count)
        .map(|_| {
            let subgroup = random_subgroup(rng, group);
            let linear = linear_characters(subgroup.group());
            let chi = random_character(rng, &linear);
            let phi = linear
                .choose(rng)
                .expect("the trivial character exists")
                .clone();
            let n = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
            BrauerSummand {
                n,
                subgroup,
                chi,
                phi,
            }
        })
        .collect();
    BrauerSpec::new(group, summands).expect("random specs are well formed")
}

/// A unit modulo `conductor`, possibly `-1`.
fn random_unit(rng: &mut impl Rng, conductor: u64) -> i64 {
    if conductor <= 2 || rng.gen_bool(0.2) {
        return -1;
    }
    loop {
        let j = rng.gen_range(1..conductor);
        if gcd(j, conductor) == 1 {
            return j as i64;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub check: String,
    pub group: String,
    pub seed: u64,
    pub draws: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl CampaignReport {
    fn new(
        check: &str,
        group: &FiniteGroup,
        seed: u64,
        draws: usize,
        failures: Vec<String>,
    ) -> Self {
        CampaignReport {
            check: check.to_string(),
            group: group.label().to_string(),
            seed,
            draws,
            passed: failures.is_empty(),
            failures,
        }
    }
}

/// `(Ind χ, ψ)_G = (χ, Res ψ)_H` and the degree law on random data.
pub fn frobenius_campaign(
    group: &Arc<FiniteGroup>,
    draws: usize,
    seed: u64,
) -> Result<CampaignReport, CharError> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for draw in 0..draws {
        let h = random_subgroup(&mut rng, group);
        let chi = random_class_function(&mut rng, h.group());
        let psi = random_class_function(&mut rng, group);
        let ind = induce(&h, &chi)?;
        let lhs = inner_product(&ind, &psi)?;
        let rhs = inner_product(&chi, &restrict(&h, &psi)?)?;
        if lhs != rhs {
            failures.push(format!("draw {draw}: |H| = {}: {lhs} != {rhs}", h.order()));
        }
        if *ind.degree() != chi.degree().scale(&Rational::from(h.index() as u64)) {
            failures.push(format!(
                "draw {draw}: degree law fails for |H| = {}",
                h.order()
            ));
        }
    }
    Ok(CampaignReport::new(
        "frobenius",
        group,
        seed,
        draws,
        failures,
    ))
}

pub fn mackey_campaign(
    group: &Arc<FiniteGroup>,
    draws: usize,
    seed: u64,
) -> Result<CampaignReport, CharError> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for draw in 0..draws {
        let h = random_subgroup(&mut rng, group);
        let k = random_subgroup(&mut rng, group);
        let chi = random_class_function(&mut rng, h.group());
        let report = mackey_check(&h, &k, &chi)?;
        if !report.holds {
            failures.push(format!(
                "draw {draw}: |H| = {}, |K| = {}",
                h.order(),
                k.order()
            ));
        }
    }
    Ok(CampaignReport::new("mackey", group, seed, draws, failures))
}

pub fn invariance_campaign(
    group: &Arc<FiniteGroup>,
    draws: usize,
    seed: u64,
) -> Result<CampaignReport, CharError> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for draw in 0..draws {
        let spec = random_brauer_spec(&mut rng, group);
        let j = random_unit(&mut rng, spec.conductor());
        let report = verify_conjugation_invariance(&spec, j)?;
        if !report.holds || !report.integral {
            failures.push(format!(
                "draw {draw}: j = {j}, (ρ,ρ) = {}, (ρ^γ,ρ^γ) = {}",
                report.self_product, report.conjugate_self_product
            ));
        }
    }
    Ok(CampaignReport::new(
        "invariance",
        group,
        seed,
        draws,
        failures,
    ))
}

/// Class-sum induction against the element-by-element sum, over every
/// subgroup generated by at most two elements.
pub fn induction_oracle_campaign(
    group: &Arc<FiniteGroup>,
    seed: u64,
) -> Result<CampaignReport, CharError> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let subgroups = two_generated_subgroups(group);
    for h in &subgroups {
        let chi = random_class_function(&mut rng, h.group());
        if induce(h, &chi)? != induce_brute_force(h, &chi)? {
            failures.push(format!(
                "|H| = {} with elements {:?}",
                h.order(),
                h.elements()
            ));
        }
    }
    Ok(CampaignReport::new(
        "induction-oracle",
        group,
        seed,
        subgroups.len(),
        failures,
    ))
}
