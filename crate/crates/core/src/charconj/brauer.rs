//! Virtual characters `ρ = Σ n_i Ind_{H_i}^G (χ_i · φ_i)` and the check that
//! Galois conjugation commutes with their self inner product.

use std::sync::Arc;

use serde::Serialize;

use super::{
    induce, inner_product, is_linear_character, CharError, ClassFunction, Cyclo, FiniteGroup,
    Subgroup,
};
use crate::numeric::{gcd, lcm};

#[derive(Debug, Clone)]
pub struct BrauerSummand {
    pub n: i64,
    pub subgroup: Subgroup,
    pub chi: ClassFunction,
    /// A degree-1 character of the subgroup.
    pub phi: ClassFunction,
}

#[derive(Debug, Clone)]
pub struct BrauerSpec {
    group: Arc<FiniteGroup>,
    summands: Vec<BrauerSummand>,
}

impl BrauerSpec {
    pub fn new(group: &Arc<FiniteGroup>, summands: Vec<BrauerSummand>) -> Result<Self, CharError> {
        for s in &summands {
            if **s.subgroup.parent() != **group {
                return Err(CharError::NotSubgroup);
            }
            if **s.chi.group() != **s.subgroup.group() || **s.phi.group() != **s.subgroup.group() {
                return Err(CharError::GroupMismatch);
            }
            if !is_linear_character(&s.phi) {
                return Err(CharError::NotLinearCharacter);
            }
        }
        Ok(BrauerSpec {
            group: Arc::clone(group),
            summands,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn summands(&self) -> &[BrauerSummand] {
        &self.summands
    }

    /// Least common conductor of every `χ_i` and `φ_i`.
    pub fn conductor(&self) -> u64 {
        self.summands.iter().fold(1, |acc, s| {
            lcm(acc, lcm(s.chi.conductor(), s.phi.conductor()))
        })
    }

    /// Every `χ_i` and `φ_i` conjugated by `ζ ↦ ζ^j`.
    pub fn conjugated(&self, j: i64) -> Result<Self, CharError> {
        let summands = self
            .summands
            .iter()
            .map(|s| {
                Ok(BrauerSummand {
                    n: s.n,
                    subgroup: s.subgroup.clone(),
                    chi: s.chi.conj(j)?,
                    phi: s.phi.conj(j)?,
                })
            })
            .collect::<Result<_, CharError>>()?;
        Ok(BrauerSpec {
            group: Arc::clone(&self.group),
            summands,
        })
    }
}

/// `Σ n_i Ind_{H_i}^G (χ_i · φ_i)`; the empty spec gives zero.
pub fn brauer_combination(spec: &BrauerSpec) -> Result<ClassFunction, CharError> {
    let mut rho = ClassFunction::zero(&spec.group);
    for s in &spec.summands {
        let ind = induce(&s.subgroup, &s.chi.mul(&s.phi)?)?;
        rho = rho.add(&ind.scale(&crate::numeric::Rational::from(s.n)))?;
    }
    Ok(rho)
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub group: String,
    pub j: i64,
    pub conductor: u64,
    pub summands: usize,
    /// `(ρ, ρ)`
    pub self_product: Cyclo,
    /// `(ρ^γ, ρ^γ)`
    pub conjugate_self_product: Cyclo,
    /// `γ((ρ, ρ))`
    pub expected: Cyclo,
    pub rational: bool,
    pub integral: bool,
    /// `ρ^γ` equals `ρ` with every value conjugated.
    pub values_commute: bool,
    pub holds: bool,
}

/// Builds `ρ` and `ρ^γ` for `γ: ζ ↦ ζ^j` and compares `(ρ^γ, ρ^γ)` with
/// `γ((ρ, ρ))`, and with `(ρ, ρ)` itself when that is rational.
pub fn verify_conjugation_invariance(
    spec: &BrauerSpec,
    j: i64,
) -> Result<InvarianceReport, CharError> {
    let conductor = spec.conductor();
    if gcd(j.rem_euclid(conductor as i64) as u64, conductor) != 1 {
        return Err(CharError::NotCoprime { j, conductor });
    }
    let rho = brauer_combination(spec)?;
    let rho_gamma = brauer_combination(&spec.conjugated(j)?)?;
    let self_product = inner_product(&rho, &rho)?;
    let conjugate_self_product = inner_product(&rho_gamma, &rho_gamma)?;
    let expected = self_product.galois_conj(j)?;
    let rational_value = self_product.as_rational();
    let equivariant = conjugate_self_product == expected;
    let exact = rational_value
        .as_ref()
        .map_or(true, |_| conjugate_self_product == self_product);
    let values_commute = rho.conj(j)? == rho_gamma;
    Ok(InvarianceReport {
        group: spec.group.label().to_string(),
        j,
        conductor,
        summands: spec.summands.len(),
        rational: rational_value.is_some(),
        integral: rational_value.as_ref().is_some_and(|q| q.is_integer()),
        holds: equivariant && exact && values_commute,
        self_product,
        conjugate_self_product,
        expected,
        values_commute,
    })
}
