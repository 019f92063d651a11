//! Mackey decomposition of `Res_K Ind_H^G χ` over the double cosets `K\G/H`.

use serde::Serialize;

use super::{double_cosets, induce, restrict, CharError, ClassFunction, Subgroup};

#[derive(Debug, Clone, Serialize)]
pub struct MackeyCoset {
    /// Name of the smallest element of `K s H`.
    pub representative: String,
    pub size: usize,
    /// `|K ∩ sHs⁻¹|`
    pub intersection_order: usize,
    /// `Ind_{K ∩ sHs⁻¹}^K ψ_s` with `ψ_s(y) = χ(s⁻¹ y s)`.
    pub summand: ClassFunction,
}

#[derive(Debug, Clone, Serialize)]
pub struct MackeyReport {
    pub group: String,
    pub h_order: usize,
    pub k_order: usize,
    pub double_coset_count: usize,
    pub cosets: Vec<MackeyCoset>,
    pub restricted_induced: ClassFunction,
    pub mackey_sum: ClassFunction,
    pub holds: bool,
}

/// Compares `Res_K Ind_H^G χ` with `Σ_s Ind_{K ∩ sHs⁻¹}^K ψ_s`.
pub fn mackey_check(
    h: &Subgroup,
    k: &Subgroup,
    chi: &ClassFunction,
) -> Result<MackeyReport, CharError> {
    let g = h.parent();
    if !(std::sync::Arc::ptr_eq(g, k.parent()) || g == k.parent()) {
        return Err(CharError::GroupMismatch);
    }
    let restricted_induced = restrict(k, &induce(h, chi)?)?;
    let kg = k.group();

    let mut mackey_sum = ClassFunction::zero(kg);
    let mut cosets = Vec::new();
    for coset in double_cosets(g, k, h) {
        let s = coset[0];
        // K ∩ sHs⁻¹ in K's local indices
        let local: Vec<usize> = k
            .elements()
            .iter()
            .enumerate()
            .filter(|&(_, &y)| h.contains(g.conjugate(y, s)))
            .map(|(i, _)| i)
            .collect();
        let inter = Subgroup::new(kg, &local)?;
        let psi = ClassFunction::from_element_fn(inter.group(), |y| {
            let in_g = k.to_parent(inter.to_parent(y));
            let back = h
                .to_local(g.conjugate(in_g, s))
                .expect("conjugate lies in H");
            chi.value(back).clone()
        })?;
        let summand = induce(&inter, &psi)?;
        mackey_sum = mackey_sum.add(&summand)?;
        cosets.push(MackeyCoset {
            representative: g.name(s).to_string(),
            size: coset.len(),
            intersection_order: inter.order(),
            summand,
        });
    }

    Ok(MackeyReport {
        group: g.label().to_string(),
        h_order: h.order(),
        k_order: k.order(),
        double_coset_count: cosets.len(),
        holds: restricted_induced == mackey_sum,
        cosets,
        restricted_induced,
        mackey_sum,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::charconj::{linear_characters, Cyclo, FiniteGroup};

    #[test]
    fn s3_over_c3() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let c3 = Subgroup::generated(&s3, &[s3.element("(0 1 2)").unwrap()]).unwrap();
        let chars = linear_characters(c3.group());
        let chi = chars
            .iter()
            .find(|c| c.values().iter().any(|v| v.as_rational().is_none()))
            .unwrap();
        let r = mackey_check(&c3, &c3, chi).unwrap();
        assert_eq!(r.double_coset_count, 2);
        assert!(r.holds);
        // the two summands are χ and its conjugate by a transposition, χ^(2)
        assert_eq!(r.cosets[0].summand, *chi);
        assert_eq!(r.cosets[1].summand, chi.conj(2).unwrap());
    }

    #[test]
    fn whole_group_single_coset() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let whole = Subgroup::whole(&s3);
        let c2 = Subgroup::generated(&s3, &[s3.element("(0 1)").unwrap()]).unwrap();
        let chi = ClassFunction::regular(whole.group());
        let r = mackey_check(&whole, &c2, &chi).unwrap();
        assert_eq!(r.double_coset_count, 1);
        assert!(r.holds);
    }

    #[test]
    fn s4_d4_c4() {
        let s4 = Arc::new(FiniteGroup::symmetric(4).unwrap());
        let r = s4.element("(0 1 2 3)").unwrap();
        let f = s4.element("(0 2)").unwrap();
        let d4 = Subgroup::generated(&s4, &[r, f]).unwrap();
        let c4 = Subgroup::generated(&s4, &[r]).unwrap();
        let dg = d4.group();
        let chi = ClassFunction::new(
            dg,
            (0..dg.class_count())
                .map(|c| {
                    Cyclo::from_terms(
                        4,
                        [(c as i64, crate::numeric::Rational::frac(c as i64 + 1, 2))],
                    )
                })
                .collect(),
        )
        .unwrap();
        let rep = mackey_check(&d4, &c4, &chi).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.cosets.iter().map(|c| c.size).sum::<usize>(), 24);
    }
}
