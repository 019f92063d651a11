//! Class functions, induction, restriction and the character inner product.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{CharError, Cyclo, FiniteGroup, Subgroup};
use crate::numeric::{lcm, Rational};

/// One value per conjugacy class, all stored over a common conductor.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    conductor: u64,
    values: Vec<Cyclo>,
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    /// Values indexed by class, in the group's class order.
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Cyclo>) -> Result<Self, CharError> {
        if values.len() != group.class_count() {
            return Err(CharError::WrongLength {
                expected: group.class_count(),
                found: values.len(),
            });
        }
        let conductor = values.iter().fold(1, |acc, v| lcm(acc, v.conductor()));
        let values = values.iter().map(|v| v.embed(conductor)).collect();
        Ok(ClassFunction {
            group: Arc::clone(group),
            conductor,
            values,
        })
    }

    /// Evaluates `f` on every element and checks it is constant on classes.
    pub fn from_element_fn(
        group: &Arc<FiniteGroup>,
        f: impl Fn(usize) -> Cyclo,
    ) -> Result<Self, CharError> {
        let mut values = Vec::with_capacity(group.class_count());
        for class in group.classes() {
            let v = f(class[0]);
            if class[1..].iter().any(|&g| f(g) != v) {
                return Err(CharError::NotClassFunction);
            }
            values.push(v);
        }
        Self::new(group, values)
    }

    pub fn constant(group: &Arc<FiniteGroup>, q: Rational) -> Self {
        Self::new(group, vec![Cyclo::rational(1, q); group.class_count()]).expect("length matches")
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, Rational::one())
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, Rational::zero())
    }

    /// `|G|` at the identity, zero elsewhere.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let mut values = vec![Cyclo::from_integer(0); group.class_count()];
        values[0] = Cyclo::from_integer(group.order() as i64);
        Self::new(group, values).expect("length matches")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &Cyclo {
        &self.values[self.group.class_of(g)]
    }

    pub fn value_at_class(&self, class: usize) -> &Cyclo {
        &self.values[class]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyclo {
        &self.values[0]
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Cyclo, &Cyclo) -> Cyclo,
    ) -> Result<Self, CharError> {
        if !same_group(&self.group, &other.group) {
            return Err(CharError::GroupMismatch);
        }
        Self::new(
            &self.group,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product (the character of the tensor product).
    pub fn mul(&self, other: &Self) -> Result<Self, CharError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ClassFunction {
            group: Arc::clone(&self.group),
            conductor: self.conductor,
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    /// Applies `ζ ↦ ζ^j` to every value.
    pub fn conj(&self, j: i64) -> Result<Self, CharError> {
        let values = self
            .values
            .iter()
            .map(|v| v.galois_conj(j))
            .collect::<Result<_, _>>()?;
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            conductor: self.conductor,
            values,
        })
    }

    pub fn embed(&self, conductor: u64) -> Self {
        ClassFunction {
            group: Arc::clone(&self.group),
            conductor,
            values: self.values.iter().map(|v| v.embed(conductor)).collect(),
        }
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let classes: Vec<&str> = (0..self.group.class_count())
            .map(|c| self.group.name(self.group.class_representative(c)))
            .collect();
        let values: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        let mut s = serializer.serialize_struct("ClassFunction", 4)?;
        s.serialize_field("group", self.group.label())?;
        s.serialize_field("conductor", &self.conductor)?;
        s.serialize_field("classes", &classes)?;
        s.serialize_field("values", &values)?;
        s.end()
    }
}

fn check_on(chi: &ClassFunction, group: &Arc<FiniteGroup>) -> Result<(), CharError> {
    if same_group(chi.group(), group) {
        Ok(())
    } else {
        Err(CharError::GroupMismatch)
    }
}

/// Induces `χ` from `H` to its parent group, using
/// `(Ind χ)(g) = [G:H] / |cl(g)| · Σ |c| χ(c)` over the `H`-classes `c`
/// contained in the class of `g`.
pub fn induce(h: &Subgroup, chi: &ClassFunction) -> Result<ClassFunction, CharError> {
    check_on(chi, h.group())?;
    let g = h.parent();
    let hg = h.group();
    let mut sums = vec![Cyclo::zero(chi.conductor()); g.class_count()];
    for (c, members) in hg.classes().iter().enumerate() {
        let target = g.class_of(h.to_parent(members[0]));
        let term = chi
            .value_at_class(c)
            .scale(&Rational::from(members.len() as u64));
        sums[target] = &sums[target] + &term;
    }
    let index = Rational::from(h.index() as u64);
    let values = sums
        .iter()
        .enumerate()
        .map(|(c, s)| s.scale(&(&index / &Rational::from(g.classes()[c].len() as u64))))
        .collect();
    ClassFunction::new(g, values)
}

/// `(Ind χ)(g) = 1/|H| · Σ_{x ∈ G, x⁻¹gx ∈ H} χ(x⁻¹gx)`, summed element by element.
pub fn induce_brute_force(h: &Subgroup, chi: &ClassFunction) -> Result<ClassFunction, CharError> {
    check_on(chi, h.group())?;
    let g = h.parent();
    let inv_h = Rational::frac(1, h.order() as i64);
    ClassFunction::from_element_fn(g, |elem| {
        let mut acc = Cyclo::zero(chi.conductor());
        for x in 0..g.order() {
            if let Some(local) = h.to_local(g.conjugate(elem, x)) {
                acc = &acc + chi.value(local);
            }
        }
        acc.scale(&inv_h)
    })
}

/// Restricts a class function on the parent group to `K`.
pub fn restrict(k: &Subgroup, chi: &ClassFunction) -> Result<ClassFunction, CharError> {
    check_on(chi, k.parent())?;
    let kg = k.group();
    let values = kg
        .classes()
        .iter()
        .map(|members| chi.value(k.to_parent(members[0])).clone())
        .collect();
    ClassFunction::new(kg, values)
}

/// `(χ, ψ) = 1/|G| · Σ_g χ(g) ψ(g⁻¹)`, computed class by class.
pub fn inner_product(chi: &ClassFunction, psi: &ClassFunction) -> Result<Cyclo, CharError> {
    if !same_group(chi.group(), psi.group()) {
        return Err(CharError::GroupMismatch);
    }
    let g = chi.group();
    let mut acc = Cyclo::zero(lcm(chi.conductor(), psi.conductor()));
    for (c, members) in g.classes().iter().enumerate() {
        let inv_class = g.class_of(g.inverse(members[0]));
        let term = (chi.value_at_class(c) * psi.value_at_class(inv_class))
            .scale(&Rational::from(members.len() as u64));
        acc = &acc + &term;
    }
    Ok(acc.scale(&Rational::frac(1, g.order() as i64)))
}

/// True iff `(χ, χ) = 1` and `χ(1) > 0`.
pub fn is_irreducible(chi: &ClassFunction) -> Result<bool, CharError> {
    let norm = inner_product(chi, chi)?
        .as_rational()
        .ok_or(CharError::NonRationalSelfProduct)?;
    let positive = chi.degree().as_rational().is_some_and(|d| d.is_positive());
    Ok(norm.is_one() && positive)
}

/// Greedy generating set: each new generator is the smallest element outside
/// the subgroup generated so far.
fn generators(group: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = group.generate(&gens);
    while span.len() < group.order() {
        let next = (0..group.order())
            .find(|g| span.binary_search(g).is_err())
            .expect("proper subgroup");
        gens.push(next);
        span = group.generate(&gens);
    }
    gens
}

/// All homomorphisms `G → μ_e` (`e` the exponent), found by assigning an
/// exponent to each generator and propagating.
pub fn linear_characters(group: &Arc<FiniteGroup>) -> Vec<ClassFunction> {
    let gens = generators(group);
    let e = group.exponent();
    let mut out = Vec::new();
    let mut assignment = vec![0u64; gens.len()];
    loop {
        if let Some(exps) = propagate(group, &gens, &assignment, e) {
            let chi =
                ClassFunction::from_element_fn(group, |g| Cyclo::root_of_unity(e, exps[g] as i64))
                    .expect("homomorphisms to an abelian group are class functions");
            out.push(chi);
        }
        // odometer over assignments
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] < e {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

fn propagate(group: &FiniteGroup, gens: &[usize], assignment: &[u64], e: u64) -> Option<Vec<u64>> {
    let mut exps = vec![None; group.order()];
    exps[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ex = exps[x].expect("queued elements are assigned");
        for (g, a) in gens.iter().zip(assignment) {
            let y = group.mul(x, *g);
            let ey = (ex + a) % e;
            match exps[y] {
                Some(prev) if prev != ey => return None,
                Some(_) => {}
                None => {
                    exps[y] = Some(ey);
                    queue.push_back(y);
                }
            }
        }
    }
    exps.into_iter().collect()
}

/// Degree 1 and multiplicative on every pair of elements.
pub fn is_linear_character(chi: &ClassFunction) -> bool {
    let g = chi.group();
    if chi.degree() != &Cyclo::from_integer(1) {
        return false;
    }
    (0..g.order())
        .all(|a| (0..g.order()).all(|b| chi.value(g.mul(a, b)) == &(chi.value(a) * chi.value(b))))
}
