//! Characters of small finite groups with values in cyclotomic fields.
//!
//! Everything is exact: values are [`Cyclo`] elements, groups are explicit
//! multiplication tables, and classes and double cosets are found by brute
//! force. Complex conjugation is the Galois element `j = -1`; inner products
//! use `ψ(g⁻¹)` so no conjugation is needed there.

mod brauer;
pub mod campaign;
mod class_function;
mod cyclo;
mod group;
mod mackey;

pub use brauer::{
    brauer_combination, verify_conjugation_invariance, BrauerSpec, BrauerSummand, InvarianceReport,
};
pub use class_function::{
    induce, induce_brute_force, inner_product, is_irreducible, is_linear_character,
    linear_characters, restrict, ClassFunction,
};
pub use cyclo::Cyclo;
pub use group::{double_cosets, FiniteGroup, GroupDefinition, Subgroup, TableLayout, MAX_ORDER};
pub use mackey::{mackey_check, MackeyCoset, MackeyReport};

use std::fmt;

use thiserror::Error;

/// Which group law a table breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawViolation {
    Empty,
    Shape { expected: usize, found: usize },
    OutOfRange { a: usize, b: usize, value: usize },
    Identity { element: usize },
    Associativity { a: usize, b: usize, c: usize },
    Inverse { element: usize },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::Empty => write!(f, "empty group"),
            LawViolation::Shape { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            LawViolation::OutOfRange { a, b, value } => {
                write!(f, "product {a}*{b} = {value} is not an element")
            }
            LawViolation::Identity { element } => {
                write!(f, "0 is not a two-sided identity for element {element}")
            }
            LawViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails for (a, b, c) = ({a}, {b}, {c})")
            }
            LawViolation::Inverse { element } => write!(f, "element {element} has no inverse"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("not a group: {0}")]
    NotAGroup(LawViolation),
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("{j} is not coprime to conductor {conductor}")]
    NotCoprime { j: i64, conductor: u64 },
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("values are not constant on conjugacy classes")]
    NotClassFunction,
    #[error("expected {expected} class values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("self inner product is not rational")]
    NonRationalSelfProduct,
    #[error("not a degree-1 character")]
    NotLinearCharacter,
    #[error("invalid group definition: {0}")]
    Definition(String),
}
