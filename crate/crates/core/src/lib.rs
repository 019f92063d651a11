//! Exact-arithmetic audit toolkit for the level-1 Serre weight descent.
//!
//! * [`numeric`] exact rationals and directed-rounded real enclosures
//! * [`primes`] segmented sieve and consecutive-prime iteration
//! * [`descent`] the weight-reduction recipe, its table and the descent graph
//! * [`gaps`] consecutive-prime ratio audits, the Chebyshev threshold and
//!   the inequalities that make every reduction shrink the weight
//! * [`charconj`] finite-group characters over cyclotomic fields, induction,
//!   Mackey decomposition and Galois conjugation of virtual characters
//! * [`cli`] the command-line front end

pub mod charconj;
pub mod cli;
pub mod descent;
pub mod gaps;
pub mod numeric;
pub mod primes;
