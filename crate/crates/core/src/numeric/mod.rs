//! Exact arithmetic kernel: reduced rationals, directed-rounded real
//! enclosures and a few elementary number-theoretic helpers.

mod enclosure;
mod rational;

pub use enclosure::{exp_enclosure, ln_enclosure, pow_enclosure, RealEnclosure, DEFAULT_DIGITS};
pub use rational::{rational_cmp, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-positive base")]
    NonPositiveBase,
    #[error("digits must be at least 1")]
    InvalidDigits,
    #[error("enclosure lower bound exceeds upper bound")]
    InvertedEnclosure,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

/// Euler's totient by trial-division factorization. `euler_phi(0)` is 0.
pub fn euler_phi(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mut n = m;
    let mut phi = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}
