//! Exact elements of cyclotomic fields `Q(ζ_n)`.
//!
//! An element of conductor `n` is a rational coefficient vector of length
//! `φ(n)` over the basis `1, ζ, ..., ζ^{φ(n)-1}`, obtained by reducing
//! modulo the `n`-th cyclotomic polynomial. The representation is canonical
//! per conductor; values of different conductors are compared after
//! embedding both into the lcm conductor via `ζ_n = ζ_L^{L/n}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::CharError;
use crate::numeric::{euler_phi, gcd, lcm, Rational};

/// Integer coefficients of `Φ_n`, lowest degree first.
fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        poly = exact_divide(&poly, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(poly);
    cache
        .lock()
        .expect("cache lock")
        .insert(n, Arc::clone(&poly));
    poly
}

/// Long division by a monic divisor that is known to divide exactly.
fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

#[derive(Clone)]
pub struct Cyclo {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclo {
    /// Reduces a dense vector indexed by exponents mod `n` into canonical form.
    fn reduce(conductor: u64, mut dense: Vec<Rational>) -> Self {
        debug_assert_eq!(dense.len(), conductor as usize);
        let phi_poly = cyclotomic_polynomial(conductor);
        let deg = phi_poly.len() - 1;
        for i in (deg..dense.len()).rev() {
            let c = std::mem::take(&mut dense[i]);
            if c.is_zero() {
                continue;
            }
            let shift = i - deg;
            for (j, pj) in phi_poly.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    dense[shift + j] = &dense[shift + j] - &(&c * &Rational::from(pj.clone()));
                }
            }
        }
        dense.truncate(deg);
        Cyclo {
            conductor,
            coeffs: dense,
        }
    }

    /// Builds `Σ c_e ζ_n^e` from exponent/coefficient pairs.
    pub fn from_terms(conductor: u64, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let n = conductor as i64;
        let mut dense = vec![Rational::zero(); conductor as usize];
        for (e, c) in terms {
            let idx = e.rem_euclid(n) as usize;
            dense[idx] = &dense[idx] + &c;
        }
        Self::reduce(conductor, dense)
    }

    pub fn zero(conductor: u64) -> Self {
        Cyclo {
            conductor,
            coeffs: vec![Rational::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn rational(conductor: u64, q: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(1, Rational::from(n))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(conductor: u64, k: i64) -> Self {
        Self::from_terms(conductor, [(k, Rational::one())])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element over a multiple of its conductor.
    pub fn embed(&self, conductor: u64) -> Self {
        assert!(
            conductor % self.conductor == 0,
            "{} does not divide {}",
            self.conductor,
            conductor
        );
        if conductor == self.conductor {
            return self.clone();
        }
        let step = (conductor / self.conductor) as i64;
        Self::from_terms(
            conductor,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 * step, c.clone())),
        )
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = lcm(self.conductor, other.conductor);
        (self.embed(l), other.embed(l))
    }

    /// The automorphism `ζ ↦ ζ^j`. `j` must be coprime to the conductor.
    pub fn galois_conj(&self, j: i64) -> Result<Self, CharError> {
        let n = self.conductor;
        let jr = j.rem_euclid(n as i64) as u64;
        if gcd(jr, n) != 1 {
            return Err(CharError::NotCoprime { j, conductor: n });
        }
        Ok(Self::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u64 * jr) as i64, c.clone())),
        ))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let n = self.conductor as usize;
        let mut dense = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                let k = (i + j) % n;
                dense[k] = &dense[k] + &(a * b);
            }
        }
        Self::reduce(self.conductor, dense)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.aligned(rhs);
        Cyclo {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.aligned(rhs);
        a.mul_same(&b)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(
            f,
            "[{}] over conductor {}",
            parts.join(", "),
            self.conductor
        )
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
