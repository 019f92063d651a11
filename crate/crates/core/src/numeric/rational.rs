use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NumericError;

/// Exact fraction with an unbounded numerator and a positive denominator,
/// always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, NumericError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Panics on a zero denominator. Meant for literals.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator in rational literal")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Multiplies by `10^digits` and rounds toward negative infinity.
    pub fn scaled_floor(&self, digits: u32) -> BigInt {
        (self.numer() * BigInt::from(10u32).pow(digits)).div_floor(self.denom())
    }

    /// Multiplies by `10^digits` and rounds toward positive infinity.
    pub fn scaled_ceil(&self, digits: u32) -> BigInt {
        -((-(self.numer() * BigInt::from(10u32).pow(digits))).div_floor(self.denom()))
    }

    /// Always `num/den`, even for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Lossy, for display only.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

/// Orders two rationals by cross-multiplying: `a/b < c/d` iff `a·d < c·b`
/// (denominators are positive).
pub fn rational_cmp(a: &Rational, b: &Rational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        rational_cmp(self, other)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fraction_string())
    }
}

/// Accepts `n`, `n/d` and finite decimals such as `1.130289` or `-0.5`.
impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || NumericError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let mantissa: BigInt = format!("{int_digits}{frac_part}")
                .parse()
                .map_err(|_| bad())?;
            let mantissa = if negative { -mantissa } else { mantissa };
            return Rational::new(mantissa, BigInt::from(10u32).pow(frac_part.len() as u32));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division panics on a zero divisor, like the integer types; use `recip`
// for a checked path.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmp_examples() {
        assert_eq!(
            rational_cmp(&Rational::frac(127, 113), &Rational::frac(143, 125)),
            Ordering::Less
        );
        assert_eq!(
            rational_cmp(&Rational::frac(36, 30), &Rational::frac(6, 5)),
            Ordering::Equal
        );
        assert_eq!(
            rational_cmp(&Rational::frac(143, 125), &Rational::frac(6, 5)),
            Ordering::Less
        );
        assert_eq!(
            rational_cmp(&Rational::frac(-1, 3), &Rational::frac(1, -3)),
            Ordering::Equal
        );
    }

    #[test]
    fn reduced_on_construction() {
        let r = Rational::frac(36, -30);
        assert_eq!(r.numer(), &BigInt::from(-6));
        assert_eq!(r.denom(), &BigInt::from(5));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn parses_decimal_and_fraction() {
        assert_eq!(
            "1.144".parse::<Rational>().unwrap(),
            Rational::frac(143, 125)
        );
        assert_eq!("1.15".parse::<Rational>().unwrap(), Rational::frac(23, 20));
        assert_eq!(
            "1.130289".parse::<Rational>().unwrap(),
            Rational::frac(1130289, 1000000)
        );
        assert_eq!("-0.5".parse::<Rational>().unwrap(), Rational::frac(-1, 2));
        assert_eq!(" 6/5 ".parse::<Rational>().unwrap(), Rational::frac(6, 5));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7i64));
        assert!("1.".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_ceil_and_scaling() {
        let r = Rational::frac(-7, 2);
        assert_eq!(r.floor(), BigInt::from(-4));
        assert_eq!(r.ceil(), BigInt::from(-3));
        let third = Rational::frac(1, 3);
        assert_eq!(third.scaled_floor(3), BigInt::from(333));
        assert_eq!(third.scaled_ceil(3), BigInt::from(334));
    }

    #[test]
    fn serde_uses_fraction_string() {
        let json = serde_json::to_string(&Rational::frac(143, 125)).unwrap();
        assert_eq!(json, "\"143/125\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::frac(143, 125));
        assert_eq!(
            serde_json::to_string(&Rational::from(2i64)).unwrap(),
            "\"2/1\""
        );
    }
}
