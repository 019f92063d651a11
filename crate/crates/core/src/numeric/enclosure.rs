//! Real enclosures `[lower, upper]` stored as scaled decimal integers.
//!
//! Both endpoints share a scale of `10^digits`. Every operation rounds the
//! lower endpoint toward negative infinity and the upper endpoint toward
//! positive infinity, so the true value never escapes the interval.
//! `ln` is evaluated through the `atanh` series with exact rational partial
//! sums and a geometric tail bound; `exp` runs a fixed-point Taylor series
//! with per-term directed rounding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumericError, Rational};

/// Working precision used when callers do not pick one.
pub const DEFAULT_DIGITS: u32 = 50;

const GUARD_DIGITS: u32 = 12;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

fn ten_pow(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => -((-num).div_floor(den)),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RealEnclosure {
    lower: BigInt,
    upper: BigInt,
    digits: u32,
}

impl RealEnclosure {
    /// Builds from endpoints already scaled by `10^digits`.
    pub fn from_scaled(lower: BigInt, upper: BigInt, digits: u32) -> Result<Self, NumericError> {
        if lower > upper {
            return Err(NumericError::InvertedEnclosure);
        }
        Ok(RealEnclosure {
            lower,
            upper,
            digits,
        })
    }

    /// Tightest enclosure of `q` at the given scale. Degenerate when `q` is a
    /// `digits`-place decimal.
    pub fn point(q: &Rational, digits: u32) -> Self {
        RealEnclosure {
            lower: q.scaled_floor(digits),
            upper: q.scaled_ceil(digits),
            digits,
        }
    }

    pub fn between(lo: &Rational, hi: &Rational, digits: u32) -> Result<Self, NumericError> {
        Self::from_scaled(lo.scaled_floor(digits), hi.scaled_ceil(digits), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn lower(&self) -> Rational {
        Rational::new(self.lower.clone(), ten_pow(self.digits)).expect("nonzero scale")
    }

    pub fn upper(&self) -> Rational {
        Rational::new(self.upper.clone(), ten_pow(self.digits)).expect("nonzero scale")
    }

    pub fn lower_scaled(&self) -> &BigInt {
        &self.lower
    }

    pub fn upper_scaled(&self) -> &BigInt {
        &self.upper
    }

    pub fn width(&self) -> Rational {
        self.upper() - self.lower()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    /// True when `other` lies inside `self`.
    pub fn contains_enclosure(&self, other: &RealEnclosure) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// True when the whole interval sits inside `[lo, hi]`.
    pub fn lies_within(&self, lo: &Rational, hi: &Rational) -> bool {
        *lo <= self.lower() && self.upper() <= *hi
    }

    /// Rescales, rounding outward when precision is dropped.
    pub fn with_digits(&self, digits: u32) -> Self {
        use std::cmp::Ordering::*;
        match digits.cmp(&self.digits) {
            Equal => self.clone(),
            Greater => {
                let f = ten_pow(digits - self.digits);
                RealEnclosure {
                    lower: &self.lower * &f,
                    upper: &self.upper * &f,
                    digits,
                }
            }
            Less => {
                let f = ten_pow(self.digits - digits);
                RealEnclosure {
                    lower: div_round(&self.lower, &f, Round::Down),
                    upper: div_round(&self.upper, &f, Round::Up),
                    digits,
                }
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let d = self.digits.max(other.digits);
        (self.with_digits(d), other.with_digits(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        RealEnclosure {
            lower: a.lower + b.lower,
            upper: a.upper + b.upper,
            digits: a.digits,
        }
    }

    pub fn neg(&self) -> Self {
        RealEnclosure {
            lower: -&self.upper,
            upper: -&self.lower,
            digits: self.digits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let products = [
            &a.lower * &b.lower,
            &a.lower * &b.upper,
            &a.upper * &b.lower,
            &a.upper * &b.upper,
        ];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        let scale = ten_pow(a.digits);
        RealEnclosure {
            lower: div_round(min, &scale, Round::Down),
            upper: div_round(max, &scale, Round::Up),
            digits: a.digits,
        }
    }

    /// Exact scaling by a rational, rounded outward at the current scale.
    pub fn mul_rational(&self, q: &Rational) -> Self {
        let lo = self.lower() * q;
        let hi = self.upper() * q;
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        RealEnclosure::between(&lo, &hi, self.digits).expect("ordered endpoints")
    }

    pub fn lower_decimal(&self) -> String {
        format_scaled(&self.lower, self.digits)
    }

    pub fn upper_decimal(&self) -> String {
        format_scaled(&self.upper, self.digits)
    }
}

fn format_scaled(v: &BigInt, digits: u32) -> String {
    let sign = if v.is_negative() { "-" } else { "" };
    let s = v.abs().to_string();
    if digits == 0 {
        return format!("{sign}{s}");
    }
    let digits = digits as usize;
    let padded = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - digits);
    format!("{sign}{int}.{frac}")
}

fn parse_scaled(s: &str, digits: u32) -> Result<BigInt, NumericError> {
    let q: Rational = s.parse()?;
    let scaled = q.scaled_floor(digits);
    if Rational::new(scaled.clone(), ten_pow(digits))? != q {
        return Err(NumericError::Parse(s.to_string()));
    }
    Ok(scaled)
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower_decimal(), self.upper_decimal())
    }
}

impl fmt::Debug for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct EnclosureRepr {
    lower: String,
    upper: String,
    digits: u32,
}

impl Serialize for RealEnclosure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EnclosureRepr {
            lower: self.lower_decimal(),
            upper: self.upper_decimal(),
            digits: self.digits,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RealEnclosure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = EnclosureRepr::deserialize(deserializer)?;
        let lower = parse_scaled(&repr.lower, repr.digits).map_err(serde::de::Error::custom)?;
        let upper = parse_scaled(&repr.upper, repr.digits).map_err(serde::de::Error::custom)?;
        RealEnclosure::from_scaled(lower, upper, repr.digits).map_err(serde::de::Error::custom)
    }
}

/// Encloses `atanh(z)` for `|z| <= 1/3`.
fn atanh_small(z: &Rational, digits: u32) -> RealEnclosure {
    debug_assert!(z.abs() <= Rational::frac(1, 3));
    let z2 = z * z;
    let one_minus_z2 = Rational::one() - &z2;
    let eps = Rational::new(1, ten_pow(digits + 2)).expect("nonzero");
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut odd = 1i64;
    loop {
        sum = sum + &power / &Rational::from(odd);
        power = power * &z2;
        odd += 2;
        // |sum of the remaining terms| <= |z|^odd / (odd * (1 - z^2))
        let tail = power.abs() / (Rational::from(odd) * &one_minus_z2);
        if tail < eps {
            return RealEnclosure::between(&(&sum - &tail), &(&sum + &tail), digits)
                .expect("ordered");
        }
    }
}

/// Encloses the natural logarithm of a positive rational.
pub fn ln_enclosure(q: &Rational, digits: u32) -> Result<RealEnclosure, NumericError> {
    if !q.is_positive() {
        return Err(NumericError::NonPositiveBase);
    }
    let working = digits + GUARD_DIGITS;
    // q = 2^e * y with y in [2/3, 4/3], so |(y-1)/(y+1)| <= 1/7
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    let two = Rational::from(2i64);
    let mut y = q / &two.pow(e as i32);
    let (lo, hi) = (Rational::frac(2, 3), Rational::frac(4, 3));
    while y > hi {
        y = y / &two;
        e += 1;
    }
    while y < lo {
        y = y * &two;
        e -= 1;
    }
    let z = (&y - &Rational::one()) / (&y + &Rational::one());
    let ln_y = atanh_small(&z, working).mul_rational(&two);
    let ln_q = if e == 0 {
        ln_y
    } else {
        let ln2 = atanh_small(&Rational::frac(1, 3), working).mul_rational(&two);
        ln2.mul_rational(&Rational::from(e)).add(&ln_y)
    };
    Ok(ln_q.with_digits(digits))
}

/// `exp(F / 10^w)` scaled by `10^w`, for `0 <= F <= 10^w`.
fn exp_unit_scaled(f: &BigInt, w: u32, dir: Round) -> BigInt {
    let scale = ten_pow(w);
    let mut term = scale.clone();
    let mut sum = scale.clone();
    let mut i = 1u32;
    loop {
        term = div_round(&(&term * f), &(&scale * BigInt::from(i)), dir);
        match dir {
            Round::Down => {
                if term.is_zero() {
                    return sum;
                }
                sum += &term;
            }
            Round::Up => {
                sum += &term;
                // successive term ratios are at most 1/2, so the rest sums to <= term
                if term <= BigInt::one() {
                    return sum + term;
                }
            }
        }
        i += 1;
    }
}

fn mul_scaled(a: &BigInt, b: &BigInt, scale: &BigInt, dir: Round) -> BigInt {
    div_round(&(a * b), scale, dir)
}

/// `e^n` scaled by `10^w`, directed.
fn exp_integer_scaled(n: &BigInt, w: u32, dir: Round) -> BigInt {
    let scale = ten_pow(w);
    if n.is_zero() {
        return scale;
    }
    if n.is_negative() {
        let flipped = match dir {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        };
        let denom = exp_integer_scaled(&-n, w, flipped);
        return div_round(&(&scale * &scale), &denom, dir);
    }
    let e = exp_unit_scaled(&scale, w, dir);
    let mut result = scale.clone();
    let mut base = e;
    let mut k = n.clone();
    let two = BigInt::from(2);
    while !k.is_zero() {
        if k.is_odd() {
            result = mul_scaled(&result, &base, &scale, dir);
        }
        k /= &two;
        if !k.is_zero() {
            base = mul_scaled(&base, &base, &scale, dir);
        }
    }
    result
}

/// Directed bound on `exp(q)` scaled by `10^w`.
fn exp_bound_scaled(q: &Rational, w: u32, dir: Round) -> BigInt {
    let n = q.floor();
    let frac = q - &Rational::from(n.clone());
    let f = match dir {
        Round::Down => frac.scaled_floor(w),
        Round::Up => frac.scaled_ceil(w),
    };
    let ef = exp_unit_scaled(&f, w, dir);
    let en = exp_integer_scaled(&n, w, dir);
    mul_scaled(&ef, &en, &ten_pow(w), dir)
}

/// Encloses `exp(x)` for every `x` in the input interval, at the input's scale.
pub fn exp_enclosure(x: &RealEnclosure) -> RealEnclosure {
    let upper = x.upper();
    // precision choice only; correctness does not depend on this estimate
    let magnitude_digits = (upper.to_f64().max(0.0) / std::f64::consts::LN_10)
        .ceil()
        .min(1.0e6) as u32;
    let int_digits = x.upper().abs().floor().to_string().len() as u32;
    let w = x.digits + GUARD_DIGITS + magnitude_digits + int_digits;
    let lo = exp_bound_scaled(&x.lower(), w, Round::Down);
    let hi = exp_bound_scaled(&upper, w, Round::Up);
    RealEnclosure {
        lower: lo,
        upper: hi,
        digits: w,
    }
    .with_digits(x.digits)
}

/// Encloses `base^exponent` for a positive rational base and every exponent
/// in the given interval. The result carries `digits` fractional digits.
pub fn pow_enclosure(
    base: &Rational,
    exponent: &RealEnclosure,
    digits: u32,
) -> Result<RealEnclosure, NumericError> {
    if !base.is_positive() {
        return Err(NumericError::NonPositiveBase);
    }
    if digits == 0 {
        return Err(NumericError::InvalidDigits);
    }
    if exponent.is_degenerate() {
        let e = exponent.lower();
        if e.is_integer() {
            if let Some(n) = e.numer().to_i32() {
                return Ok(RealEnclosure::point(&base.pow(n), digits));
            }
        }
    }
    let upper_estimate = exponent.upper().to_f64().abs() * base.to_f64().ln().abs();
    let magnitude_digits = (upper_estimate / std::f64::consts::LN_10)
        .ceil()
        .clamp(0.0, 1.0e6) as u32;
    let working = digits + GUARD_DIGITS + magnitude_digits;
    let ln_base = ln_enclosure(base, working)?;
    let product = exponent.with_digits(working).mul(&ln_base);
    Ok(exp_enclosure(&product).with_digits(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn integer_power_is_exact() {
        let two = Rational::from(2i64);
        let ten = RealEnclosure::point(&Rational::from(10i64), 5);
        let r = pow_enclosure(&two, &ten, 8).unwrap();
        assert!(r.is_degenerate());
        assert_eq!(r.lower(), Rational::from(1024i64));
    }

    #[test]
    fn zeroth_power_is_one() {
        let r = pow_enclosure(
            &Rational::frac(143, 125),
            &RealEnclosure::point(&Rational::zero(), 10),
            10,
        )
        .unwrap();
        assert_eq!(r.lower(), Rational::one());
        assert_eq!(r.upper(), Rational::one());
    }

    #[test]
    fn rejects_non_positive_base() {
        let e = RealEnclosure::point(&Rational::one(), 3);
        assert_eq!(
            pow_enclosure(&Rational::zero(), &e, 5),
            Err(NumericError::NonPositiveBase)
        );
        assert_eq!(
            pow_enclosure(&Rational::from(-2i64), &e, 5),
            Err(NumericError::NonPositiveBase)
        );
    }

    #[test]
    fn ln_two_and_ten() {
        // ln 2 = 0.69314718055994530941723212145817656807...
        let l = ln_enclosure(&Rational::from(2i64), 30).unwrap();
        assert!(l.contains(&dec("0.693147180559945309417232121458176568")));
        assert!(l.width() <= Rational::new(1, ten_pow(29)).unwrap());
        // ln 10 = 2.30258509299404568401799145468436420760...
        let l = ln_enclosure(&Rational::from(10i64), 30).unwrap();
        assert!(l.contains(&dec("2.302585092994045684017991454684364207")));
        // ln(1/3) = -1.09861228866810969139524523692252570464...
        let l = ln_enclosure(&Rational::frac(1, 3), 30).unwrap();
        assert!(l.contains(&dec("-1.098612288668109691395245236922525704")));
    }

    #[test]
    fn exp_of_one_and_negative() {
        // e = 2.71828182845904523536028747135266249775...
        let one = RealEnclosure::point(&Rational::one(), 30);
        let e = exp_enclosure(&one);
        assert!(e.contains(&dec("2.718281828459045235360287471352662497")));
        // e^-3 = 0.04978706836786394297934241565006177663...
        let m3 = RealEnclosure::point(&Rational::from(-3i64), 30);
        assert!(exp_enclosure(&m3).contains(&dec("0.049787068367863942979342415650061776")));
    }

    #[test]
    fn sqrt_two_via_half_power() {
        // 2^(1/2) = 1.41421356237309504880168872420969807856...
        let half = RealEnclosure::point(&Rational::frac(1, 2), 40);
        let r = pow_enclosure(&Rational::from(2i64), &half, 30).unwrap();
        assert!(r.contains(&dec("1.414213562373095048801688724209698078")));
        assert!(r.width() <= Rational::new(2, ten_pow(30)).unwrap());
    }

    #[test]
    fn arithmetic_rounds_outward() {
        let third = RealEnclosure::point(&Rational::frac(1, 3), 4);
        assert_eq!(third.lower_decimal(), "0.3333");
        assert_eq!(third.upper_decimal(), "0.3334");
        let p = third.mul(&third);
        assert!(p.contains(&Rational::frac(1, 9)));
        let s = third.sub(&third);
        assert!(s.contains(&Rational::zero()));
        let coarse = third.with_digits(2);
        assert!(coarse.contains_enclosure(&third));
        assert_eq!(coarse.to_string(), "[0.33, 0.34]");
    }

    #[test]
    fn formatting_negative_and_small() {
        assert_eq!(format_scaled(&BigInt::from(-5), 3), "-0.005");
        assert_eq!(format_scaled(&BigInt::from(12345), 2), "123.45");
        assert_eq!(format_scaled(&BigInt::from(7), 0), "7");
    }

    #[test]
    fn serde_round_trip() {
        let e = pow_enclosure(
            &Rational::frac(143, 125),
            &RealEnclosure::point(&Rational::frac(1, 7), 20),
            20,
        )
        .unwrap();
        let json = serde_json::to_string(&e).unwrap();
        let back: RealEnclosure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
