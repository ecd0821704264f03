//! Canonical arbitrary-precision rationals and certified enclosures.
//!
//! [`Rational`] is the sole scalar used for set geometry in this crate: an
//! exact fraction kept in canonical form (reduced, denominator positive).
//! [`Enclosure`] is a closed rational interval `[lo, hi]` certifying that an
//! unknown exact value lies inside; comparisons between enclosures are
//! four-state, with [`Comparison::Undecided`] reported whenever the bounds
//! overlap instead of silently guessing.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;

/// Serde adapters rendering `BigInt` as a decimal string, matching the
/// `"p/q"` convention used for rationals (counts in reports can exceed any
/// fixed-width integer).
pub mod bigint_string {
    use num::bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of `BigInt`, elementwise decimal strings.
pub mod bigint_vec_string {
    use num::bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.into_iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar in canonical form: `gcd(|p|, q) = 1` and `q >= 1`.
///
/// Canonical form is established on construction and preserved by every
/// operation, so equality and ordering are plain structural comparisons.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom` in canonical form; fails on a zero denominator.
    pub fn new<N, D>(numer: N, denom: D) -> Result<Self>
    where
        N: Into<BigInt>,
        D: Into<BigInt>,
    {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Builds the integer `n` as a rational.
    pub fn int<N: Into<BigInt>>(n: N) -> Self {
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

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Integer power with negative exponents allowed on nonzero values.
    ///
    /// # Panics
    /// Panics when raising zero to a negative exponent.
    pub fn pow(&self, exp: i32) -> Self {
        use num::traits::Pow;
        Rational(Pow::pow(&self.0, exp))
    }

    /// The power of two `2^exp`, for either sign of `exp`.
    pub fn pow2(exp: i64) -> Self {
        let mag = BigInt::one() << exp.unsigned_abs() as usize;
        if exp >= 0 {
            Rational::int(mag)
        } else {
            Rational(BigRational::new(BigInt::one(), mag))
        }
    }

    /// Exact decimal rendering, truncated toward zero after
    /// `max_frac_digits` fractional digits, with trailing zeros removed.
    pub fn to_decimal(&self, max_frac_digits: usize) -> String {
        let sign = if self.is_negative() { "-" } else { "" };
        let num = self.numer().abs();
        let den = self.denom().clone();
        let int_part = &num / &den;
        let mut rem = &num - &int_part * &den;
        if rem.is_zero() {
            return format!("{sign}{int_part}");
        }
        let ten = BigInt::from(10u8);
        let mut digits = String::new();
        for _ in 0..max_frac_digits {
            if rem.is_zero() {
                break;
            }
            rem *= &ten;
            let d = &rem / &den;
            rem -= &d * &den;
            digits.push(char::from(b'0' + u8::try_from(&d % 10u8).unwrap_or(0)));
        }
        while digits.ends_with('0') {
            digits.pop();
        }
        if digits.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{digits}")
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p/q"` or `"p"` with optional sign on the numerator.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadDescriptor(format!("not a rational: {s:?}"));
        let mut parts = s.trim().splitn(2, '/');
        let numer: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        match parts.next() {
            None => Ok(Rational::int(numer)),
            Some(d) => {
                let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(numer, denom)
            }
        }
    }
}

macro_rules! impl_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::int(BigInt::from(n))
            }
        }
    )*};
}
impl_from_int!(i8, i16, i32, i64, u8, u16, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::int(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Outcome of comparing two enclosures.
///
/// `Equal` is only reported when both sides are exact (zero-width) and hold
/// the same value; overlapping inexact enclosures compare as `Undecided`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Undecided,
}

/// Closed rational interval `[lo, hi]` certifying `lo <= value <= hi`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    /// Builds `[lo, hi]`; fails when `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                left: lo.to_string(),
                right: hi.to_string(),
            });
        }
        Ok(Enclosure { lo, hi })
    }

    /// Zero-width enclosure holding exactly `value`.
    pub fn exact(value: Rational) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The enclosed value when zero-width.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    /// Scales both bounds by `c`, swapping them when `c` is negative so the
    /// result stays a valid enclosure.
    pub fn scale(&self, c: &Rational) -> Enclosure {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Enclosure { lo: b, hi: a }
        } else {
            Enclosure { lo: a, hi: b }
        }
    }

    /// Four-state comparison.
    ///
    /// * `Less` iff `self.hi < other.lo`,
    /// * `Greater` iff `self.lo > other.hi`,
    /// * `Equal` iff both are exact and hold the same value,
    /// * `Undecided` otherwise.
    pub fn compare(&self, other: &Enclosure) -> Comparison {
        if self.is_exact() && other.is_exact() {
            return match self.lo.cmp(&other.lo) {
                Ordering::Less => Comparison::Less,
                Ordering::Equal => Comparison::Equal,
                Ordering::Greater => Comparison::Greater,
            };
        }
        if self.hi < other.lo {
            Comparison::Less
        } else if self.lo > other.hi {
            Comparison::Greater
        } else {
            Comparison::Undecided
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn construction_is_canonical() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(-3, -6), r(1, 2));
        assert_eq!(r(3, -6), r(-1, 2));
        assert_eq!(r(0, 5), Rational::zero());
        assert!(r(7, 7).is_integer());
        assert_eq!(r(-4, 2).to_string(), "-2");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(Rational::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["5/3", "-7/4", "0", "12", "-3"] {
            let v: Rational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(" 10/4 ".parse::<Rational>().unwrap(), r(5, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        assert_eq!(r(1, 2) - r(1, 3), r(1, 6));
        assert_eq!(r(2, 3) * r(9, 4), r(3, 2));
        assert_eq!(r(1, 2) / r(1, 4), r(2, 1));
        assert_eq!(-r(1, 2), r(-1, 2));
        let sum: Rational = [r(1, 4), r(1, 4), r(1, 2)].iter().sum();
        assert_eq!(sum, Rational::one());
    }

    #[test]
    fn pow_and_pow2() {
        assert_eq!(r(2, 3).pow(2), r(4, 9));
        assert_eq!(r(2, 3).pow(-1), r(3, 2));
        assert_eq!(r(5, 1).pow(0), Rational::one());
        assert_eq!(Rational::pow2(10), Rational::int(1024));
        assert_eq!(Rational::pow2(-2), r(1, 4));
        assert_eq!(Rational::pow2(0), Rational::one());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r(5, 3).to_decimal(6), "1.666666");
        assert_eq!(r(1, 4).to_decimal(6), "0.25");
        assert_eq!(r(-1, 8).to_decimal(6), "-0.125");
        assert_eq!(Rational::int(42).to_decimal(6), "42");
        assert_eq!(r(1, 2).to_decimal(0), "0");
    }

    #[test]
    fn ordering_is_value_ordering() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < r(-1, 3));
        assert!(r(7, 5) > Rational::one());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let v = r(5, 3);
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"5/3\"");
        let back: Rational = serde_json::from_str("\"5/3\"").unwrap();
        assert_eq!(back, v);
        let int: Rational = serde_json::from_str("\"4\"").unwrap();
        assert_eq!(int, Rational::int(4));
    }

    #[test]
    fn enclosure_invariants() {
        assert!(Enclosure::new(r(2, 1), r(1, 1)).is_err());
        let e = Enclosure::new(r(1, 2), r(3, 4)).unwrap();
        assert!(!e.is_exact());
        assert_eq!(e.width(), r(1, 4));
        assert!(e.contains(&r(2, 3)));
        assert!(!e.contains(&r(1, 4)));
        let x = Enclosure::exact(r(5, 3));
        assert_eq!(x.exact_value(), Some(&r(5, 3)));
        assert_eq!(x.width(), Rational::zero());
    }

    #[test]
    fn enclosure_comparisons() {
        let e = |a: Rational, b: Rational| Enclosure::new(a, b).unwrap();
        assert_eq!(
            Enclosure::exact(r(1, 1)).compare(&Enclosure::exact(r(2, 1))),
            Comparison::Less
        );
        assert_eq!(
            Enclosure::exact(r(5, 3)).compare(&Enclosure::exact(r(5, 3))),
            Comparison::Equal
        );
        assert_eq!(
            Enclosure::exact(r(3, 1)).compare(&Enclosure::exact(r(2, 1))),
            Comparison::Greater
        );
        assert_eq!(
            e(r(0, 1), r(3, 1)).compare(&e(r(2, 1), r(5, 1))),
            Comparison::Undecided
        );
        assert_eq!(
            e(r(0, 1), r(1, 1)).compare(&e(r(2, 1), r(3, 1))),
            Comparison::Less
        );
        assert_eq!(
            e(r(4, 1), r(5, 1)).compare(&e(r(2, 1), r(3, 1))),
            Comparison::Greater
        );
        // Touching inexact bounds stay undecided.
        assert_eq!(
            e(r(1, 1), r(2, 1)).compare(&e(r(2, 1), r(3, 1))),
            Comparison::Undecided
        );
        // An exact value on the edge of an inexact enclosure is undecided.
        assert_eq!(
            Enclosure::exact(r(2, 1)).compare(&e(r(2, 1), r(3, 1))),
            Comparison::Undecided
        );
    }

    #[test]
    fn enclosure_arithmetic() {
        let e = |a: Rational, b: Rational| Enclosure::new(a, b).unwrap();
        let sum = e(r(1, 1), r(2, 1)).add(&e(r(3, 1), r(4, 1)));
        assert_eq!((sum.lo(), sum.hi()), (&r(4, 1), &r(6, 1)));
        let diff = e(r(0, 1), r(1, 1)).sub(&e(r(0, 1), r(1, 1)));
        assert_eq!((diff.lo(), diff.hi()), (&r(-1, 1), &r(1, 1)));
        let half = e(r(1, 1), r(2, 1)).scale(&r(1, 2));
        assert_eq!((half.lo(), half.hi()), (&r(1, 2), &r(1, 1)));
        let negated = e(r(1, 1), r(2, 1)).scale(&r(-1, 1));
        assert_eq!((negated.lo(), negated.hi()), (&r(-2, 1), &r(-1, 1)));
    }

    /// Independent check of canonical arithmetic against a second bignum
    /// path built on `i128` with explicit gcd reduction.
    #[test]
    fn matches_independent_i128_path() {
        fn gcd(mut a: i128, mut b: i128) -> i128 {
            a = a.abs();
            b = b.abs();
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a.max(1)
        }
        fn canon(mut n: i128, mut d: i128) -> (i128, i128) {
            if d < 0 {
                n = -n;
                d = -d;
            }
            let g = gcd(n, d);
            (n / g, d / g)
        }
        let mut state = 0x243F_6A88_85A3_08D3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 16) as i64 % 2_000_000) - 1_000_000
        };
        for _ in 0..500 {
            let (a, mut b, c, mut d) = (next(), next(), next(), next());
            if b == 0 {
                b = 1;
            }
            if d == 0 {
                d = 1;
            }
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();

            let sum = &x + &y;
            let (sn, sd) = canon(
                a as i128 * d as i128 + c as i128 * b as i128,
                b as i128 * d as i128,
            );
            assert_eq!(sum, Rational::new(BigInt::from(sn), BigInt::from(sd)).unwrap());

            let prod = &x * &y;
            let (pn, pd) = canon(a as i128 * c as i128, b as i128 * d as i128);
            assert_eq!(prod, Rational::new(BigInt::from(pn), BigInt::from(pd)).unwrap());
        }
    }
}
