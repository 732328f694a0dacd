//! Exact rational coefficients with an inline fast path for machine-sized integers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of the rationals, always in lowest terms with a positive denominator.
///
/// Integers that fit in an `i64` are stored inline; everything else falls back
/// to a boxed `BigRational`. The representation is canonical, so derived
/// equality and hashing are structural.
#[derive(Clone)]
pub struct Coefficient(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64),
    Big(Box<BigRational>),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(Repr::Small(0))
    }

    pub fn one() -> Self {
        Coefficient(Repr::Small(1))
    }

    pub fn from_i64(v: i64) -> Self {
        Coefficient(Repr::Small(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Coefficient(Repr::Small(s)),
            None => Coefficient(Repr::Big(Box::new(BigRational::from_integer(v)))),
        }
    }

    pub fn from_ratio(r: BigRational) -> Self {
        if r.is_integer() {
            Self::from_bigint(r.to_integer())
        } else {
            Coefficient(Repr::Big(Box::new(r)))
        }
    }

    /// `num / den`; `None` when `den` is zero.
    pub fn fraction(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Self::from_ratio(BigRational::new(num.into(), den.into())))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_) => true,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn as_small(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_ratio(&self) -> BigRational {
        match &self.0 {
            Repr::Small(v) => BigRational::from_integer((*v).into()),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => (*v).into(),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_) => BigInt::one(),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0) => None,
            Repr::Small(1) => Some(Self::one()),
            Repr::Small(-1) => Some(Self::from_i64(-1)),
            _ => Some(Self::from_ratio(self.to_ratio().recip())),
        }
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if *b != -1 && a % b == 0 {
                return Some(Self::from_i64(a / b));
            }
        }
        Some(Self::from_ratio(self.to_ratio() / rhs.to_ratio()))
    }

    /// Non-negative gcd of two integer coefficients. Panics on non-integers.
    pub fn int_gcd(&self, rhs: &Self) -> Self {
        assert!(self.is_integer() && rhs.is_integer(), "int_gcd on a fraction");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let r = x % y;
                x = y;
                y = r;
            }
            if let Ok(v) = i64::try_from(x) {
                return Self::from_i64(v);
            }
            return Self::from_bigint(BigInt::from(x));
        }
        Self::from_bigint(self.numer().gcd(&rhs.numer()))
    }

    /// Exact integer division of integer coefficients known to divide.
    pub fn int_div_exact(&self, rhs: &Self) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if *b != -1 {
                debug_assert_eq!(a % b, 0);
                return Self::from_i64(a / b);
            }
        }
        let (q, r) = self.numer().div_rem(&rhs.numer());
        debug_assert!(r.is_zero());
        Self::from_bigint(q)
    }

    /// Bit length of numerator plus denominator, a cheap size measure.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Repr::Big(r) => r.numer().bits() + r.denom().bits(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Small integers serialize as JSON numbers, everything else as `"p/q"` strings.
impl serde::Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_small() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<i32> for Coefficient {
    fn from(v: i32) -> Self {
        Self::from_i64(v as i64)
    }
}

impl From<BigInt> for Coefficient {
    fn from(v: BigInt) -> Self {
        Self::from_bigint(v)
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Coefficient {}

impl Hash for Coefficient {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_ratio().cmp(&other.to_ratio()),
        }
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return Coefficient::from_i64(s);
            }
        }
        Coefficient::from_ratio(self.to_ratio() + rhs.to_ratio())
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                return Coefficient::from_i64(s);
            }
        }
        Coefficient::from_ratio(self.to_ratio() - rhs.to_ratio())
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return Coefficient::from_i64(s);
            }
        }
        Coefficient::from_ratio(self.to_ratio() * rhs.to_ratio())
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        if let Repr::Small(a) = &self.0 {
            if let Some(s) = a.checked_neg() {
                return Coefficient::from_i64(s);
            }
        }
        Coefficient::from_ratio(-self.to_ratio())
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coefficient {
    type Err = String;

    /// Accepts `p` or `p/q` with decimal integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|e| format!("bad integer {t:?}: {e}"));
        match s.split_once('/') {
            None => Ok(Self::from_bigint(parse(s)?)),
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Self::from_ratio(BigRational::new(parse(n)?, d)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_zero_and_demotion() {
        let a = Coefficient::fraction(2, 4).unwrap();
        let b = Coefficient::fraction(1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(&a - &b, Coefficient::zero());
        assert!((&a + &b).is_one());
        assert!(Coefficient::fraction(0, -5).unwrap().is_zero());
        assert_eq!(Coefficient::fraction(3, -6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn overflow_promotes() {
        let big = Coefficient::from_i64(i64::MAX);
        let s = &big + &Coefficient::one();
        assert_eq!(s.to_string(), "9223372036854775808");
        assert_eq!(&s - &Coefficient::one(), big);
        let m = Coefficient::from_i64(i64::MIN);
        assert_eq!((-&m).to_string(), "9223372036854775808");
        let sq = &big * &big;
        assert_eq!(sq.checked_div(&big).unwrap(), big);
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = Coefficient::from_i64(-12);
        let b = Coefficient::from_i64(18);
        assert_eq!(a.int_gcd(&b), Coefficient::from_i64(6));
        assert_eq!(a.int_div_exact(&Coefficient::from_i64(6)), Coefficient::from_i64(-2));
        assert_eq!(Coefficient::from_i64(i64::MIN).int_gcd(&Coefficient::zero()).to_string(), "9223372036854775808");
    }

    #[test]
    fn parse_fractions() {
        assert_eq!("6/4".parse::<Coefficient>().unwrap(), Coefficient::fraction(3, 2).unwrap());
        assert!("1/0".parse::<Coefficient>().is_err());
        assert!(Coefficient::one().checked_div(&Coefficient::zero()).is_none());
    }
}
