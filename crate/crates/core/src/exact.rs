//! Arbitrary-precision rational scalars.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number, always stored in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exact(BigRational);

impl Exact {
    pub fn new(numer: i64, denom: i64) -> Exact {
        assert!(denom != 0, "zero denominator");
        Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Exact {
        Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Exact {
        Exact(BigRational::from_integer(n))
    }

    pub fn from_ratio(r: BigRational) -> Exact {
        Exact(r)
    }

    pub fn zero() -> Exact {
        Exact(BigRational::zero())
    }

    pub fn one() -> Exact {
        Exact(BigRational::one())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
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

    /// Returns `Some(k)` when the value is a non-positive integer `-k`.
    pub fn as_nonpositive_integer(&self) -> Option<u32> {
        if self.is_integer() && !self.is_positive() {
            (-self.numer()).to_u32()
        } else {
            None
        }
    }

    pub fn to_u32(&self) -> Option<u32> {
        if self.is_integer() {
            self.numer().to_u32()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles numerators and denominators beyond the f64 range.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Exact {
        Exact(self.0.abs())
    }

    pub fn recip(&self) -> Exact {
        assert!(!self.is_zero(), "reciprocal of zero");
        Exact(self.0.recip())
    }

    pub fn checked_div(&self, other: &Exact) -> Option<Exact> {
        if other.is_zero() {
            None
        } else {
            Some(Exact(&self.0 / &other.0))
        }
    }

    pub fn pow(&self, k: u32) -> Exact {
        Exact(num::pow(self.0.clone(), k as usize))
    }

    /// Integer power allowing negative exponents; panics on `0^{-k}`.
    pub fn powi(&self, k: i64) -> Exact {
        if k >= 0 {
            self.pow(k as u32)
        } else {
            self.recip().pow((-k) as u32)
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Exact {
    type Err = Error;

    /// Accepts `p/q` or a bare integer; decimal and float notation are rejected.
    fn from_str(s: &str) -> Result<Exact, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected an integer or p/q rational, got {s:?}"));
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Exact(BigRational::new(p, q)))
            }
            None => Ok(Exact::from_bigint(parse_int(s)?)),
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Exact, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Exact {
            fn from(n: $t) -> Exact {
                Exact(BigRational::from_integer(BigInt::from(n)))
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize);

impl From<BigInt> for Exact {
    fn from(n: BigInt) -> Exact {
        Exact::from_bigint(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Exact> for &Exact {
            type Output = Exact;
            fn $m(self, rhs: &Exact) -> Exact {
                Exact((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact {
                Exact(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: &Exact) -> Exact {
                Exact(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Exact> for &Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact {
                Exact((&self.0).$m(rhs.0))
            }
        }
        impl $atr<&Exact> for Exact {
            fn $am(&mut self, rhs: &Exact) {
                self.0 = (&self.0).$m(&rhs.0);
            }
        }
        impl $atr<Exact> for Exact {
            fn $am(&mut self, rhs: Exact) {
                self.0 = (&self.0).$m(rhs.0);
            }
        }
    };
}
binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div<&Exact> for &Exact {
    type Output = Exact;
    fn div(self, rhs: &Exact) -> Exact {
        assert!(!rhs.is_zero(), "division by zero");
        Exact(&self.0 / &rhs.0)
    }
}

impl Div<Exact> for Exact {
    type Output = Exact;
    fn div(self, rhs: Exact) -> Exact {
        &self / &rhs
    }
}

impl Div<&Exact> for Exact {
    type Output = Exact;
    fn div(self, rhs: &Exact) -> Exact {
        &self / rhs
    }
}

impl Div<Exact> for &Exact {
    type Output = Exact;
    fn div(self, rhs: Exact) -> Exact {
        self / &rhs
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact(-self.0)
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact(-&self.0)
    }
}

impl Sum for Exact {
    fn sum<I: Iterator<Item = Exact>>(iter: I) -> Exact {
        iter.fold(Exact::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Exact> for Exact {
    fn sum<I: Iterator<Item = &'a Exact>>(iter: I) -> Exact {
        iter.fold(Exact::zero(), |a, b| a + b)
    }
}

impl Product for Exact {
    fn product<I: Iterator<Item = Exact>>(iter: I) -> Exact {
        iter.fold(Exact::one(), |a, b| a * b)
    }
}

impl<'a> Product<&'a Exact> for Exact {
    fn product<I: Iterator<Item = &'a Exact>>(iter: I) -> Exact {
        iter.fold(Exact::one(), |a, b| a * b)
    }
}

/// Shorthand for `Exact::new(p, q)`.
pub fn q(p: i64, d: i64) -> Exact {
    Exact::new(p, d)
}

/// Parses a comma-separated list of rationals such as `1,1/2,3`.
pub fn parse_list(s: &str) -> Result<Vec<Exact>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}
