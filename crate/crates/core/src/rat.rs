//! Exact rational scalars.
//!
//! Every coefficient in the toolkit is a [`Rat`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator (zero is `0/1`).
//! Literals parse from `"p"`, `"p/q"`, or exact decimal strings such as
//! `"22.5"` (= `45/2`). There is no floating point anywhere in the core.

use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer/denom` reduced to canonical form. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `numer/denom` over big integers. Panics if `denom` is zero.
    pub fn ratio(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Exact integer value, if the denominator is 1 and it fits in i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidNumber {
            text: s.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Rat(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = t.split_once('.') {
            // Exact decimal: sign applies to the whole literal.
            let (sign, digits) = match int_part.trim().strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (
                    1,
                    int_part.trim().strip_prefix('+').unwrap_or(int_part.trim()),
                ),
            };
            let frac = frac_part.trim();
            if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() && digits.is_empty() {
                return Err(bad());
            }
            let int_val: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| bad())?
            };
            let frac_val: BigInt = if frac.is_empty() {
                BigInt::zero()
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let numer = (int_val * &scale + frac_val) * BigInt::from(sign);
            return Ok(Rat(BigRational::new(numer, scale)));
        }
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rat(BigRational::from_integer(n)))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($Op:ident $op:ident, $OpAssign:ident $op_assign:ident) => {
        impl $Op for Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                Rat((self.0).$op(rhs.0))
            }
        }
        impl $Op<&Rat> for Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                Rat((self.0).$op(&rhs.0))
            }
        }
        impl $Op<Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                Rat((&self.0).$op(rhs.0))
            }
        }
        impl $Op<&Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$op(&rhs.0))
            }
        }
        impl $OpAssign<Rat> for Rat {
            fn $op_assign(&mut self, rhs: Rat) {
                (self.0).$op_assign(rhs.0);
            }
        }
        impl $OpAssign<&Rat> for Rat {
            fn $op_assign(&mut self, rhs: &Rat) {
                (self.0).$op_assign(&rhs.0);
            }
        }
    };
}

forward_binop!(Add add, AddAssign add_assign);
forward_binop!(Sub sub, SubAssign sub_assign);
forward_binop!(Mul mul, MulAssign mul_assign);
forward_binop!(Div div, DivAssign div_assign);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Exact dot product; panics on length mismatch.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Parse a whitespace-separated list of rational literals.
pub fn parse_vec(s: &str) -> Result<Vec<Rat>, Error> {
    s.split_whitespace().map(|t| t.parse()).collect()
}

/// Shorthand for building vectors of rationals from integers.
pub fn ivec(entries: &[i64]) -> Vec<Rat> {
    entries.iter().map(|&n| Rat::from_int(n)).collect()
}
