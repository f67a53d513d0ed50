//! Arbitrary-precision rational numbers in canonical form.
//!
//! `Rat` wraps `num::BigRational`, which already maintains the invariants we
//! need: positive denominator, reduced fraction, zero stored as 0/1.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number p/q with q > 0 and gcd(p, q) = 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds p/q in canonical form. Fails on q = 0.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// p/q from machine integers. Panics on q = 0; use `new` for fallible input.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
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

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    /// Panics on division by zero; `checked_div` is the fallible form.
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    /// "p/q", or just "p" when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rat(BigRational::new(p, q)))
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(p)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(BigInt::from(2), BigInt::from(-4)).unwrap();
        assert_eq!(r, Rat::ratio(-1, 2));
        assert_eq!(r.to_string(), "-1/2");
        assert!(Rat::ratio(0, 5).is_zero());
        assert_eq!(Rat::ratio(0, 5).to_string(), "0");
    }

    #[test]
    fn arithmetic_examples() {
        // 1/3 + (-1) = -2/3
        assert_eq!(&Rat::ratio(1, 3) + &Rat::from_integer(-1), Rat::ratio(-2, 3));
        let x = Rat::ratio(7, 5);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            Rat::new(BigInt::from(1), BigInt::zero()),
            Err(Error::ZeroDenominator)
        );
        assert_eq!("1/0".parse::<Rat>(), Err(Error::ZeroDenominator));
    }

    #[test]
    fn recip_of_zero_fails() {
        assert_eq!(Rat::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(Rat::ratio(3, 4).recip().unwrap(), Rat::ratio(4, 3));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "22/7", "-3/5", "100000000000000000001/3"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }
}
