//! Exact field arithmetic over the rationals and over the rational-function
//! field in one transcendental parameter `a`.
//!
//! Every identity in the crate is checked with scalars from this module, so
//! there is no tolerance anywhere: equality means equality in the field.

mod poly;
mod rat;
mod ratfun;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use poly::Poly;
pub use rat::Rat;
pub use ratfun::RatFun;

use crate::error::{Error, Result};

/// A field element: either a rational number or a rational function of `a`.
///
/// Arithmetic never mixes the variants implicitly; a `Rat` operand is lifted
/// to a constant `RatFun` exactly when the other operand is symbolic.
#[derive(Clone, Debug, Eq)]
pub enum Scalar {
    Rat(Rat),
    Fun(RatFun),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rat::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Rat(Rat::from_integer(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Rat(Rat::ratio(p, q))
    }

    /// The transcendental parameter a.
    pub fn sym_a() -> Self {
        Scalar::Fun(RatFun::var())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fun(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fun(f) => f.is_one(),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Scalar::Fun(_))
    }

    fn lift(&self) -> RatFun {
        match self {
            Scalar::Rat(r) => RatFun::constant(r.clone()),
            Scalar::Fun(f) => f.clone(),
        }
    }

    /// As a rational number, when the value is not genuinely symbolic.
    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Fun(f) => f.as_constant(),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip()?)),
            Scalar::Fun(f) => Ok(Scalar::Fun(f.recip()?)),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x.checked_div(y)?)),
            _ => Ok(Scalar::Fun(self.lift().checked_div(&rhs.lift())?)),
        }
    }

    /// Specializes the parameter a to a rational point; fails on a pole.
    pub fn eval_at(&self, a0: &Rat) -> Result<Rat> {
        match self {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Fun(f) => f.eval(a0),
        }
    }

    pub fn mul_int(&self, n: i64) -> Scalar {
        self * &Scalar::from_integer(n)
    }
}

impl PartialEq for Scalar {
    /// Field equality across variants: a rational equals the corresponding
    /// constant rational function.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => x == y,
            (Scalar::Fun(x), Scalar::Fun(y)) => x == y,
            _ => self.lift() == other.lift(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::Rat(r)
    }
}

impl From<RatFun> for Scalar {
    fn from(f: RatFun) -> Self {
        Scalar::Fun(f)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x.$method(y)),
                    _ => Scalar::Fun((&self.lift()).$method(&rhs.lift())),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Sub, sub);

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => Scalar::Fun(&self.lift() + &rhs.lift()),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => Scalar::Fun(&self.lift() * &rhs.lift()),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fun(f) => Scalar::Fun(-f),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fun(fun) => write!(f, "{fun}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Anything mentioning the parameter `a` parses as a rational function,
    /// everything else as a plain rational.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('a') {
            Ok(Scalar::Fun(s.parse()?))
        } else {
            Ok(Scalar::Rat(s.parse()?))
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Unreduced fraction of polynomials, used by hot identity checks to defer
/// all canonicalization: arithmetic is plain polynomial arithmetic and
/// equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub(crate) struct RawFrac {
    pub(crate) num: Poly,
    pub(crate) den: Poly,
}

impl RawFrac {
    /// Canonical scalar, for reporting; rational inputs come back rational.
    pub(crate) fn to_scalar(&self) -> Scalar {
        let f = RatFun::new(self.num.clone(), self.den.clone())
            .expect("raw fraction denominators are nonzero");
        match f.as_constant() {
            Some(r) => Scalar::Rat(r),
            None => Scalar::Fun(f),
        }
    }
}

impl Scalar {
    pub(crate) fn to_raw(&self) -> RawFrac {
        match self {
            Scalar::Rat(r) => RawFrac {
                num: Poly::constant(r.clone()),
                den: Poly::one(),
            },
            Scalar::Fun(f) => RawFrac {
                num: f.num().clone(),
                den: f.den().clone(),
            },
        }
    }
}
