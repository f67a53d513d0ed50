//! Univariate rational functions in the parameter `a`, kept in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::poly::Poly;
use crate::scalar::rat::Rat;

/// A quotient of polynomials num/den with den monic, num and den coprime, and
/// zero stored as 0/1. Equality of canonical forms is exact field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Canonicalizes num/den. Fails when den is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip().expect("nonzero leading coefficient");
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// The parameter a itself.
    pub fn var() -> Self {
        RatFun::from_poly(Poly::var())
    }

    pub fn zero() -> Self {
        RatFun::constant(Rat::zero())
    }

    pub fn one() -> Self {
        RatFun::constant(Rat::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(c) when the function is the constant c.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.den.is_one() {
            return self.num.constant_part().cloned();
        }
        None
    }

    /// Exact evaluation at a rational point; fails on a pole.
    pub fn eval(&self, at: &Rat) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(&self.num.eval(at) / &d)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::normalized(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

fn fmt_side(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.degree().unwrap_or(0) == 0 {
        write!(f, "{p}")
    } else {
        write!(f, "({p})")
    }
}

impl fmt::Display for RatFun {
    /// "num/den" with each non-constant side parenthesized; "/den" is omitted
    /// when the denominator is 1, so constants print like plain rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_side(&self.num, f);
        }
        fmt_side(&self.num, f)?;
        write!(f, "/")?;
        fmt_side(&self.den, f)
    }
}

impl FromStr for RatFun {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        // Locate the top-level '/', which is either preceded by a ')' or
        // followed by a '('; a '/' inside a rational coefficient is neither.
        let split = if let Some(stripped) = s.strip_prefix('(') {
            let mut depth = 1usize;
            let mut end = None;
            for (i, ch) in stripped.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| Error::Parse(format!("unbalanced parens in {s:?}")))?;
            let num = &stripped[..end];
            let rest = stripped[end + 1..].trim();
            if rest.is_empty() {
                Some((num.to_string(), None))
            } else {
                let den = rest
                    .strip_prefix('/')
                    .ok_or_else(|| Error::Parse(format!("expected '/' in {s:?}")))?;
                Some((num.to_string(), Some(den.trim().to_string())))
            }
        } else {
            s.find("/(")
                .map(|i| (s[..i].to_string(), Some(s[i + 1..].to_string())))
        };
        match split {
            Some((num, den)) => {
                let num: Poly = num.parse()?;
                let den: Poly = match den {
                    None => Poly::one(),
                    Some(d) => d
                        .trim()
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()?,
                };
                RatFun::new(num, den)
            }
            None => Ok(RatFun::from_poly(s.parse()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    #[test]
    fn normalization_cancels_common_factors() {
        // (a^2 - 1)/(a - 1) = a + 1
        let f = RatFun::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f, RatFun::from_poly(poly(&[1, 1])));
        // (2a)/2 = a, with a monic denominator
        let g = RatFun::new(poly(&[0, 2]), poly(&[2])).unwrap();
        assert_eq!(g, RatFun::var());
        // zero numerator collapses to 0/1
        let z = RatFun::new(Poly::zero(), poly(&[1, 0, 0, 1])).unwrap();
        assert!(z.is_zero());
        assert!(z.den.is_one());
    }

    #[test]
    fn normalize_is_stable_under_common_multiples() {
        let p = poly(&[3, 1]);
        let r = poly(&[-2, 5]);
        let q = poly(&[1, 1, 1]);
        let plain = RatFun::new(p.clone(), r.clone()).unwrap();
        let inflated = RatFun::new(&p * &q, &r * &q).unwrap();
        assert_eq!(plain, inflated);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFun::new(poly(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn eval_and_poles() {
        // 1/(a - 2)
        let f = RatFun::new(poly(&[1]), poly(&[-2, 1])).unwrap();
        assert_eq!(f.eval(&Rat::from_integer(3)).unwrap(), Rat::one());
        assert_eq!(f.eval(&Rat::from_integer(2)), Err(Error::PoleAtPoint));
    }

    #[test]
    fn reciprocal_cancellation() {
        // 1/a times a is 1
        let inv_a = RatFun::var().recip().unwrap();
        assert!((&inv_a * &RatFun::var()).is_one());
        assert_eq!(RatFun::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_and_parse() {
        let inv_a = RatFun::var().recip().unwrap();
        assert_eq!(inv_a.to_string(), "1/(1*a^1)");
        assert_eq!("1/(1*a^1)".parse::<RatFun>().unwrap(), inv_a);
        assert_eq!("1/(1*a^1-0)".parse::<RatFun>().unwrap(), inv_a);
        let f = RatFun::new(poly(&[-1, 0, 1]), poly(&[-2, 1])).unwrap();
        assert_eq!(f.to_string(), "(1*a^2-1)/(1*a^1-2)");
        assert_eq!(f.to_string().parse::<RatFun>().unwrap(), f);
        assert_eq!("5/3".parse::<RatFun>().unwrap(), RatFun::constant(Rat::ratio(5, 3)));
    }
}
