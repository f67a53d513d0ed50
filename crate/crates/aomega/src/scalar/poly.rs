//! Dense univariate polynomials in the parameter `a` with rational coefficients.
//!
//! Coefficients are stored by ascending power with no trailing zeros, so the
//! representation is canonical and equality is coefficientwise. Degrees met in
//! practice are tiny (at most a handful per identity), which makes the dense
//! form the simplest correct choice.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    /// coeffs[k] is the coefficient of a^k; the last entry is nonzero.
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial a.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn constant_part(&self) -> Option<&Rat> {
        if self.coeffs.len() == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && rem.len() >= divisor.coeffs.len() {
            let k = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] / &lc;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let t = &rem[k + i] - &(&q * c);
                    rem[k + i] = t;
                }
                quot[k] = q;
            }
            rem.pop();
            while rem.last().is_some_and(Rat::is_zero) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Poly::from_coeffs(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in rhs.coeffs.iter().enumerate() {
                let t = &out[i + j] + &(ci * cj);
                out[i + j] = t;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Nonzero monomials by descending power, "c*a^k" for k >= 1 and a bare
    /// rational for the constant term; the zero polynomial prints as "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = if c.is_negative() { -c } else { c.clone() };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*a^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses the `Display` grammar, tolerating omitted "1*" coefficients and
    /// bare "a" for "a^1".
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |t: &str| Error::Parse(format!("invalid polynomial term {t:?}"));
        // Split into signed terms; '-' and '+' only occur as term separators
        // in this grammar (rational coefficients keep their sign up front).
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));

        let mut acc = Poly::zero();
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(bad(&t));
            }
            let (coef, pow): (Rat, usize) = if let Some(apos) = t.find('a') {
                let coef_part = t[..apos].trim_end_matches('*');
                let coef = if coef_part.is_empty() {
                    Rat::one()
                } else {
                    coef_part.parse()?
                };
                let rest = &t[apos + 1..];
                let pow = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| bad(&t))?
                        .parse::<usize>()
                        .map_err(|_| bad(&t))?
                };
                (coef, pow)
            } else {
                (t.parse()?, 0)
            };
            let coef = if neg { -&coef } else { coef };
            let mut coeffs = vec![Rat::zero(); pow + 1];
            coeffs[pow] = coef;
            acc = &acc + &Poly::from_coeffs(coeffs);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    #[test]
    fn div_rem_and_gcd() {
        // a^2 - 1 = (a - 1)(a + 1)
        let num = p(&[-1, 0, 1]);
        let den = p(&[-1, 1]);
        let (q, r) = num.div_rem(&den);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(num.gcd(&den), den.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert!(p(&[-2, 1]).gcd(&p(&[1, 1])).is_one());
        assert!(p(&[3]).gcd(&p(&[0, 0, 5])).is_one());
    }

    #[test]
    fn display_and_parse() {
        let q = p(&[-2, 0, 3]);
        assert_eq!(q.to_string(), "3*a^2-2");
        assert_eq!("3*a^2-2".parse::<Poly>().unwrap(), q);
        assert_eq!("a".parse::<Poly>().unwrap(), Poly::var());
        assert_eq!("1*a^1-0".parse::<Poly>().unwrap(), Poly::var());
        assert_eq!("-a^2+1/2".parse::<Poly>().unwrap().to_string(), "-1*a^2+1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn eval_horner() {
        let q = p(&[-1, 0, 1]);
        assert_eq!(q.eval(&Rat::from_integer(3)), Rat::from_integer(8));
    }
}
