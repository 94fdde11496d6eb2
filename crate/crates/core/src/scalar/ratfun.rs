use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, QPoly, Rational};
use crate::error::{Error, Result};

/// Rational function `num(q) / den(q)` in the formal variable `q`.
///
/// Always stored in canonical form: numerator and denominator coprime,
/// denominator monic, zero represented as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: QPoly,
    den: QPoly,
}

impl RatFun {
    /// The formal variable `q`.
    pub fn q() -> Self {
        RatFun {
            num: QPoly::monomial(BigRational::one(), 1),
            den: QPoly::one(),
        }
    }

    /// Build `num / den` and bring it into canonical form.
    pub fn from_parts(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return RatFun {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().expect("nonzero denominator").recip();
        RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    /// The constant value, if this function does not depend on `q`.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(Rational::from(self.num.coeffs()[0].clone())),
            _ => None,
        }
    }

    /// Evaluate at `q = q0`; `None` when the denominator vanishes there.
    pub fn eval(&self, q0: &Rational) -> Option<Rational> {
        let d = self.den.eval(q0.as_big());
        if d.is_zero() {
            return None;
        }
        Some(Rational::from(self.num.eval(q0.as_big()) / d))
    }

    fn parse_coeffs(s: &str) -> Result<QPoly> {
        let coeffs = s
            .split(',')
            .map(|c| c.parse::<Rational>().map(Rational::into_big))
            .collect::<Result<Vec<_>>>()?;
        Ok(QPoly::from_coeffs(coeffs))
    }

    /// Parses `c`, `q`, `-q`, `q^e`, `c*q`, `c*q^e` with rational `c` and integer `e`.
    fn parse_monomial(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational function: {s:?}"));
        if let Ok(c) = s.parse::<Rational>() {
            return Ok(RatFun::from_rational(&c));
        }
        let (coeff, power) = match s.split_once('*') {
            Some((c, rest)) => (c.trim().parse::<Rational>()?, rest.trim()),
            None => match s.strip_prefix('-') {
                Some(rest) => (Rational::from(-1), rest.trim()),
                None => (Rational::one(), s),
            },
        };
        let rest = power.strip_prefix('q').ok_or_else(bad)?;
        let e: i64 = match rest.trim() {
            "" => 1,
            r => r
                .strip_prefix('^')
                .ok_or_else(bad)?
                .trim()
                .trim_matches(|c| c == '(' || c == ')' || c == '{' || c == '}')
                .parse()
                .map_err(|_| bad())?,
        };
        Ok(RatFun::from_rational(&coeff) * RatFun::q().pow(e))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &QPoly| {
            if p.is_zero() {
                "0".to_string()
            } else {
                p.coeffs()
                    .iter()
                    .map(|c| Rational::from(c.clone()).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        write!(f, "{} | {}", join(&self.num), join(&self.den))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFun {
    type Err = Error;

    /// Accepts the canonical `"n0,n1,... | d0,d1,..."` form (ascending
    /// degree) or a single monomial such as `-1/2*q^-3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('|') {
            Some((n, d)) => {
                RatFun::from_parts(Self::parse_coeffs(n.trim())?, Self::parse_coeffs(d.trim())?)
            }
            None => Self::parse_monomial(s),
        }
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalized(num, &self.den * &rhs.den)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFun {
    type Output = RatFun;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: RatFun) -> RatFun {
        self * rhs.recip()
    }
}

impl Field for RatFun {
    const BACKEND: &'static str = "ratfun";

    fn zero() -> Self {
        RatFun {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    fn one() -> Self {
        RatFun {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    fn from_int(n: i64) -> Self {
        RatFun::from_rational(&Rational::from(n))
    }

    fn from_rational(r: &Rational) -> Self {
        RatFun::normalized(QPoly::constant(r.as_big().clone()), QPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFun::normalized(self.den.clone(), self.num.clone()))
    }

    fn sqrt(&self) -> Option<Self> {
        // In lowest terms with a monic denominator, num/den is a square iff
        // num and den are squares separately.
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(RatFun::normalized(n, d))
    }

    fn is_valid_q(&self) -> bool {
        match self.as_constant() {
            Some(c) => c.is_valid_q(),
            None => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        // (q^2 - 1) / (2q - 2) = (q + 1) / 2
        let f = rf("-1,0,1 | -2,2");
        assert_eq!(f.to_string(), "1/2,1/2 | 1");
        assert_eq!(rf("0 | 5,1").to_string(), "0 | 1");
        assert_eq!(rf("3 | 6").to_string(), "1/2 | 1");
        assert!("1 | 0".parse::<RatFun>().is_err());
    }

    #[test]
    fn monomial_syntax() {
        let q = RatFun::q();
        assert_eq!(rf("q"), q);
        assert_eq!(rf("q^-2"), q.pow(-2));
        assert_eq!(rf("-q^3"), -q.pow(3));
        assert_eq!(rf("-1/4*q^-1"), RatFun::from_rational(&Rational::new(-1, 4)) / q);
        assert_eq!(rf("7/3"), RatFun::from_rational(&Rational::new(7, 3)));
        assert!("x^2".parse::<RatFun>().is_err());
    }

    #[test]
    fn inverse_and_sqrt() {
        let q = RatFun::q();
        let f = (q.clone() + RatFun::one()) / (q.clone() - RatFun::from_int(2));
        assert!((f.clone() * f.recip()).is_one());
        let sq = f.square();
        let r = sq.sqrt().unwrap();
        assert!(r == f || r == -f.clone());
        assert!(q.sqrt().is_none());
        assert_eq!(q.pow(-4).sqrt().map(|s| s.square()), Some(q.pow(-4)));
    }

    #[test]
    fn evaluation() {
        let f = rf("1,1 | 0,1"); // (1 + q) / q
        assert_eq!(f.eval(&Rational::from(2)), Some(Rational::new(3, 2)));
        assert_eq!(f.eval(&Rational::zero()), None);
    }
}
