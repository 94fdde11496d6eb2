//! Exact scalar fields.
//!
//! Two backends share the [`Field`] contract: [`Rational`] (big rationals,
//! numeric `q`) and [`RatFun`] (univariate rational functions in a formal
//! `q` over the rationals).

mod poly;
mod ratfun;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub use poly::QPoly;
pub use ratfun::RatFun;
pub use rational::Rational;

/// An exact computable field.
///
/// Values are immutable. `Div` and [`Field::recip`] panic on a zero divisor
/// the same way integer division does; use [`Field::inv`] when the divisor
/// may vanish.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + FromStr<Err = Error>
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Short backend name used on the command line.
    const BACKEND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// `true` iff `self` is nonzero and not a root of unity.
    fn is_valid_q(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn recip(&self) -> Self {
        self.inv().expect("reciprocal of zero")
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Integer power with `x^0 = 1`; fails for a zero base with a negative exponent.
    fn checked_pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 {
            self.inv()
                .ok_or_else(|| Error::Domain("zero raised to a negative power".into()))?
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        Ok(acc)
    }

    /// Integer power; panics on a zero base with a negative exponent.
    fn pow(&self, n: i64) -> Self {
        self.checked_pow(n).expect("zero raised to a negative power")
    }
}

/// `x^n`, exact. Zero base with a negative exponent is a domain error.
pub fn scalar_pow<F: Field>(x: &F, n: i64) -> Result<F> {
    x.checked_pow(n)
}

/// `true` iff `q` is nonzero and not a root of unity in its field.
pub fn validate_q<F: Field>(q: &F) -> bool {
    q.is_valid_q()
}

/// Which scalar backend a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Ratfun,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Backend::Rational),
            "ratfun" => Ok(Backend::Ratfun),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Rational => "rational",
            Backend::Ratfun => "ratfun",
        })
    }
}

impl Backend {
    /// Guess the backend from a serialized scalar: rational functions carry a `|`.
    pub fn detect(encoded: &str) -> Backend {
        if encoded.contains('|') {
            Backend::Ratfun
        } else {
            Backend::Rational
        }
    }
}
