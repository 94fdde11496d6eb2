//! Parameter quadruples, the scalar sequences attached to them, the
//! classification parameter sets and the group actions on parameters.

mod groups;
mod orbit;
mod sequences;

use serde::{Deserialize, Serialize};

pub use groups::{SignTriple, TwistElement};
pub use orbit::{canonical_orbit_rep, ep_products, in_ep, in_op, orbit_act, orbit_members};
pub use sequences::{theta, theta_coincidence, Sequence};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// `q` together with nonzero `k0..k3`, with no further constraint.
///
/// This is all the universal module `M` and the polynomial representation
/// `P` need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct HeckeParams<F> {
    pub q: F,
    pub k: [F; 4],
}

impl<F: Field> HeckeParams<F> {
    pub fn new(q: F, k: [F; 4]) -> Result<Self> {
        if !q.is_valid_q() {
            return Err(Error::Constraint(format!(
                "q = {q} must be nonzero and not a root of unity"
            )));
        }
        if let Some(i) = k.iter().position(Field::is_zero) {
            return Err(Error::Constraint(format!("k{i} must be nonzero")));
        }
        Ok(HeckeParams { q, k })
    }

    /// `q^e`.
    pub fn qp(&self, e: i64) -> F {
        self.q.pow(e)
    }

    /// `k_i + k_i^{-1}`, the scalar by which `c_i` acts.
    pub fn c(&self, i: usize) -> F {
        self.k[i].clone() + self.k[i].recip()
    }
}

/// Which family a quadruple parametrizes.
///
/// `Even` is the even-dimensional family (`d` odd, `k0^2 = q^{-d-1}`);
/// `Odd` is the odd-dimensional family (`d` even, `k0 k1 k2 k3 = q^{-d-1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of the module dimension `d + 1`.
    pub fn of_dimension(dim: usize) -> Parity {
        if dim.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("unknown parity {other:?}"))),
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A validated `(q, k0, k1, k2, k3, d, parity)`.
///
/// Construction rejects any quadruple that violates its family's defining
/// constraint, so downstream formulas may rely on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "F: Field")]
pub struct ParamQuadruple<F> {
    q: F,
    k: [F; 4],
    d: usize,
    parity: Parity,
}

impl<F: Field> ParamQuadruple<F> {
    pub fn new(q: F, k: [F; 4], d: usize, parity: Parity) -> Result<Self> {
        HeckeParams::new(q.clone(), k.clone())?;
        let target = q.pow(-(d as i64) - 1);
        match parity {
            Parity::Even => {
                if d.is_multiple_of(2) {
                    return Err(Error::Constraint(format!(
                        "even-dimensional family needs odd d, got d = {d}"
                    )));
                }
                if k[0].square() != target {
                    return Err(Error::Constraint("k0^2 != q^{-d-1}".into()));
                }
            }
            Parity::Odd => {
                if d % 2 == 1 {
                    return Err(Error::Constraint(format!(
                        "odd-dimensional family needs even d, got d = {d}"
                    )));
                }
                let prod = k.iter().cloned().fold(F::one(), |a, b| a * b);
                if prod != target {
                    return Err(Error::Constraint("k0*k1*k2*k3 != q^{-d-1}".into()));
                }
            }
        }
        Ok(ParamQuadruple { q, k, d, parity })
    }

    pub fn even(q: F, k: [F; 4], d: usize) -> Result<Self> {
        Self::new(q, k, d, Parity::Even)
    }

    pub fn odd(q: F, k: [F; 4], d: usize) -> Result<Self> {
        Self::new(q, k, d, Parity::Odd)
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn k(&self) -> &[F; 4] {
        &self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d + 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn hecke(&self) -> HeckeParams<F> {
        HeckeParams {
            q: self.q.clone(),
            k: self.k.clone(),
        }
    }

    /// `q^e`.
    pub fn qp(&self, e: i64) -> F {
        self.q.pow(e)
    }

    /// Same `q`, `d` and parity with new `k`, re-validated.
    pub fn with_k(&self, k: [F; 4]) -> Result<Self> {
        Self::new(self.q.clone(), k, self.d, self.parity)
    }

    pub fn require(&self, parity: Parity) -> Result<()> {
        if self.parity != parity {
            return Err(Error::Contract(format!(
                "operation needs the {parity} family, got the {} family",
                self.parity
            )));
        }
        Ok(())
    }

    /// Sequence value with the even/odd index split. For the odd family the
    /// `Rho` and `Psi` values are also computed from their specialized
    /// forms (which use `k0 k1 k2 k3 = q^{-d-1}`) and the two must agree.
    pub fn eval_sequence(&self, kind: Sequence, i: i64) -> F {
        let general = self.hecke().sequence(kind, i);
        if self.parity == Parity::Odd && i % 2 != 0 {
            let shift = self.qp(i - self.d as i64 - 1);
            let special = match kind {
                Sequence::Rho => Some(self.k[2].recip().square() * shift.clone() - F::one()),
                Sequence::Psi => Some(self.k[3].recip().square() * shift.clone() - F::one()),
                _ => None,
            };
            if let Some(s) = special {
                let special = (shift - F::one()) * s;
                assert_eq!(
                    general, special,
                    "specialized {kind:?}_{i} disagrees with the general form"
                );
            }
        }
        general
    }
}

#[derive(Deserialize)]
#[serde(bound = "F: Field")]
struct ParamJson<F> {
    q: F,
    k: [F; 4],
    d: usize,
    parity: Parity,
}

impl<'de, F: Field> Deserialize<'de> for ParamQuadruple<F> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ParamJson::<F>::deserialize(d)?;
        ParamQuadruple::new(j.q, j.k, j.d, j.parity).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RatFun, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    pub(crate) fn running_even() -> ParamQuadruple<Rational> {
        ParamQuadruple::even(r("2"), [r("1/2"), r("1"), r("3"), r("1")], 1).unwrap()
    }

    #[test]
    fn constraint_is_checked_eagerly() {
        let bad = ParamQuadruple::even(r("2"), [r("1/3"), r("1"), r("3"), r("1")], 1);
        assert_eq!(bad, Err(Error::Constraint("k0^2 != q^{-d-1}".into())));
        assert!(ParamQuadruple::even(r("2"), [r("-1/2"), r("1"), r("3"), r("1")], 1).is_ok());
        assert!(ParamQuadruple::even(r("2"), [r("1/2"), r("1"), r("3"), r("1")], 2).is_err());
        assert!(ParamQuadruple::odd(r("2"), [r("1"), r("1"), r("1"), r("1/2")], 0).is_ok());
        assert!(ParamQuadruple::odd(r("2"), [r("1"), r("1"), r("1"), r("1")], 0).is_err());
        assert!(ParamQuadruple::odd(r("1"), [r("1"), r("1"), r("1"), r("1")], 0).is_err());
        assert!(ParamQuadruple::odd(r("2"), [r("0"), r("1"), r("1"), r("1/2")], 0).is_err());
    }

    #[test]
    fn sequence_examples() {
        let p = running_even();
        assert_eq!(p.eval_sequence(Sequence::Rho, 0), r("0"));
        assert_eq!(p.eval_sequence(Sequence::Rho, 1), r("-4/3"));
        // k0^2 q^2 = 1 kills the second factor.
        assert_eq!(p.eval_sequence(Sequence::Phi, 2), r("0"));
    }

    #[test]
    fn rho_vanishes_at_d_plus_one_in_even_family() {
        for d in [1usize, 3, 5] {
            let k0 = r("2").pow(-(d as i64 + 1) / 2);
            let p = ParamQuadruple::even(r("2"), [k0, r("5/3"), r("-7"), r("2/9")], d).unwrap();
            assert!(p.eval_sequence(Sequence::Rho, d as i64 + 1).is_zero());
        }
    }

    #[test]
    fn odd_family_specialized_forms_agree() {
        let q = r("3");
        let (k0, k1, k2) = (r("2/5"), r("-7/2"), r("4"));
        for d in [0usize, 2, 4] {
            let k3 = q.pow(-(d as i64) - 1) / (k0.clone() * k1.clone() * k2.clone());
            let p = ParamQuadruple::odd(q.clone(), [k0.clone(), k1.clone(), k2.clone(), k3], d).unwrap();
            for i in -6..12 {
                p.eval_sequence(Sequence::Rho, i);
                p.eval_sequence(Sequence::Psi, i);
            }
        }
    }

    #[test]
    fn symbolic_quadruple() {
        let q = RatFun::q();
        let k0 = q.pow(-1);
        let one = RatFun::one();
        let p = ParamQuadruple::even(q, [k0, one.clone(), RatFun::from_int(3), one], 1).unwrap();
        assert!(!p.eval_sequence(Sequence::Rho, 1).is_zero());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let p = running_even();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"q":"2","k":["1/2","1","3","1"],"d":1,"parity":"even"}"#);
        let back: ParamQuadruple<Rational> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"q":"2","k":["1/3","1","3","1"],"d":1,"parity":"even"}"#;
        assert!(serde_json::from_str::<ParamQuadruple<Rational>>(bad).is_err());
    }
}
