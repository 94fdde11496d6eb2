//! Concrete modules: the finite-dimensional `E` and `O` families as
//! matrices, the universal module `M` applied lazily to finitely supported
//! vectors, and the Laurent-polynomial representation `P`.
//!
//! Matrices act on column coordinate vectors: column `j` of the matrix of
//! `t` is the coordinate vector of `t v_j`.

mod construct;
mod ladder;
mod laurent;
mod verma;

use serde::{Deserialize, Serialize};

pub use construct::{make_e, make_o};
pub use ladder::{commutation_check, ladder_check, quotient_check, w_basis_check, Ladder};
pub use laurent::{poly_apply, poly_intertwining_check, verma_basis_image, LaurentPoly};
pub use verma::{verma_apply, verma_ladder_check, SparseVec, VermaOp};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::params::{ParamQuadruple, TwistElement};
use crate::report::Report;
use crate::scalar::Field;

/// A finite-dimensional module given by its four generator matrices.
///
/// `params` are the parameters of the untwisted module the generators came
/// from; `twist` records the cyclic relabelling applied on top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct ModuleRep<F> {
    pub dim: usize,
    pub params: ParamQuadruple<F>,
    pub twist: TwistElement,
    pub t: [Matrix<F>; 4],
    pub tinv: [Matrix<F>; 4],
    pub label: String,
}

impl<F: Field> ModuleRep<F> {
    /// Builds a module from generator matrices, computing the inverses.
    pub fn from_generators(
        t: [Matrix<F>; 4],
        params: ParamQuadruple<F>,
        twist: TwistElement,
        label: impl Into<String>,
    ) -> Result<Self> {
        let dim = t[0].rows();
        if t.iter().any(|m| !m.is_square() || m.rows() != dim) {
            return Err(Error::DimensionMismatch(
                "generators must be square of equal size".into(),
            ));
        }
        let tinv = [
            t[0].inverse()?,
            t[1].inverse()?,
            t[2].inverse()?,
            t[3].inverse()?,
        ];
        Ok(ModuleRep {
            dim,
            params,
            twist,
            t,
            tinv,
            label: label.into(),
        })
    }

    /// `X = t3 t0`.
    pub fn x(&self) -> Matrix<F> {
        &self.t[3] * &self.t[0]
    }

    /// `Y = t0 t1`.
    pub fn y(&self) -> Matrix<F> {
        &self.t[0] * &self.t[1]
    }

    pub fn x_inv(&self) -> Matrix<F> {
        &self.tinv[0] * &self.tinv[3]
    }

    pub fn y_inv(&self) -> Matrix<F> {
        &self.tinv[1] * &self.tinv[0]
    }

    /// `c_i = t_i + t_i^{-1}` as a matrix.
    pub fn c(&self, i: usize) -> Matrix<F> {
        &self.t[i] + &self.tinv[i]
    }

    /// The module with generators relabelled `t_i -> t_{i+e}`.
    pub fn twisted(&self, e: TwistElement) -> Self {
        let shift = |arr: &[Matrix<F>; 4]| {
            std::array::from_fn(|i| arr[(i + e.value() as usize) % 4].clone())
        };
        let twist = self.twist.compose(e);
        ModuleRep {
            dim: self.dim,
            params: self.params.clone(),
            twist,
            t: shift(&self.t),
            tinv: shift(&self.tinv),
            label: if twist == TwistElement::IDENTITY {
                base_label(&self.label).to_string()
            } else {
                format!("{}^{}", base_label(&self.label), twist)
            },
        }
    }
}

fn base_label(label: &str) -> &str {
    label.split('^').next().unwrap_or(label)
}

/// Checks the defining relations: inverses, scalar `c_i`, and
/// `t0 t1 t2 t3 = q^{-1}`.
pub fn verify_relations<F: Field>(m: &ModuleRep<F>) -> Report {
    let mut report = Report::new();
    let id = Matrix::identity(m.dim);
    for i in 0..4 {
        let left = &m.t[i] * &m.tinv[i];
        let right = &m.tinv[i] * &m.t[i];
        let name = format!("t{i} inverse");
        if left == id && right == id {
            report.pass(name);
        } else {
            report.fail(name, format!("t{i} tinv{i} - I = {:?}", &left - &id));
        }
    }
    for i in 0..4 {
        let c = m.c(i);
        let name = format!("c{i} scalar");
        match c.as_scalar() {
            Some(s) => report.push(name, true, Some(s.to_string())),
            None => report.fail(name, format!("c{i} = {c:?}")),
        }
    }
    let prod = &(&(&m.t[0] * &m.t[1]) * &m.t[2]) * &m.t[3];
    let target = Matrix::scalar(m.dim, m.params.q().recip());
    if prod == target {
        report.pass("t0 t1 t2 t3 = q^-1");
    } else {
        report.fail(
            "t0 t1 t2 t3 = q^-1",
            format!("difference {:?}", &prod - &target),
        );
    }
    report
}

/// The scalars by which `c0..c3` act.
pub fn central_character<F: Field>(m: &ModuleRep<F>) -> Result<[F; 4]> {
    let mut out: [Option<F>; 4] = Default::default();
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = Some(m.c(i).as_scalar().ok_or_else(|| {
            Error::Contract(format!("c{i} does not act as a scalar"))
        })?);
    }
    Ok(out.map(Option::unwrap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn running() -> ModuleRep<Rational> {
        make_e(&ParamQuadruple::even(r("2"), ["1/2", "1", "3", "1"].map(r), 1).unwrap()).unwrap()
    }

    #[test]
    fn twist_rotates_character() {
        let m = running();
        let base = central_character(&m).unwrap();
        assert_eq!(base, ["5/2", "2", "10/3", "2"].map(r));
        let t1 = m.twisted(TwistElement::new(1));
        let c = central_character(&t1).unwrap();
        assert_eq!(c, [1, 2, 3, 0].map(|i| base[i].clone()));
        assert!(verify_relations(&t1).all_passed());
        assert_eq!(t1.twist, TwistElement::new(1));
        assert_eq!(t1.twisted(TwistElement::new(3)).t, m.t);
    }

    #[test]
    fn fault_injection_flags_product_relation() {
        let m = running();
        let mut t = m.t.clone();
        t[2][(0, 0)] = t[2][(0, 0)].clone() + r("1");
        let bad = ModuleRep::from_generators(t, m.params.clone(), m.twist, "bad").unwrap();
        let report = verify_relations(&bad);
        let failed: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"t0 t1 t2 t3 = q^-1"), "{failed:?}");
        assert!(report.checks.iter().filter(|c| c.name.ends_with("inverse")).all(|c| c.passed));
    }

    #[test]
    fn non_scalar_character_is_contract_violation() {
        let m = running();
        let mut t = m.t.clone();
        t[1] = Matrix::diagonal(vec![r("1"), r("2")]);
        let bad = ModuleRep::from_generators(t, m.params.clone(), m.twist, "bad").unwrap();
        assert!(matches!(central_character(&bad), Err(Error::Contract(_))));
    }

    #[test]
    fn json_round_trip() {
        let m = running();
        let j = serde_json::to_value(&m).unwrap();
        for key in ["dim", "params", "twist", "t", "tinv", "label"] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
        let back: ModuleRep<Rational> = serde_json::from_value(j).unwrap();
        assert_eq!(back, m);
    }
}
