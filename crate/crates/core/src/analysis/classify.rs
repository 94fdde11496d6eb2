use serde::{Deserialize, Serialize};

use super::{burnside_irreducible, det_fingerprint, roots_of_character};
use crate::error::{Error, Result};
use crate::linalg::{solve_sylvester_homogeneous, unvec, Matrix};
use crate::modrep::{central_character, make_e, make_o, verify_relations, ModuleRep};
use crate::params::{canonical_orbit_rep, ParamQuadruple, Parity, TwistElement};
use crate::scalar::Field;

/// Result of an intertwiner search.
#[derive(Debug, Clone, PartialEq)]
pub enum IntertwinerOutcome<F> {
    /// An invertible `T` with `T a(t_i) = b(t_i) T` for all `i`.
    Found(Matrix<F>),
    /// No invertible intertwiner exists.
    None,
    /// The solution space has dimension at least two and none of the tried
    /// combinations was invertible.
    Indeterminate,
}

impl<F> IntertwinerOutcome<F> {
    pub fn found(&self) -> Option<&Matrix<F>> {
        match self {
            IntertwinerOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

const COMBINATIONS: i64 = 32;

/// Searches for an invertible intertwiner from `a` to `b`.
pub fn find_intertwiner<F: Field>(a: &ModuleRep<F>, b: &ModuleRep<F>) -> Result<IntertwinerOutcome<F>> {
    if a.dim != b.dim {
        return Ok(IntertwinerOutcome::None);
    }
    let n = a.dim;
    let pairs: Vec<_> = (0..4).map(|i| (a.t[i].clone(), b.t[i].clone())).collect();
    let space = solve_sylvester_homogeneous(&pairs)?;
    let basis = space.basis();
    let invertible = |v: &[F]| -> Option<Matrix<F>> {
        let t = unvec(v, n, n);
        t.det().ok().filter(|d| !d.is_zero()).map(|_| t)
    };
    match basis.len() {
        0 => Ok(IntertwinerOutcome::None),
        1 => Ok(invertible(&basis[0]).map_or(IntertwinerOutcome::None, IntertwinerOutcome::Found)),
        _ => {
            for v in basis {
                if let Some(t) = invertible(v) {
                    return Ok(IntertwinerOutcome::Found(t));
                }
            }
            for s in 1..=COMBINATIONS {
                let mut v = vec![F::zero(); n * n];
                for (j, b) in basis.iter().enumerate() {
                    let c = F::from_int(1 + (s * (j as i64 + 1) * (j as i64 + 2)) % 13);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = x.clone() + c.clone() * y.clone();
                    }
                }
                if let Some(t) = invertible(&v) {
                    return Ok(IntertwinerOutcome::Found(t));
                }
            }
            Ok(IntertwinerOutcome::Indeterminate)
        }
    }
}

/// Classification coordinates of an irreducible module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct ClassificationResult<F> {
    pub twist: TwistElement,
    pub params: ParamQuadruple<F>,
    pub parity: Parity,
    /// Intertwiner from the input module to the reconstructed reference.
    pub certificate: Matrix<F>,
}

/// Recovers `(twist, canonical parameters)` for an even-dimensional module,
/// or the parameter quadruple for an odd-dimensional one, and certifies the
/// answer with an explicit isomorphism.
pub fn classify<F: Field>(m: &ModuleRep<F>) -> Result<ClassificationResult<F>> {
    if !verify_relations(m).all_passed() {
        return Err(Error::Contract("module fails the defining relations".into()));
    }
    if m.dim == 0 || !burnside_irreducible(m)? {
        return Err(Error::Contract("module is reducible".into()));
    }
    let q = m.params.q().clone();
    let d = m.dim - 1;
    let fp = det_fingerprint(m)?;
    let (twist, params, reference) = match Parity::of_dimension(m.dim) {
        Parity::Even => {
            let target = q.pow(-(d as i64) - 1);
            let hits: Vec<usize> = (0..4).filter(|&i| fp[i] == target).collect();
            let [pos] = hits[..] else {
                return Err(Error::Classification(format!(
                    "determinant fingerprint {fp:?} does not single out a twist"
                )));
            };
            let untwisted = m.twisted(TwistElement::new(pos as i64));
            let chi = central_character(&untwisted)?;
            let root = |i: usize| {
                roots_of_character(&chi[i]).ok_or_else(|| {
                    Error::Classification(format!("c{i} = {} has no root in the field", chi[i]))
                })
            };
            let k0 = root(0)?
                .into_iter()
                .find(|k| k.square() == target)
                .ok_or_else(|| Error::Classification("no root of c0 squares to q^{-d-1}".into()))?;
            let k = [k0, root(1)?[0].clone(), root(2)?[0].clone(), root(3)?[0].clone()];
            let canon = canonical_orbit_rep(&ParamQuadruple::even(q, k, d)?)?;
            let eps = TwistElement::new(-(pos as i64));
            let reference = make_e(&canon)?.twisted(eps);
            (eps, canon, reference)
        }
        Parity::Odd => {
            let p = ParamQuadruple::odd(q, fp, d)?;
            let reference = make_o(&p)?;
            (TwistElement::IDENTITY, p, reference)
        }
    };
    match find_intertwiner(m, &reference)? {
        IntertwinerOutcome::Found(certificate) => Ok(ClassificationResult {
            twist,
            parity: params.parity(),
            params,
            certificate,
        }),
        other => Err(Error::Classification(format!(
            "reference module is not isomorphic to the input ({})",
            match other {
                IntertwinerOutcome::Indeterminate => "search indeterminate",
                _ => "no invertible intertwiner",
            }
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{orbit_act, SignTriple};
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn running() -> ParamQuadruple<Rational> {
        ParamQuadruple::even(r("2"), ["1/2", "1", "3", "1"].map(r), 1).unwrap()
    }

    #[test]
    fn schur_on_irreducible() {
        let m = make_e(&running()).unwrap();
        let pairs: Vec<_> = (0..4).map(|i| (m.t[i].clone(), m.t[i].clone())).collect();
        assert_eq!(solve_sylvester_homogeneous(&pairs).unwrap().dim(), 1);
        let t = find_intertwiner(&m, &m).unwrap();
        assert!(t.found().unwrap().as_scalar().is_some());
    }

    #[test]
    fn k2_inversion_and_twist_separation() {
        let p = running();
        let a = make_e(&p).unwrap();
        let b = make_e(&orbit_act(&p, SignTriple::new([1, -1, 1])).unwrap()).unwrap();
        let t = find_intertwiner(&a, &b).unwrap();
        let t = t.found().expect("isomorphic");
        for i in 0..4 {
            assert_eq!(t * &a.t[i], &b.t[i] * t);
        }
        let twisted = a.twisted(TwistElement::new(1));
        assert_eq!(find_intertwiner(&a, &twisted).unwrap(), IntertwinerOutcome::None);
    }

    #[test]
    fn classify_round_trips() {
        let p = running();
        for e in TwistElement::all() {
            let m = make_e(&p).unwrap().twisted(e);
            let c = classify(&m).unwrap();
            assert_eq!(c.twist, e);
            assert_eq!(c.params, canonical_orbit_rep(&p).unwrap());
        }
        let p = ParamQuadruple::odd(r("2"), ["1", "1", "3", "1/24"].map(r), 2).unwrap();
        let c = classify(&make_o(&p).unwrap()).unwrap();
        assert_eq!(c.params, p);
        assert_eq!(c.twist, TwistElement::IDENTITY);
    }

    #[test]
    fn classify_rejects_reducible() {
        let p = ParamQuadruple::even(r("2"), ["1/2", "1", "1", "1"].map(r), 1).unwrap();
        assert!(matches!(classify(&make_e(&p).unwrap()), Err(Error::Contract(_))));
    }
}
