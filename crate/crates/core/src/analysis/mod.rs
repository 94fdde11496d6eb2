//! Irreducibility (closed-form criteria and a Burnside closure oracle),
//! L-matrices, twisting, intertwiners and classification.

mod classify;
mod lmatrix;

pub use classify::{classify, find_intertwiner, ClassificationResult, IntertwinerOutcome};
pub use lmatrix::{l_matrix, l_matrix_all_routes, l_matrix_diagonal, LMatrix, Route};

use crate::error::Result;
use crate::linalg::{span_closure, Matrix};
use crate::modrep::{central_character, ModuleRep};
use crate::params::{ParamQuadruple, Parity, TwistElement};
use crate::params::ep_products;
use crate::scalar::Field;

/// The irreducibility conditions for `p`'s family that fail, one entry
/// per violated `(condition, index)` pair.
pub fn criterion_violations<F: Field>(p: &ParamQuadruple<F>) -> Vec<String> {
    let d = p.d() as i64;
    let mut out = Vec::new();
    match p.parity() {
        Parity::Even => {
            for i in (2..d).step_by(2) {
                if p.qp(i).is_one() {
                    out.push(format!("q^{i} = 1"));
                }
                if p.k()[0].square() == p.qp(-i) {
                    out.push(format!("k0^2 = q^-{i}"));
                }
            }
            let names = ["k0k1k2k3", "k0k1^-1k2k3", "k0k1k2^-1k3", "k0k1k2k3^-1"];
            let products = ep_products(p);
            for i in (1..=d).step_by(2) {
                let t = p.qp(-i);
                for (name, x) in names.iter().zip(&products) {
                    if *x == t {
                        out.push(format!("{name} = q^-{i}"));
                    }
                }
            }
        }
        Parity::Odd => {
            for i in (2..=d).step_by(2) {
                if p.qp(i).is_one() {
                    out.push(format!("q^{i} = 1"));
                }
                for (j, k) in p.k().iter().enumerate() {
                    if k.square() == p.qp(-i) {
                        out.push(format!("k{j}^2 = q^-{i}"));
                    }
                }
            }
        }
    }
    out
}

/// Closed-form irreducibility criterion for `E`.
pub fn criterion_e<F: Field>(p: &ParamQuadruple<F>) -> Result<bool> {
    p.require(Parity::Even)?;
    Ok(criterion_violations(p).is_empty())
}

/// Closed-form irreducibility criterion for `O`.
pub fn criterion_o<F: Field>(p: &ParamQuadruple<F>) -> Result<bool> {
    p.require(Parity::Odd)?;
    Ok(criterion_violations(p).is_empty())
}

/// Criterion for whichever family `p` belongs to.
pub fn criterion<F: Field>(p: &ParamQuadruple<F>) -> Result<bool> {
    match p.parity() {
        Parity::Even => criterion_e(p),
        Parity::Odd => criterion_o(p),
    }
}

/// Dimension of the matrix algebra generated by `t0..t3`.
pub fn closure_dimension<F: Field>(m: &ModuleRep<F>) -> Result<usize> {
    span_closure(&m.t)
}

/// Absolute irreducibility: the generators span all `n x n` matrices.
pub fn burnside_irreducible<F: Field>(m: &ModuleRep<F>) -> Result<bool> {
    Ok(closure_dimension(m)? == m.dim * m.dim)
}

/// The module with `t_i` replaced by `t_{i+e}`.
pub fn twist<F: Field>(m: &ModuleRep<F>, e: TwistElement) -> ModuleRep<F> {
    m.twisted(e)
}

/// `(det t0, det t1, det t2, det t3)`.
pub fn det_fingerprint<F: Field>(m: &ModuleRep<F>) -> Result<[F; 4]> {
    Ok([m.t[0].det()?, m.t[1].det()?, m.t[2].det()?, m.t[3].det()?])
}

/// Both roots of `x^2 - c x + 1`, if they lie in the field.
pub(crate) fn roots_of_character<F: Field>(c: &F) -> Option<[F; 2]> {
    let two = F::from_int(2);
    let disc = c.square() - F::from_int(4);
    let s = disc.sqrt()?;
    Some([
        (c.clone() + s.clone()) / two.clone(),
        (c.clone() - s) / two,
    ])
}

/// A common eigenvector of `t_i` and `t_j`, with eigenvalues drawn from
/// the roots `k, k^{-1}` of the central character.
pub fn simultaneous_eigenvector<F: Field>(m: &ModuleRep<F>, pair: (usize, usize)) -> Option<Vec<F>> {
    let chi = central_character(m).ok()?;
    let (i, j) = pair;
    let n = m.dim;
    let eigenspace = |g: usize, lambda: &F| -> Matrix<F> { &m.t[g] - &Matrix::scalar(n, lambda.clone()) };
    for a in roots_of_character(&chi[i])? {
        for b in roots_of_character(&chi[j])? {
            let stacked = eigenspace(i, &a).vstack(&eigenspace(j, &b)).ok()?;
            if let Some(v) = stacked.kernel().into_basis().into_iter().next() {
                return Some(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::modrep::{make_e, make_o};
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn even(k: [&str; 4], d: usize) -> ParamQuadruple<Rational> {
        ParamQuadruple::even(r("2"), k.map(r), d).unwrap()
    }

    fn odd(k: [&str; 4], d: usize) -> ParamQuadruple<Rational> {
        ParamQuadruple::odd(r("2"), k.map(r), d).unwrap()
    }

    #[test]
    fn criterion_examples() {
        assert!(criterion_e(&even(["1/2", "1", "3", "1"], 1)).unwrap());
        assert!(!criterion_e(&even(["1/2", "1", "1", "1"], 1)).unwrap());
        assert!(criterion_o(&odd(["1", "1", "1", "1/2"], 0)).unwrap());
        assert!(!criterion_o(&odd(["1", "1", "1/2", "1/4"], 2)).unwrap());
        assert!(matches!(criterion_o(&even(["1/2", "1", "3", "1"], 1)), Err(Error::Contract(_))));
        assert_eq!(criterion_violations(&even(["1/2", "2", "3", "1/6"], 1)), vec!["k0k1k2k3 = q^-1"]);
        assert_eq!(criterion_violations(&odd(["1", "1", "1/2", "1/4"], 2)), vec!["k2^2 = q^-2"]);
    }

    #[test]
    fn burnside_examples() {
        let m = make_e(&even(["1/2", "1", "3", "1"], 1)).unwrap();
        assert_eq!(closure_dimension(&m).unwrap(), 4);
        let bad = make_e(&even(["1/2", "1", "1", "1"], 1)).unwrap();
        assert!(closure_dimension(&bad).unwrap() < 4);
        assert!(!burnside_irreducible(&bad).unwrap());
        let one = make_o(&odd(["1", "1", "1", "1/2"], 0)).unwrap();
        assert!(burnside_irreducible(&one).unwrap());
    }

    #[test]
    fn fingerprints() {
        let m = make_e(&even(["1/2", "1", "3", "1"], 1)).unwrap();
        assert_eq!(det_fingerprint(&m).unwrap(), ["1/4", "1", "1", "1"].map(r));
        let t = twist(&m, TwistElement::new(1));
        assert_eq!(det_fingerprint(&t).unwrap(), ["1", "1", "1", "1/4"].map(r));
        assert_eq!(twist(&m, TwistElement::new(0)), m);
        let o = make_o(&odd(["1", "1", "1", "1/2"], 0)).unwrap();
        assert_eq!(det_fingerprint(&o).unwrap(), ["1", "1", "1", "1/2"].map(r));
        let o = make_o(&odd(["1", "1", "3", "1/24"], 2)).unwrap();
        assert_eq!(det_fingerprint(&o).unwrap(), ["1", "1", "3", "1/24"].map(r));
    }

    #[test]
    fn eigenvector_examples() {
        let m = make_e(&even(["1/2", "1", "3", "1"], 1)).unwrap();
        let v = simultaneous_eigenvector(&m, (3, 0)).unwrap();
        assert!(v[1].is_zero() && !v[0].is_zero());
        let o = make_o(&odd(["1", "1", "1", "1/2"], 0)).unwrap();
        for pair in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            assert!(simultaneous_eigenvector(&o, pair).is_some());
        }
    }
}
