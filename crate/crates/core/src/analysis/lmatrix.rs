use serde::{Deserialize, Serialize};

use super::criterion_o;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modrep::{make_e, make_o};
use crate::params::{ParamQuadruple, Parity, Sequence};
use crate::scalar::Field;
use crate::util::{ceil_half, floor_half, is_even, prod};

/// How an L-matrix was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `L_ij` read off as the `v0`-coefficient of `R S_i v_j`.
    OperatorProduct,
    /// The two-term recurrence seeded with the first column.
    Recurrence,
    ClosedForm,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::OperatorProduct, Route::Recurrence, Route::ClosedForm];
}

/// The lower-triangular matrix of `v0`-coefficients of `R S_i v_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct LMatrix<F> {
    pub d: usize,
    pub entries: Matrix<F>,
    pub route: Route,
}

impl<F: Field> LMatrix<F> {
    pub fn is_lower_triangular(&self) -> bool {
        let n = self.d + 1;
        (0..n).all(|i| (i + 1..n).all(|j| self.entries[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..=self.d).map(|i| self.entries[(i, i)].clone()).collect()
    }
}

/// Computes the L-matrix of `E` or `O` (by `p`'s parity) along one route.
///
/// For the odd family the first-column formula is only established under
/// the irreducibility conditions; when they fail the closed form is refused
/// and the recurrence is seeded from the operator route instead.
pub fn l_matrix<F: Field>(p: &ParamQuadruple<F>, route: Route) -> Result<LMatrix<F>> {
    let entries = match route {
        Route::OperatorProduct => operator_route(p)?,
        Route::Recurrence => {
            let seed = match p.parity() {
                Parity::Even => (0..=p.d()).map(|i| init_e(p, i as i64)).collect(),
                Parity::Odd if criterion_o(p)? => (0..=p.d()).map(|i| init_o(p, i as i64)).collect(),
                Parity::Odd => operator_route(p)?.column(0),
            };
            recurrence_route(p, seed)
        }
        Route::ClosedForm => {
            let n = p.d() + 1;
            let mut m = Matrix::zeros(n, n);
            let odd_ok = p.parity() == Parity::Even || criterion_o(p)?;
            if !odd_ok {
                return Err(Error::Contract(
                    "closed form for the odd family needs the irreducibility conditions".into(),
                ));
            }
            for i in 0..n {
                for j in 0..=i {
                    m[(i, j)] = match p.parity() {
                        Parity::Even => closed_e(p, i as i64, j as i64),
                        Parity::Odd => closed_o(p, i as i64, j as i64),
                    };
                }
            }
            m
        }
    };
    Ok(LMatrix {
        d: p.d(),
        entries,
        route,
    })
}

/// Every available route, checked for entrywise agreement.
pub fn l_matrix_all_routes<F: Field>(p: &ParamQuadruple<F>) -> Result<Vec<LMatrix<F>>> {
    let mut out: Vec<LMatrix<F>> = Vec::new();
    for route in Route::ALL {
        match l_matrix(p, route) {
            Ok(l) => out.push(l),
            Err(Error::Contract(_)) if route == Route::ClosedForm => continue,
            Err(e) => return Err(e),
        }
    }
    for l in &out[1..] {
        if l.entries != out[0].entries {
            return Err(Error::Internal(format!(
                "L-matrix routes disagree: {:?} gave {:?}, {:?} gave {:?}",
                out[0].route, out[0].entries, l.route, l.entries
            )));
        }
    }
    Ok(out)
}

/// The product formula for the diagonal entries `L_ii`.
pub fn l_matrix_diagonal<F: Field>(p: &ParamQuadruple<F>) -> Vec<F> {
    let d = p.d() as i64;
    let q = |e: i64| p.qp(e);
    let one = F::one;
    let rho = |i: i64| p.eval_sequence(Sequence::Rho, i);
    let phi = |i: i64| p.eval_sequence(Sequence::Phi, i);
    let psi = |i: i64| p.eval_sequence(Sequence::Psi, i);
    let [k0, k1, k2, _] = p.k().clone();
    (0..=d)
        .map(|i| match p.parity() {
            Parity::Even => {
                let fi = floor_half(i);
                q(fi * (d - 2 * fi - 1))
                    * prod(1, d - i, phi)
                    * prod(1, ceil_half(i), |h| rho(2 * h - 1))
                    * prod(1, fi, |h| rho(2 * (fi - h + 1)))
            }
            Parity::Odd => {
                let k12 = k1.square() * k2.square();
                let base = (-(q(d + floor_half(i)) * k12)).pow(ceil_half(i))
                    * prod(1, floor_half(i), |h| (one() - q(2 * h)).recip())
                    * prod(1, i, rho)
                    * prod(1, d - i, |h| psi(d - h + 1));
                let case = if is_even(i) {
                    prod(1, i / 2, |h| q(1) - q(2 * h - i - 1))
                } else {
                    -(k0.square() * q(i + 1)) * prod(1, (i - 1) / 2, |h| one() - q(2 * h - i - 1))
                };
                base * case
            }
        })
        .collect()
}

/// `prod_{h=1}^{d} (1 - a q^{shift(h)} Z^{sign(h)})`-style products.
fn rung_product<F: Field>(
    n: usize,
    hs: std::ops::RangeInclusive<i64>,
    coeff: impl Fn(i64) -> F,
    positive: impl Fn(i64) -> bool,
    z: &Matrix<F>,
    z_inv: &Matrix<F>,
) -> Matrix<F> {
    let id = Matrix::identity(n);
    hs.fold(id.clone(), |acc, h| {
        let power = if positive(h) { z } else { z_inv };
        let factor = &id - &power.scale(&coeff(h));
        &acc * &factor
    })
}

fn operator_route<F: Field>(p: &ParamQuadruple<F>) -> Result<Matrix<F>> {
    let m = match p.parity() {
        Parity::Even => make_e(p)?,
        Parity::Odd => make_o(p)?,
    };
    let [k0, k1, k2, k3] = p.k().clone();
    let d = p.d() as i64;
    let n = m.dim;
    let (x, xi, y, yi) = (m.x(), m.x_inv(), m.y(), m.y_inv());
    let r = match p.parity() {
        Parity::Even => {
            let a = k0.clone() * k3.clone();
            rung_product(n, 1..=d, |h| a.clone() * p.qp(2 * ceil_half(h)), |h| !is_even(h), &x, &xi)
        }
        Parity::Odd => {
            let a = (k0.clone() * k3.clone()).recip();
            rung_product(n, 1..=d, |h| a.clone() * p.qp(-2 * ceil_half(h)), is_even, &x, &xi)
        }
    };
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        let len = d - i as i64;
        let s = match p.parity() {
            Parity::Even => {
                let a = k0.clone() * k1.recip();
                rung_product(n, 1..=len, |h| a.clone() * p.qp(2 * ceil_half(h - 1)), is_even, &y, &yi)
            }
            Parity::Odd => {
                let a = (k2.clone() * k3.clone()).recip();
                rung_product(n, 1..=len, |h| a.clone() * p.qp(1 - 2 * ceil_half(h)), is_even, &y, &yi)
            }
        };
        let rs = &r * &s;
        for j in 0..n {
            let col = rs.column(j);
            if col[1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Internal(format!(
                    "R S_{i} v_{j} is not a multiple of v0: {col:?}"
                )));
            }
            out[(i, j)] = col[0].clone();
        }
    }
    Ok(out)
}

fn recurrence_route<F: Field>(p: &ParamQuadruple<F>, seed: Vec<F>) -> Matrix<F> {
    let n = p.d() + 1;
    let d = p.d() as i64;
    let [k0, k1, _, _] = p.k().clone();
    let one = F::one();
    let mut l = Matrix::zeros(n, n);
    for (i, s) in seed.into_iter().enumerate() {
        l[(i, 0)] = s;
    }
    for j in 1..n {
        for i in j..n {
            let (ie, je) = (i as i64, j as i64);
            let (a, b, c) = (l[(i - 1, j - 1)].clone(), l[(i, j - 1)].clone(), l[(i - 1, j)].clone());
            let same = is_even(ie - je);
            l[(i, j)] = match (p.parity(), same) {
                (Parity::Even, true) => k1.square() * p.qp(ie + je - d - 1) * (a - b.clone()) + b,
                (Parity::Even, false) => (one.clone() - p.qp(je - ie - 1)) * b + c - a,
                (Parity::Odd, true) => {
                    (one.clone() - k0.square() * k1.square() * p.qp(ie + je)) * b + c - a
                }
                (Parity::Odd, false) => p.qp(je - ie - 1) * (a - b.clone()) + b,
            };
        }
    }
    l
}

fn init_e<F: Field>(p: &ParamQuadruple<F>, i: i64) -> F {
    let d = p.d() as i64;
    let one = F::one;
    let k3 = p.k()[3].clone();
    prod(1, floor_half(i), |h| one() - p.qp(d - 2 * h + 1))
        * prod(1, ceil_half(i), |h| one() - k3.square() * p.qp(2 - 2 * h))
        * prod(1, d - i, |h| p.eval_sequence(Sequence::Phi, h))
}

fn init_o<F: Field>(p: &ParamQuadruple<F>, i: i64) -> F {
    let d = p.d() as i64;
    let one = F::one;
    let k12 = p.k()[1].square() * p.k()[2].square();
    prod(0, floor_half(i - 1), |h| one() - p.qp(2 * h - d))
        * prod(1, floor_half(i), |h| one() - k12.clone() * p.qp(d + 2 * h))
        * prod(1, d - i, |h| p.eval_sequence(Sequence::Psi, d - h + 1))
}

fn closed_e<F: Field>(p: &ParamQuadruple<F>, i: i64, j: i64) -> F {
    let d = p.d() as i64;
    let one = F::one;
    let k3 = p.k()[3].clone();
    let rho = |h: i64| p.eval_sequence(Sequence::Rho, h);
    let k3_factor = |hi: i64| prod(1, hi, |h| one() - k3.square() * p.qp(2 - 2 * h));
    let (fi, fj) = (floor_half(i), floor_half(j));
    let base = p.qp(fj * (d - 4 * fi + 2 * fj - 1))
        * prod(1, floor_half(i - j), |h| one() - p.qp(d - 2 * h + 1))
        * prod(1, d - i, |h| p.eval_sequence(Sequence::Phi, h))
        * prod(1, ceil_half(j), |h| rho(2 * h - 1))
        * prod(1, fj, |h| rho(2 * (fi - h + 1)));
    if !is_even(i) || is_even(j) {
        base * k3_factor(ceil_half(i - j))
    } else {
        base * p.qp(d - 2 * i + 2 * j - 1) * rho(i - j + 1) * k3_factor(floor_half(i - j))
    }
}

fn closed_o<F: Field>(p: &ParamQuadruple<F>, i: i64, j: i64) -> F {
    let d = p.d() as i64;
    let one = F::one;
    let q = |e: i64| p.qp(e);
    let [k0, k1, k2, k3] = p.k().clone();
    let k12 = k1.square() * k2.square();
    let cj = ceil_half(j);
    let base = (-(q(d + i - cj) * k12.clone())).pow(cj)
        * prod(1, floor_half(j), |h| (one() - q(2 * h)).recip())
        * prod(cj, floor_half(i - 1), |h| one() - q(2 * h - d))
        * prod(1, floor_half(i) - cj, |h| one() - k12.clone() * q(d + 2 * h))
        * prod(1, j, |h| p.eval_sequence(Sequence::Rho, h))
        * prod(1, d - i, |h| p.eval_sequence(Sequence::Psi, d - h + 1));
    let tail = |hi: i64| prod(1, hi, |h| one() - q(2 * h - i - 1));
    let case = match (is_even(i), is_even(j)) {
        (false, false) if i > j => {
            (k3.square().recip() * q(j - d - 1) - k0.square() * q(j + 1) - q(j - i) + one())
                * tail((j - 1) / 2)
        }
        (false, false) => -(k0.square() * q(i + 1)) * tail((i - 1) / 2),
        (false, true) => tail(j / 2),
        (true, _) => prod(1, cj, |h| q(1) - q(2 * h - i - 1)),
    };
    base * case
}
