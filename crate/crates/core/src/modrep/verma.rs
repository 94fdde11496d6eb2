use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::params::{HeckeParams, Sequence};
use crate::report::Report;
use crate::scalar::Field;
use crate::util::{ceil_half, is_even};

/// A finitely supported vector in the basis `m_0, m_1, ...` of `M`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct SparseVec<F>(BTreeMap<usize, F>);

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec(BTreeMap::new())
    }

    /// The basis vector `m_i`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(i, F::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.0.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &F)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn add_term(&mut self, i: usize, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.0.remove(&i) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(i, sum);
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (i, x) in self.terms() {
            out.add_term(i, x.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, x) in other.terms() {
            out.add_term(i, -x.clone());
        }
        out
    }

    fn dense(&self, len: usize) -> Vec<F> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    fn from_dense(v: Vec<F>) -> Self {
        let mut out = Self::zero();
        for (i, c) in v.into_iter().enumerate() {
            out.add_term(i, c);
        }
        out
    }
}

/// An operator of the algebra applied to `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VermaOp {
    T(usize),
    TInv(usize),
    X,
    Y,
    XInv,
    YInv,
}

/// Extra indices beyond the support kept when solving for an inverse.
const SLACK: usize = 4;

/// `t_g m_i` as a list of `(index, coefficient)` terms.
fn generator_on_basis<F: Field>(g: usize, i: usize, p: &HeckeParams<F>) -> Vec<(usize, F)> {
    let [k0, k1, k2, k3] = &p.k;
    let e = i as i64;
    let rho = || p.sequence(Sequence::Rho, e);
    let k013 = || k0.clone() * k1.clone() * k3.clone();
    match (g, i, is_even(e)) {
        (0, 0, _) => vec![(0, k0.clone())],
        (0, _, true) => vec![
            (i - 1, k0.recip() * p.qp(-e) * rho()),
            (i, k0.clone() + k0.recip() - k0.recip() * p.qp(-e)),
        ],
        (0, _, false) => {
            let a = k0.recip() * p.qp(-e - 1);
            vec![(i, a.clone()), (i + 1, -a)]
        }
        (1, 0, _) => vec![(0, k1.clone()), (1, k1.recip())],
        (1, _, true) => vec![
            (i - 1, -k1.clone() * rho()),
            (i, k1.clone()),
            (i + 1, k1.recip()),
        ],
        (1, _, false) => vec![(i, k1.recip())],
        (2, _, true) => {
            let a = k013().recip() * p.qp(-e - 1);
            vec![(i, a.clone()), (i + 1, -a)]
        }
        (2, _, false) => vec![
            (i - 1, rho() / (k013() * p.qp(e))),
            (i, k2.clone() + k2.recip() - k013().recip() * p.qp(-e)),
        ],
        (3, _, true) => vec![(i, k3.clone())],
        (3, _, false) => vec![
            (i - 1, -k3.recip() * rho()),
            (i, k3.recip()),
            (i + 1, k3.clone()),
        ],
        _ => panic!("generator index {g} out of range"),
    }
}

fn apply_generator<F: Field>(g: usize, v: &SparseVec<F>, p: &HeckeParams<F>) -> SparseVec<F> {
    let mut out = SparseVec::zero();
    for (i, c) in v.terms() {
        for (j, a) in generator_on_basis(g, i, p) {
            out.add_term(j, a * c.clone());
        }
    }
    out
}

/// Solves `t_g x = v` on a finite window of indices and checks the answer
/// against the untruncated action.
fn apply_inverse<F: Field>(g: usize, v: &SparseVec<F>, p: &HeckeParams<F>) -> SparseVec<F> {
    let Some(top) = v.max_index() else {
        return SparseVec::zero();
    };
    let mut window = top + 2 + SLACK + 1;
    loop {
        let mut a = Matrix::<F>::zeros(window, window);
        for j in 0..window {
            for (i, c) in generator_on_basis(g, j, p) {
                if i < window {
                    a[(i, j)] = c;
                }
            }
        }
        if let Ok(inv) = a.inverse() {
            let x = SparseVec::from_dense(inv.apply(&v.dense(window)));
            if apply_generator(g, &x, p) == *v {
                return x;
            }
        }
        window += 2;
        assert!(window < top + 64, "banded inverse did not converge");
    }
}

/// Applies an operator to a finitely supported vector of `M`.
///
/// Every generator maps `m_i` into the span of `m_{i-1}, m_i, m_{i+1}`, so
/// the image is again finitely supported. `M` exists for arbitrary nonzero
/// parameters, hence the unconstrained [`HeckeParams`].
pub fn verma_apply<F: Field>(op: VermaOp, v: &SparseVec<F>, p: &HeckeParams<F>) -> SparseVec<F> {
    match op {
        VermaOp::T(g) => apply_generator(g, v, p),
        VermaOp::TInv(g) => apply_inverse(g, v, p),
        VermaOp::X => apply_generator(3, &apply_generator(0, v, p), p),
        VermaOp::Y => apply_generator(0, &apply_generator(1, v, p), p),
        VermaOp::XInv => apply_inverse(0, &apply_inverse(3, v, p), p),
        VermaOp::YInv => apply_inverse(1, &apply_inverse(0, v, p), p),
    }
}

/// Both ladder identities of `M` on `m_0..=m_max`.
pub fn verma_ladder_check<F: Field>(p: &HeckeParams<F>, max: usize) -> Report {
    let mut report = Report::new();
    let [k0, k1, _, k3] = p.k.clone();
    for i in 0..=max {
        let e = i as i64;
        let m = SparseVec::basis(i);
        let (fwd, back) = if is_even(e) {
            (VermaOp::XInv, VermaOp::YInv)
        } else {
            (VermaOp::X, VermaOp::Y)
        };
        let s = p.qp(2 * ceil_half(e));

        let got = m.sub(&verma_apply(fwd, &m, p).scale(&(k0.clone() * k3.clone() * s.clone())));
        let want = if i == 0 {
            SparseVec::zero()
        } else {
            SparseVec::basis(i - 1).scale(&p.sequence(Sequence::Rho, e))
        };
        report.push(format!("M X ladder at m{i}"), got == want, (got != want).then(|| format!("{got:?}")));

        let got = m.sub(&verma_apply(back, &m, p).scale(&(k0.clone() * k1.clone() * s)));
        let want = SparseVec::basis(i + 1);
        report.push(format!("M Y ladder at m{i}"), got == want, (got != want).then(|| format!("{got:?}")));
    }
    report
}
