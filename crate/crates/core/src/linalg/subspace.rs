use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::scalar::Field;

/// A subspace of `F^n` held as a basis in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(
            vectors.iter().all(|v| v.len() == ambient),
            "spanning vector has the wrong length"
        );
        let e = Matrix::from_rows(vectors)
            .expect("uniform vector lengths")
            .rref();
        let basis = (0..e.rank).map(|i| e.reduced.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<F>> {
        self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::span(self.ambient, rows).dim() == self.dim()
    }

    /// Pivot column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect()
    }
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// A growing span that answers "does this vector enlarge the span?".
///
/// Each stored row is normalized at its pivot and vanishes at the pivots of
/// all earlier rows, so reducing a candidate against the rows in insertion
/// order leaves zero exactly when the candidate already lies in the span.
#[derive(Debug, Clone)]
pub struct IncrementalSpan<F> {
    ambient: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> IncrementalSpan<F> {
    pub fn new(ambient: usize) -> Self {
        IncrementalSpan {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Insert `v`; returns `true` when the span grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector has the wrong length");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    let cur = std::mem::replace(x, F::zero());
                    *x = cur - c.clone() * r.clone();
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let v = v.into_iter().map(|x| x * inv.clone()).collect();
        self.rows.push((p, v));
        true
    }
}
