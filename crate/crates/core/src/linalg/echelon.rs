use super::{Matrix, Subspace};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    /// Reduced row-echelon form. Any nonzero entry is an admissible pivot.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows(), m.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            swap_rows(&mut m, r, p);
            let inv = m[(r, c)].recip();
            for j in c..cols {
                let x = std::mem::replace(&mut m[(r, j)], F::zero());
                m[(r, j)] = x * inv.clone();
            }
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let x = std::mem::replace(&mut m[(i, j)], F::zero());
                    m[(i, j)] = x - factor.clone() * m[(r, j)].clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let e = self.rref();
        let cols = self.cols();
        let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); cols];
                v[f] = F::one();
                for (row, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.reduced[(row, f)].clone();
                }
                v
            })
            .collect();
        Subspace::span(cols, basis)
    }

    /// Determinant by pivoting elimination.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        let n = self.rows();
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                swap_rows(&mut m, c, p);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            let inv = pivot.recip();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    if m[(c, j)].is_zero() {
                        continue;
                    }
                    let x = std::mem::replace(&mut m[(i, j)], F::zero());
                    m[(i, j)] = x - factor.clone() * m[(c, j)].clone();
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse via Gauss-Jordan on `[M | I]`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        let n = self.rows();
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let e = aug.rref();
        if e.rank < n || e.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e.reduced[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

fn swap_rows<F: Field>(m: &mut Matrix<F>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = x;
    }
}
