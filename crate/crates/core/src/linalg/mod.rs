//! Dense exact linear algebra: echelon forms, kernels, determinants,
//! homogeneous Sylvester systems and matrix-algebra span closure.

mod echelon;
mod matrix;
mod subspace;

use std::collections::VecDeque;

pub use echelon::Echelon;
pub use matrix::Matrix;
pub use subspace::{IncrementalSpan, Subspace};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Reduced row-echelon form and rank.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, usize) {
    let e = m.rref();
    (e.reduced, e.rank)
}

pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.kernel()
}

pub fn det<F: Field>(m: &Matrix<F>) -> Result<F> {
    m.det()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    m.inverse()
}

/// All `m x n` matrices `T` with `T A_i = B_i T` for every pair.
///
/// `T` is vectorized row-major, so coordinate `r * n + c` of a returned
/// basis vector is `T[r][c]`. Use [`unvec`] to turn one back into a matrix.
pub fn solve_sylvester_homogeneous<F: Field>(pairs: &[(Matrix<F>, Matrix<F>)]) -> Result<Subspace<F>> {
    let Some((a0, b0)) = pairs.first() else {
        return Err(Error::DimensionMismatch("no equations given".into()));
    };
    let (n, m) = (a0.rows(), b0.rows());
    for (a, b) in pairs {
        if !a.is_square() || !b.is_square() || a.rows() != n || b.rows() != m {
            return Err(Error::DimensionMismatch(format!(
                "intertwiner equations need square A of size {n} and B of size {m}"
            )));
        }
    }
    let unknowns = m * n;
    let mut system = Matrix::<F>::zeros(pairs.len() * unknowns, unknowns);
    for (k, (a, b)) in pairs.iter().enumerate() {
        // Row (r, c): sum_l T[r][l] A[l][c] - sum_l B[r][l] T[l][c] = 0.
        for r in 0..m {
            for c in 0..n {
                let eq = k * unknowns + r * n + c;
                for l in 0..n {
                    let x = system[(eq, r * n + l)].clone();
                    system[(eq, r * n + l)] = x + a[(l, c)].clone();
                }
                for l in 0..m {
                    let x = system[(eq, l * n + c)].clone();
                    system[(eq, l * n + c)] = x - b[(r, l)].clone();
                }
            }
        }
    }
    Ok(system.kernel())
}

/// Reshape a row-major vectorized matrix.
pub fn unvec<F: Field>(v: &[F], rows: usize, cols: usize) -> Matrix<F> {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    Matrix::from_rows(v.chunks(cols).map(<[F]>::to_vec).collect()).expect("uniform chunks")
}

/// Dimension of the unital algebra generated by `gens`.
///
/// Seeds the span with `I` and left-multiplies every newly inserted element
/// by each generator until nothing new appears.
pub fn span_closure<F: Field>(gens: &[Matrix<F>]) -> Result<usize> {
    let n = match gens.first() {
        Some(g) => g.rows(),
        None => return Ok(1),
    };
    if gens.iter().any(|g| !g.is_square() || g.rows() != n) {
        return Err(Error::DimensionMismatch(
            "span closure needs square generators of equal size".into(),
        ));
    }
    if n == 0 {
        return Ok(0);
    }
    let cap = n * n;
    let mut span = IncrementalSpan::new(cap);
    let mut queue = VecDeque::new();
    let id = Matrix::identity(n);
    span.insert(id.entries().to_vec());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g * &x;
            if span.insert(y.entries().to_vec()) {
                if span.dim() > cap {
                    return Err(Error::Internal("span closure exceeded n^2".into()));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(span.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(rref(&id), (id.clone(), 3));
        assert_eq!(rref(&m(&[&[1, 1], &[1, 1]])), (m(&[&[1, 1], &[0, 0]]), 1));
        let z = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[Rational::from(1), Rational::from(-1)]));
        assert_eq!(kernel(&Matrix::<Rational>::identity(3)).dim(), 0);
        assert_eq!(kernel(&Matrix::<Rational>::zeros(2, 2)), Subspace::full(2));
    }

    #[test]
    fn det_and_inverse_examples() {
        assert_eq!(det(&Matrix::<Rational>::identity(4)).unwrap(), Rational::from(1));
        let t3 = Matrix::from_rows(vec![vec![r("1"), r("4/3")], vec![r("0"), r("1")]]).unwrap();
        assert_eq!(det(&t3).unwrap(), r("1"));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&swap).unwrap(), r("-1"));
        assert_eq!(inverse(&swap).unwrap(), swap);
        assert_eq!(inverse(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn sylvester_examples() {
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(solve_sylvester_homogeneous(&[(id.clone(), id)]).unwrap().dim(), 4);
        let d = m(&[&[1, 0], &[0, 2]]);
        let sol = solve_sylvester_homogeneous(&[(d.clone(), d)]).unwrap();
        assert_eq!(sol.dim(), 2);
        let e11 = [1, 0, 0, 0].map(Rational::from);
        let e22 = [0, 0, 0, 1].map(Rational::from);
        assert!(sol.contains(&e11) && sol.contains(&e22));
    }

    #[test]
    fn sylvester_rectangular_solutions_resubstitute() {
        // A is 2x2, B is 3x3; T is 3x2.
        let a = m(&[&[2, 1], &[0, 3]]);
        let b = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        let sol = solve_sylvester_homogeneous(&[(a.clone(), b.clone())]).unwrap();
        assert_eq!(sol.dim(), 2);
        for v in sol.basis() {
            let t = unvec(v, 3, 2);
            assert_eq!(&t * &a, &b * &t);
        }
    }

    #[test]
    fn sylvester_rejects_mismatched_sizes() {
        let a = Matrix::<Rational>::identity(2);
        let b = Matrix::<Rational>::identity(3);
        let pairs = [(a.clone(), b), (a.clone(), a)];
        assert!(matches!(
            solve_sylvester_homogeneous(&pairs),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn span_closure_examples() {
        assert_eq!(span_closure(&[Matrix::<Rational>::identity(3)]).unwrap(), 1);
        assert_eq!(span_closure(&[m(&[&[1, 0], &[0, 2]])]).unwrap(), 2);
        let up = m(&[&[0, 1], &[0, 0]]);
        let down = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(span_closure(&[up.clone(), down]).unwrap(), 4);
        assert_eq!(span_closure(&[up]).unwrap(), 2);
    }

    #[test]
    fn matrix_json_shape() {
        let x = m(&[&[1, 2], &[3, 4]]);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"rows":2,"cols":2,"entries":[["1","2"],["3","4"]]}"#);
        let back: Matrix<Rational> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"rows":2,"cols":2,"entries":[["1","2"]]}"#;
        assert!(serde_json::from_str::<Matrix<Rational>>(bad).is_err());
    }
}
