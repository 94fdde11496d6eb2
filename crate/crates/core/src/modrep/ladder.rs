use super::ModuleRep;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::params::{Parity, Sequence, TwistElement};
use crate::report::Report;
use crate::scalar::Field;
use crate::util::{ceil_half, is_even};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    X,
    Y,
}

fn require_untwisted<F: Field>(m: &ModuleRep<F>) -> Result<()> {
    if m.twist != TwistElement::IDENTITY {
        return Err(crate::Error::Contract(
            "ladder identities need an untwisted module".into(),
        ));
    }
    Ok(())
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// `1 - c q^{2⌈i/2⌉} Z^{(-1)^{i-1}}` as a matrix, given `Z` and `Z^{-1}`.
fn rung<F: Field>(coeff: &F, q: &F, i: i64, z: &Matrix<F>, z_inv: &Matrix<F>) -> Matrix<F> {
    let power = if is_even(i) { z_inv } else { z };
    let s = coeff.clone() * q.pow(2 * ceil_half(i));
    &Matrix::identity(z.rows()) - &power.scale(&s)
}

/// Checks, on every basis vector, the X or Y ladder identity of the
/// untwisted `E` or `O` module.
pub fn ladder_check<F: Field>(m: &ModuleRep<F>, which: Ladder) -> Result<Report> {
    require_untwisted(m)?;
    let p = &m.params;
    let [k0, k1, _, k3] = p.k().clone();
    let d = p.d();
    let n = m.dim;
    let mut report = Report::new();
    for i in 0..=d {
        let vi = unit::<F>(n, i);
        let (name, got, want) = match which {
            Ladder::X => {
                let op = rung(&(k0.clone() * k3.clone()), p.q(), i as i64, &m.x(), &m.x_inv());
                let want = if i == 0 {
                    vec![F::zero(); n]
                } else {
                    let r = p.eval_sequence(Sequence::Rho, i as i64);
                    unit::<F>(n, i - 1).into_iter().map(|x| x * r.clone()).collect()
                };
                (format!("X ladder at v{i}"), op.apply(&vi), want)
            }
            Ladder::Y => {
                let op = rung(&(k0.clone() * k1.clone()), p.q(), i as i64, &m.y(), &m.y_inv());
                let want = if i == d { vec![F::zero(); n] } else { unit(n, i + 1) };
                (format!("Y ladder at v{i}"), op.apply(&vi), want)
            }
        };
        report.push(name, got == want, (got != want).then(|| format!("{got:?} != {want:?}")));
    }
    Ok(report)
}

/// The two commutation identities
/// `X t0 - t0 X^{-1} = X c0 - c3` and
/// `q^{-1} X^{-1} t2 - q t2 X = q^{-1} X^{-1} c2 - c1`.
pub fn commutation_check<F: Field>(m: &ModuleRep<F>) -> Report {
    let q = m.params.q().clone();
    let qi = q.recip();
    let (x, xi) = (m.x(), m.x_inv());
    let c: Vec<Matrix<F>> = (0..4).map(|i| m.c(i)).collect();
    let mut report = Report::new();

    let lhs = &(&x * &m.t[0]) - &(&m.t[0] * &xi);
    let rhs = &(&x * &c[0]) - &c[3];
    report.push("X t0 - t0 X^-1", lhs == rhs, (lhs != rhs).then(|| format!("{:?}", &lhs - &rhs)));

    let lhs = &(&xi * &m.t[2]).scale(&qi) - &(&m.t[2] * &x).scale(&q);
    let rhs = &(&xi * &c[2]).scale(&qi) - &c[1];
    report.push("q^-1 X^-1 t2 - q t2 X", lhs == rhs, (lhs != rhs).then(|| format!("{:?}", &lhs - &rhs)));
    report
}

/// `prod_{i=0}^{d} (1 - k0 k1 q^{2⌈i/2⌉} Y^{(-1)^{i-1}})` kills `v0`.
pub fn quotient_check<F: Field>(m: &ModuleRep<F>) -> Result<Report> {
    require_untwisted(m)?;
    let p = &m.params;
    let k01 = p.k()[0].clone() * p.k()[1].clone();
    let (y, yi) = (m.y(), m.y_inv());
    let mut v = unit::<F>(m.dim, 0);
    for i in 0..=p.d() as i64 {
        v = rung(&k01, p.q(), i, &y, &yi).apply(&v);
    }
    let mut report = Report::new();
    let ok = v.iter().all(Field::is_zero);
    report.push("Y product annihilates v0", ok, (!ok).then(|| format!("{v:?}")));
    Ok(report)
}

/// The basis `w_i = prod_{h<i} (1 - k0 k1^{-1} q^{2⌈h/2⌉} Y^{(-1)^{h-1}}) v0`
/// of `E` realizes the ladders of `E(k0, k1^{-1}, k2, k3)`, with `phi` in
/// place of `rho`.
pub fn w_basis_check<F: Field>(m: &ModuleRep<F>) -> Result<Report> {
    require_untwisted(m)?;
    m.params.require(Parity::Even)?;
    let p = &m.params;
    let [k0, k1, _, k3] = p.k().clone();
    let d = p.d();
    let (x, xi, y, yi) = (m.x(), m.x_inv(), m.y(), m.y_inv());
    let k01 = k0.clone() * k1.recip();
    let mut w = vec![unit::<F>(m.dim, 0)];
    for h in 0..d as i64 {
        let next = rung(&k01, p.q(), h, &y, &yi).apply(w.last().unwrap());
        w.push(next);
    }
    let mut report = Report::new();
    let basis = Matrix::from_columns(&w).expect("equal lengths");
    let rank = basis.rank();
    report.push("w vectors form a basis", rank == m.dim, (rank != m.dim).then(|| format!("rank {rank}")));
    let k03 = k0 * k3;
    for i in 0..=d {
        let got = rung(&k03, p.q(), i as i64, &x, &xi).apply(&w[i]);
        let want: Vec<F> = if i == 0 {
            vec![F::zero(); m.dim]
        } else {
            let phi = p.eval_sequence(Sequence::Phi, i as i64);
            w[i - 1].iter().map(|a| a.clone() * phi.clone()).collect()
        };
        report.push(format!("w X ladder at {i}"), got == want, (got != want).then(|| format!("{got:?}")));
        let got = rung(&k01, p.q(), i as i64, &y, &yi).apply(&w[i]);
        let want = if i == d { vec![F::zero(); m.dim] } else { w[i + 1].clone() };
        report.push(format!("w Y ladder at {i}"), got == want, (got != want).then(|| format!("{got:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::{make_e, make_o};
    use crate::params::ParamQuadruple;
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn running_example_ladders() {
        let p = ParamQuadruple::even(r("2"), ["1/2", "1", "3", "1"].map(r), 1).unwrap();
        let m = make_e(&p).unwrap();
        for which in [Ladder::X, Ladder::Y] {
            assert!(ladder_check(&m, which).unwrap().all_passed());
        }
        // The X rung at v1 lands on rho_1 v0 = -4/3 v0.
        let got = rung(&r("1/2"), &r("2"), 1, &m.x(), &m.x_inv()).apply(&[r("0"), r("1")]);
        assert_eq!(got, vec![r("-4/3"), r("0")]);
        assert!(commutation_check(&m).all_passed());
        assert!(quotient_check(&m).unwrap().all_passed());
        assert!(w_basis_check(&m).unwrap().all_passed());
    }

    #[test]
    fn larger_modules() {
        let q = r("3");
        for d in [3usize, 5] {
            let k0 = -q.pow(-(d as i64 + 1) / 2);
            let p = ParamQuadruple::even(q.clone(), [k0, r("2/7"), r("-5"), r("3/4")], d).unwrap();
            let m = make_e(&p).unwrap();
            assert!(ladder_check(&m, Ladder::X).unwrap().all_passed());
            assert!(ladder_check(&m, Ladder::Y).unwrap().all_passed());
            assert!(commutation_check(&m).all_passed());
            assert!(quotient_check(&m).unwrap().all_passed());
            assert!(w_basis_check(&m).unwrap().all_passed());
        }
        for d in [0usize, 2, 4] {
            let (k0, k1, k2) = (r("5/2"), r("-1/3"), r("7"));
            let k3 = q.pow(-(d as i64) - 1) / (k0.clone() * k1.clone() * k2.clone());
            let p = ParamQuadruple::odd(q.clone(), [k0, k1, k2, k3], d).unwrap();
            let m = make_o(&p).unwrap();
            assert!(ladder_check(&m, Ladder::X).unwrap().all_passed());
            assert!(ladder_check(&m, Ladder::Y).unwrap().all_passed());
            assert!(commutation_check(&m).all_passed());
            assert!(quotient_check(&m).unwrap().all_passed());
        }
    }

    #[test]
    fn twisted_modules_are_refused() {
        let p = ParamQuadruple::even(r("2"), ["1/2", "1", "3", "1"].map(r), 1).unwrap();
        let m = make_e(&p).unwrap().twisted(TwistElement::new(1));
        assert!(ladder_check(&m, Ladder::X).is_err());
        assert!(commutation_check(&m).all_passed());
    }
}
