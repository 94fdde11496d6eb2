use super::ModuleRep;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::params::{ParamQuadruple, Parity, Sequence, TwistElement};
use crate::scalar::Field;

/// The even-dimensional module `E(k0,k1,k2,k3)` on `v_0..v_d`.
pub fn make_e<F: Field>(p: &ParamQuadruple<F>) -> Result<ModuleRep<F>> {
    p.require(Parity::Even)?;
    let [k0, k1, k2, k3] = p.k().clone();
    let d = p.d();
    let n = d + 1;
    let qp = |e: i64| p.qp(e);
    let one = F::one();
    let rho = |i: usize| p.eval_sequence(Sequence::Rho, i as i64);
    let k013 = k0.clone() * k1.clone() * k3.clone();
    let mut t: [Matrix<F>; 4] = std::array::from_fn(|_| Matrix::zeros(n, n));

    let t0 = &mut t[0];
    t0[(0, 0)] = k0.clone();
    t0[(d, d)] = k0.clone();
    for i in (2..d).step_by(2) {
        let e = i as i64;
        t0[(i - 1, i)] = qp(-e) * (one.clone() - qp(e)) * (one.clone() - k0.square() * qp(e)) / k0.clone();
        t0[(i, i)] = k0.clone() + k0.recip() - qp(-e) / k0.clone();
    }
    for i in (1..d.saturating_sub(1)).step_by(2) {
        let a = qp(-(i as i64) - 1) / k0.clone();
        t0[(i, i)] = a.clone();
        t0[(i + 1, i)] = -a;
    }

    let t1 = &mut t[1];
    t1[(0, 0)] = k1.clone();
    t1[(1, 0)] = k1.recip();
    for i in (2..d).step_by(2) {
        let e = i as i64;
        t1[(i - 1, i)] = -k1.clone() * (one.clone() - qp(e)) * (one.clone() - k0.square() * qp(e));
        t1[(i, i)] = k1.clone();
        t1[(i + 1, i)] = k1.recip();
    }
    for i in (1..=d).step_by(2) {
        t1[(i, i)] = k1.recip();
    }

    let t2 = &mut t[2];
    for i in (0..d).step_by(2) {
        let a = qp(-(i as i64) - 1) / k013.clone();
        t2[(i, i)] = a.clone();
        t2[(i + 1, i)] = -a;
    }
    for i in (1..=d).step_by(2) {
        let e = i as i64;
        t2[(i - 1, i)] = rho(i) / (k013.clone() * qp(e));
        t2[(i, i)] = k2.clone() + k2.recip() - qp(-e) / k013.clone();
    }

    let t3 = &mut t[3];
    for i in (0..d).step_by(2) {
        t3[(i, i)] = k3.clone();
    }
    for i in (1..=d).step_by(2) {
        t3[(i - 1, i)] = -rho(i) / k3.clone();
        t3[(i, i)] = k3.recip();
        if i < d {
            t3[(i + 1, i)] = k3.clone();
        }
    }

    ModuleRep::from_generators(t, p.clone(), TwistElement::IDENTITY, "E")
}

/// The odd-dimensional module `O(k0,k1,k2,k3)` on `v_0..v_d`.
pub fn make_o<F: Field>(p: &ParamQuadruple<F>) -> Result<ModuleRep<F>> {
    p.require(Parity::Odd)?;
    let [k0, k1, k2, k3] = p.k().clone();
    let d = p.d();
    let n = d + 1;
    let de = d as i64;
    let qp = |e: i64| p.qp(e);
    let one = F::one();
    let even_rho = |e: i64| (one.clone() - qp(e)) * (one.clone() - k0.square() * qp(e));
    let mut t: [Matrix<F>; 4] = std::array::from_fn(|_| Matrix::zeros(n, n));

    let t0 = &mut t[0];
    t0[(0, 0)] = k0.clone();
    for i in (2..=d).step_by(2) {
        let e = i as i64;
        t0[(i - 1, i)] = qp(-e) * even_rho(e) / k0.clone();
        t0[(i, i)] = k0.clone() + k0.recip() - qp(-e) / k0.clone();
    }
    for i in (1..d).step_by(2) {
        let a = qp(-(i as i64) - 1) / k0.clone();
        t0[(i, i)] = a.clone();
        t0[(i + 1, i)] = -a;
    }

    let t1 = &mut t[1];
    t1[(0, 0)] = k1.clone();
    if d >= 1 {
        t1[(1, 0)] = k1.recip();
    }
    for i in (2..d.saturating_sub(1)).step_by(2) {
        t1[(i - 1, i)] = -k1.clone() * even_rho(i as i64);
        t1[(i, i)] = k1.clone();
        t1[(i + 1, i)] = k1.recip();
    }
    for i in (1..d).step_by(2) {
        t1[(i, i)] = k1.recip();
    }
    if d >= 2 {
        t1[(d - 1, d)] = -k1.clone() * even_rho(de);
    }
    t1[(d, d)] = k1.clone();

    let t2 = &mut t[2];
    for i in (0..d.saturating_sub(1)).step_by(2) {
        let a = k2.clone() * qp(de - i as i64);
        t2[(i, i)] = a.clone();
        t2[(i + 1, i)] = -a;
    }
    for i in (1..d).step_by(2) {
        let e = i as i64;
        t2[(i - 1, i)] = -k2.clone()
            * (one.clone() - qp(e - de - 1) / k2.square())
            * (one.clone() - qp(de - e + 1));
        t2[(i, i)] = k2.clone() + k2.recip() - k2.clone() * qp(de - e + 1);
    }
    t2[(d, d)] = k2.clone();

    let t3 = &mut t[3];
    for i in (0..=d).step_by(2) {
        t3[(i, i)] = k3.clone();
    }
    for i in (1..d).step_by(2) {
        let e = i as i64;
        t3[(i - 1, i)] = -(one.clone() - qp(e - de - 1) / k2.square()) * (one.clone() - qp(e - de - 1)) / k3.clone();
        t3[(i, i)] = k3.recip();
        t3[(i + 1, i)] = k3.clone();
    }

    ModuleRep::from_generators(t, p.clone(), TwistElement::IDENTITY, "O")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::modrep::{central_character, verify_relations};
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|x| r(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn running_even_example() {
        let p = ParamQuadruple::even(r("2"), ["1/2", "1", "3", "1"].map(r), 1).unwrap();
        let m = make_e(&p).unwrap();
        assert_eq!(m.t[0], mat(&[&["1/2", "0"], &["0", "1/2"]]));
        assert_eq!(m.t[1], mat(&[&["1", "0"], &["1", "1"]]));
        assert_eq!(m.t[2], mat(&[&["1", "-4/3"], &["-1", "7/3"]]));
        assert_eq!(m.t[3], mat(&[&["1", "4/3"], &["0", "1"]]));
        assert_eq!(m.tinv[2], mat(&[&["7/3", "4/3"], &["1", "1"]]));
        assert_eq!(m.tinv[3], mat(&[&["1", "-4/3"], &["0", "1"]]));
        assert_eq!(&(&m.t[1] * &m.t[2]) * &m.t[3], Matrix::identity(2));
        assert!(verify_relations(&m).all_passed());
        assert_eq!(central_character(&m).unwrap(), ["5/2", "2", "10/3", "2"].map(r));
    }

    #[test]
    fn reducible_even_example_has_invariant_line() {
        let p = ParamQuadruple::even(r("2"), ["1/2", "1", "1", "1"].map(r), 1).unwrap();
        let m = make_e(&p).unwrap();
        let v1 = [r("0"), r("1")];
        for t in &m.t {
            assert!(t.apply(&v1)[0].is_zero());
        }
    }

    #[test]
    fn odd_examples() {
        let p = ParamQuadruple::odd(r("2"), ["1", "1", "1", "1/2"].map(r), 0).unwrap();
        let m = make_o(&p).unwrap();
        let diag: Vec<_> = m.t.iter().map(|t| t[(0, 0)].clone()).collect();
        assert_eq!(diag, ["1", "1", "1", "1/2"].map(r));
        assert!(verify_relations(&m).all_passed());

        let p = ParamQuadruple::odd(r("2"), ["1", "1", "3", "1/24"].map(r), 2).unwrap();
        let m = make_o(&p).unwrap();
        assert_eq!(m.t[0], mat(&[&["1", "0", "0"], &["0", "1/4", "9/4"], &["0", "-1/4", "7/4"]]));
        assert_eq!(m.t[1], mat(&[&["1", "0", "0"], &["1", "1", "-9"], &["0", "0", "1"]]));
        assert_eq!(m.t[2], mat(&[&["12", "35/4", "0"], &["-12", "-26/3", "0"], &["0", "0", "3"]]));
        assert_eq!(m.t[3], mat(&[&["1/24", "-35/2", "0"], &["0", "24", "0"], &["0", "1/24", "1/24"]]));
        assert!(verify_relations(&m).all_passed());
        let expected = p.k().clone().map(|k| k.clone() + k.recip());
        assert_eq!(central_character(&m).unwrap(), expected);
    }

    #[test]
    fn wrong_family_is_rejected() {
        let p = ParamQuadruple::odd(r("2"), ["1", "1", "1", "1/2"].map(r), 0).unwrap();
        assert!(matches!(make_e(&p), Err(Error::Contract(_))));
        let p = ParamQuadruple::even(r("2"), ["1/2", "1", "3", "1"].map(r), 1).unwrap();
        assert!(matches!(make_o(&p), Err(Error::Contract(_))));
    }
}
