use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::verma::{verma_apply, SparseVec, VermaOp};
use crate::error::{Error, Result};
use crate::params::HeckeParams;
use crate::report::Report;
use crate::scalar::Field;
use crate::util::ceil_half;

/// A Laurent polynomial in `z`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentPoly<F>(BTreeMap<i64, F>);

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `c z^e`.
    pub fn monomial(c: F, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> F {
        self.0.get(&e).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, e: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.0.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(e, sum);
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (e, x.clone() * c.clone())))
    }

    /// `f(a / z)`: each `c z^e` becomes `c a^e z^{-e}`.
    pub fn reflect(&self, a: &F) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (-e, x.clone() * a.pow(e))))
    }

    fn low(&self) -> i64 {
        self.0.keys().next().copied().unwrap_or(0)
    }

    fn high(&self) -> i64 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Exact quotient `self / den` in the Laurent ring.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("division by the zero Laurent polynomial".into()));
        }
        let (dl, dh) = (den.low(), den.high());
        let lead = den.coeff(dh);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() && rem.high() - rem.low() >= dh - dl {
            let rh = rem.high();
            let c = rem.coeff(rh) / lead.clone();
            let shift = rh - dh;
            quot.add_term(shift, c.clone());
            for (e, x) in den.terms() {
                rem.add_term(e + shift, -(x.clone() * c.clone()));
            }
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::Internal(format!("Laurent division leaves remainder {rem:?}")))
        }
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c.clone())))
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<F: Field> Serialize for LaurentPoly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, &F)> = self.terms().collect();
        pairs.serialize(s)
    }
}

impl<'de, F: Field> Deserialize<'de> for LaurentPoly<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, F)>::deserialize(d)?;
        Ok(LaurentPoly::from_terms(pairs))
    }
}

type Frac<F> = (LaurentPoly<F>, LaurentPoly<F>);

/// Sums fractions and divides out exactly.
fn sum_fractions<F: Field>(parts: Vec<Frac<F>>) -> Result<LaurentPoly<F>> {
    let mut num = LaurentPoly::zero();
    let mut den = LaurentPoly::constant(F::one());
    for (n, d) in parts {
        num = &(&num * &d) + &(&n * &den);
        den = &den * &d;
    }
    num.div_exact(&den)
}

/// Applies `t_g` in the polynomial representation.
pub fn poly_apply<F: Field>(g: usize, f: &LaurentPoly<F>, p: &HeckeParams<F>) -> Result<LaurentPoly<F>> {
    let [k0, k1, k2, k3] = &p.k;
    let (c0, c1, c2, c3) = (p.c(0), p.c(1), p.c(2), p.c(3));
    let q = &p.q;
    let one = LaurentPoly::constant(F::one());
    let lp = |terms: Vec<(i64, F)>| LaurentPoly::from_terms(terms);
    match g {
        0 => {
            let g2 = f.reflect(&q.square());
            let num = lp(vec![(0, c0), (-1, -(c1 * q.clone()))]);
            let den = lp(vec![(0, F::one()), (-2, -q.square())]);
            sum_fractions(vec![(g2.scale(k0), one), (&num * &(f - &g2), den)])
        }
        1 => {
            let g2 = f.reflect(&q.square());
            let a = lp(vec![(0, c1), (-1, -(c0 * q.clone()))]);
            let da = lp(vec![(0, F::one()), (-2, -q.square())]);
            let b = lp(vec![
                (0, p.c(1)),
                (-1, -(k0.clone() * q.clone())),
                (1, -(k0.recip() * q.recip())),
            ]);
            let db = lp(vec![(0, F::one()), (2, -q.recip().square())]);
            sum_fractions(vec![(&a * f, da), (&b * &g2, db)])
        }
        2 => {
            let g1 = f.reflect(&F::one());
            let den = lp(vec![(0, F::one()), (2, -F::one())]);
            let a = lp(vec![(0, c2.clone()), (1, -c3)]);
            let b = lp(vec![(1, k3.clone()), (-1, k3.recip()), (0, -c2)]);
            let _ = k1;
            sum_fractions(vec![(&a * f, den.clone()), (&b * &g1, den)])
        }
        3 => {
            let g1 = f.reflect(&F::one());
            let den = lp(vec![(0, F::one()), (2, -F::one())]);
            let num = lp(vec![(0, c3), (1, -c2)]);
            let _ = k2;
            sum_fractions(vec![(g1.scale(k3), one), (&num * &(f - &g1), den)])
        }
        _ => Err(Error::Contract(format!("generator index {g} out of range"))),
    }
}

/// Image of `m_i` under the isomorphism `M -> P` sending `m_0` to `1`:
/// `prod_{h<i} (1 - k0 k1 q^{2⌈h/2⌉} q^{(-1)^h} z^{(-1)^{h-1}})`.
pub fn verma_basis_image<F: Field>(i: usize, p: &HeckeParams<F>) -> LaurentPoly<F> {
    let k01 = p.k[0].clone() * p.k[1].clone();
    let mut acc = LaurentPoly::constant(F::one());
    for h in 0..i as i64 {
        let (qe, ze) = if h % 2 == 0 { (1, -1) } else { (-1, 1) };
        let c = k01.clone() * p.qp(2 * ceil_half(h) + qe);
        let factor = LaurentPoly::from_terms([(0, F::one()), (ze, -c)]);
        acc = &acc * &factor;
    }
    acc
}

fn image<F: Field>(v: &SparseVec<F>, p: &HeckeParams<F>) -> LaurentPoly<F> {
    let mut out = LaurentPoly::zero();
    for (i, c) in v.terms() {
        out = &out + &verma_basis_image(i, p).scale(c);
    }
    out
}

/// The map `m_i -> verma_basis_image(i)` commutes with all four generators
/// on `m_0..=m_max`.
pub fn poly_intertwining_check<F: Field>(p: &HeckeParams<F>, max: usize) -> Report {
    let mut report = Report::new();
    for i in 0..=max {
        let mi = SparseVec::basis(i);
        let fi = verma_basis_image(i, p);
        for g in 0..4 {
            let name = format!("t{g} intertwines at m{i}");
            let lhs = image(&verma_apply(VermaOp::T(g), &mi, p), p);
            match poly_apply(g, &fi, p) {
                Ok(rhs) if rhs == lhs => report.pass(name),
                Ok(rhs) => report.fail(name, format!("{rhs:?} != {lhs:?}")),
                Err(e) => report.fail(name, e.to_string()),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn params() -> HeckeParams<Rational> {
        HeckeParams::new(r("2"), ["3/2", "-1/3", "5", "2/7"].map(r)).unwrap()
    }

    #[test]
    fn generators_fix_constants_up_to_scalars() {
        let p = params();
        let one = LaurentPoly::constant(r("1"));
        assert_eq!(poly_apply(3, &one, &p).unwrap(), one.scale(&r("2/7")));
        assert_eq!(poly_apply(0, &one, &p).unwrap(), one.scale(&r("3/2")));
    }

    #[test]
    fn basis_images() {
        let p = params();
        assert_eq!(verma_basis_image(0, &p), LaurentPoly::constant(r("1")));
        // 1 - k0 k1 q z^{-1} with k0 k1 = -1/2, q = 2.
        let want = LaurentPoly::from_terms([(0, r("1")), (-1, r("1"))]);
        assert_eq!(verma_basis_image(1, &p), want);
    }

    #[test]
    fn non_cancelling_division_is_internal_error() {
        let num = LaurentPoly::from_terms([(0, r("1")), (1, r("1"))]);
        let den = LaurentPoly::from_terms([(0, r("1")), (2, r("-1"))]);
        assert!(matches!(num.div_exact(&den), Err(Error::Internal(_))));
        let prod = &num * &den;
        assert_eq!(prod.div_exact(&den).unwrap(), num);
    }

    #[test]
    fn intertwining_up_to_ten() {
        let report = poly_intertwining_check(&params(), 10);
        assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn json_is_sorted_pairs() {
        let f = LaurentPoly::from_terms([(2, r("1/2")), (-1, r("3"))]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"[[-1,"3"],[2,"1/2"]]"#);
    }

    fn laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
        prop::collection::vec((-4i64..=4, -9i64..=9, 1i64..=5), 0..6)
            .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, a, b)| (e, Rational::new(a, b)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn y_is_multiplication_by_z_over_q(f in laurent()) {
            let p = params();
            let y = poly_apply(0, &poly_apply(1, &f, &p).unwrap(), &p).unwrap();
            let want = &f * &LaurentPoly::monomial(p.q.recip(), 1);
            prop_assert_eq!(y, want);
        }
    }
}
