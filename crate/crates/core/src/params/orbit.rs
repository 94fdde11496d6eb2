use super::{ParamQuadruple, Parity, SignTriple};
use crate::error::Result;
use crate::scalar::Field;

/// Membership in the even-family classification set: none of the four
/// products `k0 k1^{±1} k2^{±1} k3^{±1}` (with at most one inversion) equals
/// `q^{-i}` for odd `i` in `1..=d`.
pub fn in_ep<F: Field>(p: &ParamQuadruple<F>) -> Result<bool> {
    p.require(Parity::Even)?;
    let products = ep_products(p);
    Ok((1..=p.d() as i64)
        .step_by(2)
        .all(|i| {
            let t = p.qp(-i);
            products.iter().all(|x| *x != t)
        }))
}

/// The four products `k0 k1 k2 k3`, `k0 k1^{-1} k2 k3`, `k0 k1 k2^{-1} k3`,
/// `k0 k1 k2 k3^{-1}`.
pub fn ep_products<F: Field>(p: &ParamQuadruple<F>) -> [F; 4] {
    let [k0, k1, k2, k3] = p.k().clone();
    let all = k0.clone() * k1.clone() * k2.clone() * k3.clone();
    [
        all.clone(),
        k0.clone() * k1.recip() * k2.clone() * k3.clone(),
        k0.clone() * k1.clone() * k2.recip() * k3.clone(),
        k0 * k1 * k2 * k3.recip(),
    ]
}

/// Membership in the odd-family classification set: no `k_j^2` equals
/// `q^{-i}` for even `i` in `2..=d`.
pub fn in_op<F: Field>(p: &ParamQuadruple<F>) -> Result<bool> {
    p.require(Parity::Odd)?;
    let squares: Vec<F> = p.k().iter().map(Field::square).collect();
    Ok((2..=p.d() as i64)
        .step_by(2)
        .all(|i| {
            let t = p.qp(-i);
            squares.iter().all(|x| *x != t)
        }))
}

/// Inverts the `k1, k2, k3` selected by `s`.
pub fn orbit_act<F: Field>(p: &ParamQuadruple<F>, s: SignTriple) -> Result<ParamQuadruple<F>> {
    p.require(Parity::Even)?;
    let mut k = p.k().clone();
    for i in 0..3 {
        if s.inverts(i) {
            k[i + 1] = k[i + 1].recip();
        }
    }
    p.with_k(k)
}

/// The eight orbit members, in [`SignTriple::all`] order.
pub fn orbit_members<F: Field>(p: &ParamQuadruple<F>) -> Result<Vec<ParamQuadruple<F>>> {
    SignTriple::all().into_iter().map(|s| orbit_act(p, s)).collect()
}

/// The orbit member whose `(k1, k2, k3)` string encodings are least in
/// lexicographic order.
pub fn canonical_orbit_rep<F: Field>(p: &ParamQuadruple<F>) -> Result<ParamQuadruple<F>> {
    let key = |m: &ParamQuadruple<F>| -> Vec<String> {
        m.k()[1..].iter().map(ToString::to_string).collect()
    };
    let members = orbit_members(p)?;
    Ok(members
        .into_iter()
        .min_by(|a, b| key(a).cmp(&key(b)))
        .expect("orbit is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn even(k: [&str; 4], d: usize) -> ParamQuadruple<Rational> {
        ParamQuadruple::even(r("2"), k.map(r), d).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(in_ep(&even(["1/2", "1", "3", "1"], 1)).unwrap());
        assert!(!in_ep(&even(["1/2", "1", "1", "1"], 1)).unwrap());
        let odd = |k: [&str; 4], d| ParamQuadruple::odd(r("2"), k.map(r), d).unwrap();
        assert!(in_op(&odd(["1", "1", "1", "1/2"], 0)).unwrap());
        assert!(!in_op(&odd(["1", "1", "1/2", "1/4"], 2)).unwrap());
        assert!(in_op(&odd(["1", "1", "3", "1/24"], 2)).unwrap());
        assert!(matches!(in_op(&even(["1/2", "1", "3", "1"], 1)), Err(Error::Contract(_))));
        assert!(matches!(in_ep(&odd(["1", "1", "3", "1/24"], 2)), Err(Error::Contract(_))));
    }

    #[test]
    fn orbit_examples() {
        let p = even(["1/2", "1", "3", "1"], 1);
        assert_eq!(orbit_act(&p, SignTriple::IDENTITY).unwrap(), p);
        assert_eq!(
            orbit_act(&p, SignTriple::new([1, -1, 1])).unwrap(),
            even(["1/2", "1", "1/3", "1"], 1)
        );
        assert_eq!(canonical_orbit_rep(&p).unwrap(), even(["1/2", "1", "1/3", "1"], 1));
        let fixed = even(["1/2", "1", "1", "1"], 1);
        assert_eq!(canonical_orbit_rep(&fixed).unwrap(), fixed);
    }

    fn nonzero() -> impl Strategy<Value = Rational> {
        (prop_oneof![-16i64..=-1, 1i64..=16], 1i64..=16).prop_map(|(a, b)| Rational::new(a, b))
    }

    fn even_params() -> impl Strategy<Value = ParamQuadruple<Rational>> {
        (
            prop::sample::select(vec![1usize, 3, 5]),
            prop::bool::ANY,
            nonzero(),
            nonzero(),
            nonzero(),
        )
            .prop_map(|(d, neg, k1, k2, k3)| {
                let q = Rational::from(2);
                let mut k0 = q.pow(-(d as i64 + 1) / 2);
                if neg {
                    k0 = -k0;
                }
                ParamQuadruple::even(q, [k0, k1, k2, k3], d).unwrap()
            })
    }

    proptest! {
        #[test]
        fn in_ep_is_orbit_invariant(p in even_params()) {
            let base = in_ep(&p).unwrap();
            for m in orbit_members(&p).unwrap() {
                prop_assert_eq!(in_ep(&m).unwrap(), base);
            }
        }

        #[test]
        fn canonical_rep_is_orbit_invariant(p in even_params(), s in prop::sample::select(SignTriple::all())) {
            let c = canonical_orbit_rep(&p).unwrap();
            let moved = orbit_act(&p, s).unwrap();
            prop_assert_eq!(&canonical_orbit_rep(&moved).unwrap(), &c);
            prop_assert_eq!(&canonical_orbit_rep(&c).unwrap(), &c);
            prop_assert_eq!(orbit_act(&moved, s).unwrap(), p);
        }
    }
}
