use super::HeckeParams;
use crate::scalar::Field;

/// The four scalar sequences attached to a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    Phi,
    Rho,
    Chi,
    Psi,
}

impl<F: Field> HeckeParams<F> {
    /// General-form value of a sequence at any integer index.
    pub fn sequence(&self, kind: Sequence, i: i64) -> F {
        let [k0, k1, k2, k3] = &self.k;
        let qi = self.qp(i);
        let one = F::one();
        if i.rem_euclid(2) == 0 {
            let second = match kind {
                Sequence::Psi => k1.square(),
                _ => k0.square(),
            };
            return (one.clone() - qi.clone()) * (one - second * qi);
        }
        let (a, b) = match kind {
            Sequence::Phi => (k0.clone() * k1.recip() * k3.clone(), k2),
            Sequence::Rho => (k0.clone() * k1.clone() * k3.clone(), k2),
            Sequence::Chi => (k0.clone() * k1.clone() * k3.recip(), k2),
            Sequence::Psi => (k0.clone() * k1.clone() * k2.clone(), k3),
        };
        let a = a * qi;
        (a.clone() - b.clone()) * (a - b.recip())
    }
}

/// `mu q^i` for even `i`, `mu^{-1} q^{-i-1}` for odd `i`.
pub fn theta<F: Field>(q: &F, mu: &F, i: i64) -> F {
    if i.rem_euclid(2) == 0 {
        mu.clone() * q.pow(i)
    } else {
        mu.recip() * q.pow(-i - 1)
    }
}

/// Whether `theta(mu, i) == theta(mu, j)`, decided by the parity rule:
/// equal parity needs `q^i = q^j`, opposite parity needs `mu^2 = q^{-i-j-1}`.
pub fn theta_coincidence<F: Field>(q: &F, mu: &F, i: i64, j: i64) -> bool {
    if (i - j).rem_euclid(2) == 0 {
        q.pow(i) == q.pow(j)
    } else {
        mu.square() == q.pow(-i - j - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    #[test]
    fn theta_examples() {
        let q = Rational::from(2);
        let one = Rational::from(1);
        assert_eq!(theta(&q, &one, 0), one);
        assert_eq!(theta(&q, &one, 1), Rational::new(1, 4));
        assert_eq!(theta(&q, &one, 2), Rational::from(4));
        assert!(!theta_coincidence(&q, &one, 0, 2));
        assert!(theta_coincidence(&q, &Rational::new(-5, 7), 5, 5));
        assert!(!theta_coincidence(&q, &one, 0, 1));
        // mu^2 = q^{-2} makes theta_0 and theta_1 meet.
        assert!(theta_coincidence(&q, &Rational::new(1, 2), 0, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn coincidence_matches_brute_force(
            num in -12i64..=12, den in 1i64..=12,
            qn in prop::sample::select(vec![-3i64, 2, 3, 5]),
        ) {
            prop_assume!(num != 0);
            let q = Rational::new(qn, 2);
            let mu = Rational::new(num, den);
            for i in -20..=20 {
                for j in -20..=20 {
                    prop_assert_eq!(
                        theta_coincidence(&q, &mu, i, j),
                        theta(&q, &mu, i) == theta(&q, &mu, j)
                    );
                }
            }
        }
    }
}
