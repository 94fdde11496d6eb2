//! Reproducible random parameter quadruples.
//!
//! `k` coordinates come from a fixed pool of small-height rationals; the
//! constrained coordinate (`k0` for the even family, `k3` for the odd one)
//! is then repaired so the family constraint holds exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::criterion_violations;
use crate::params::{HeckeParams, ParamQuadruple, Parity};
use crate::scalar::{Field, Rational};

const HEIGHT: i64 = 16;
const MAX_ATTEMPTS: usize = 10_000;

/// Seeded sampler over a fixed `q`.
pub struct Sampler<F> {
    rng: ChaCha8Rng,
    q: F,
    pool: Vec<Rational>,
}

impl<F: Field> Sampler<F> {
    pub fn new(seed: u64, q: F) -> Self {
        let mut pool = Vec::new();
        for num in 1..=HEIGHT {
            for den in 1..=HEIGHT {
                let r = Rational::new(num, den);
                if !pool.contains(&r) {
                    pool.push(r.clone());
                    pool.push(-r);
                }
            }
        }
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            q,
            pool,
        }
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn pool_value(&mut self) -> F {
        F::from_rational(self.pool.choose(&mut self.rng).expect("nonempty pool"))
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn sign(&mut self) -> F {
        if self.rng.gen_bool(0.5) {
            F::one()
        } else {
            -F::one()
        }
    }

    /// `q` with four unconstrained pool values.
    pub fn hecke(&mut self) -> HeckeParams<F> {
        let k = std::array::from_fn(|_| self.pool_value());
        HeckeParams::new(self.q.clone(), k).expect("pool values are nonzero")
    }

    /// A valid even-family quadruple: `k0 = ±q^{-(d+1)/2}`.
    pub fn even(&mut self, d: usize) -> ParamQuadruple<F> {
        assert!(d % 2 == 1, "even family needs odd d");
        let k0 = self.sign() * self.q.pow(-(d as i64 + 1) / 2);
        let k = [k0, self.pool_value(), self.pool_value(), self.pool_value()];
        ParamQuadruple::even(self.q.clone(), k, d).expect("repaired k0")
    }

    /// A valid odd-family quadruple: `k3 = q^{-d-1} / (k0 k1 k2)`.
    pub fn odd(&mut self, d: usize) -> ParamQuadruple<F> {
        assert!(d.is_multiple_of(2), "odd family needs even d");
        let (k0, k1, k2) = (self.pool_value(), self.pool_value(), self.pool_value());
        let k3 = self.q.pow(-(d as i64) - 1) / (k0.clone() * k1.clone() * k2.clone());
        ParamQuadruple::odd(self.q.clone(), [k0, k1, k2, k3], d).expect("repaired k3")
    }

    pub fn sample(&mut self, parity: Parity, d: usize) -> ParamQuadruple<F> {
        match parity {
            Parity::Even => self.even(d),
            Parity::Odd => self.odd(d),
        }
    }

    /// A sample satisfying the irreducibility criterion.
    pub fn irreducible(&mut self, parity: Parity, d: usize) -> ParamQuadruple<F> {
        for _ in 0..MAX_ATTEMPTS {
            let p = self.sample(parity, d);
            if criterion_violations(&p).is_empty() {
                return p;
            }
        }
        panic!("no irreducible {parity} sample found for d = {d}")
    }

    /// A sample violating exactly one irreducibility condition, or `None`
    /// when the family has no violable condition at this `d` (odd `d = 0`).
    pub fn adversarial(&mut self, parity: Parity, d: usize) -> Option<ParamQuadruple<F>> {
        if parity == Parity::Odd && d == 0 {
            return None;
        }
        for _ in 0..MAX_ATTEMPTS {
            let p = match parity {
                Parity::Even => self.break_even(d),
                Parity::Odd => self.break_odd(d),
            };
            if criterion_violations(&p).len() == 1 {
                return Some(p);
            }
        }
        panic!("no single-violation {parity} sample found for d = {d}")
    }

    /// Forces one of the four products to equal `q^{-i}` for an odd `i`,
    /// solving for `k3`.
    fn break_even(&mut self, d: usize) -> ParamQuadruple<F> {
        let base = self.even(d);
        let [k0, k1, k2, _] = base.k().clone();
        let i = 2 * self.index(d.div_ceil(2)) as i64 + 1;
        let target = self.q.pow(-i);
        let k3 = match self.index(4) {
            0 => target / (k0.clone() * k1.clone() * k2.clone()),
            1 => target / (k0.clone() * k1.recip() * k2.clone()),
            2 => target / (k0.clone() * k1.clone() * k2.recip()),
            _ => k0.clone() * k1.clone() * k2.clone() / target,
        };
        base.with_k([k0, k1, k2, k3]).expect("k0 untouched")
    }

    /// Forces `k_j^2 = q^{-i}` for an even `i` in `2..=d`, repairing a
    /// different coordinate to keep the product constraint.
    fn break_odd(&mut self, d: usize) -> ParamQuadruple<F> {
        let i = 2 * (self.index(d / 2) as i64 + 1);
        let forced = self.sign() * self.q.pow(-i / 2);
        let j = self.index(4);
        let repair = if j == 3 { 2 } else { 3 };
        let mut k: [F; 4] = std::array::from_fn(|_| self.pool_value());
        k[j] = forced;
        let others = (0..4)
            .filter(|&x| x != repair)
            .fold(F::one(), |acc, x| acc * k[x].clone());
        k[repair] = self.q.pow(-(d as i64) - 1) / others;
        ParamQuadruple::odd(self.q.clone(), k, d).expect("repaired coordinate")
    }
}
