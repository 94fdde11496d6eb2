//! Exact computations with the finite-dimensional modules of the universal
//! double affine Hecke algebra of type (C1v, C1).
//!
//! The algebra is generated by `t0..t3` and their inverses subject to
//! `t_i t_i^{-1} = 1`, centrality of `c_i = t_i + t_i^{-1}` and
//! `t0 t1 t2 t3 = q^{-1}`. This crate builds the even-dimensional modules
//! `E(k0,k1,k2,k3)`, the odd-dimensional modules `O(k0,k1,k2,k3)`, the
//! universal infinite-dimensional module `M` (applied lazily) and the
//! Laurent-polynomial representation `P`, and decides irreducibility,
//! isomorphism and classification coordinates with exact arithmetic.
//!
//! Everything is generic over a [`scalar::Field`]: [`scalar::Rational`] for
//! numeric `q`, [`scalar::RatFun`] for a formal `q`.

pub mod analysis;
pub mod error;
pub mod linalg;
pub mod modrep;
pub mod params;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod suite;
mod util;

pub use error::{Error, Result};
