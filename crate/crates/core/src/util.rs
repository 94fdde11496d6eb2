//! Small integer helpers shared by the index-heavy formulas.

/// `⌈i / 2⌉` for any integer.
pub(crate) fn ceil_half(i: i64) -> i64 {
    (i + 1).div_euclid(2)
}

/// `⌊i / 2⌋` for any integer.
pub(crate) fn floor_half(i: i64) -> i64 {
    i.div_euclid(2)
}

pub(crate) fn is_even(i: i64) -> bool {
    i.rem_euclid(2) == 0
}

/// Product of `f(h)` for `h` in `lo..=hi`; empty when `lo > hi`.
pub(crate) fn prod<F: crate::scalar::Field>(lo: i64, hi: i64, f: impl Fn(i64) -> F) -> F {
    (lo..=hi).fold(F::one(), |acc, h| acc * f(h))
}
