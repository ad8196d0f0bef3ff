//! Exact sparse polynomial arithmetic.
//!
//! [`EPoly`] lives in the free graded ring on elementary generators
//! `e_1, …, e_m` and models `Λ_m` at any scale. [`XPoly`] is the plain
//! polynomial ring in `x_1, …, x_m`, used for divided differences.
//!
//! Coefficients are `i128` with checked arithmetic: overflow panics instead
//! of wrapping.

mod epoly;
mod xpoly;

pub(crate) use epoly::{mul_into, sum_of_products};
pub use epoly::{EPoly, MAX_EXPAND_VARS};
pub use xpoly::{Exponents, XPoly};

/// Exact integer coefficient.
pub type Int = i128;

#[inline]
pub(crate) fn add(a: Int, b: Int) -> Int {
    a.checked_add(b)
        .expect("integer overflow in coefficient addition")
}

#[inline]
pub(crate) fn mul(a: Int, b: Int) -> Int {
    a.checked_mul(b)
        .expect("integer overflow in coefficient multiplication")
}

#[inline]
pub(crate) fn neg(a: Int) -> Int {
    a.checked_neg().expect("integer overflow in negation")
}

/// `2^k` as an exact integer.
pub fn pow2(k: usize) -> Int {
    assert!(k < 126, "2^{k} does not fit");
    1 << k
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> Int {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: Int = 1;
    for i in 0..k {
        acc = mul(acc, (n - i) as Int) / (i + 1) as Int;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(40, 20), 137846528820);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        mul(Int::MAX / 2, 3);
    }
}
