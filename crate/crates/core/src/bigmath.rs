//! Small helpers for exact big-integer work: binomials and logarithms.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural logarithm of a non-negative big integer, accurate to about one ulp
/// of the leading 64 bits. Returns `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` as a float, without overflowing for huge operands.
pub fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    (ln_big(num) - ln_big(den)).exp()
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(x) = q.to_f64().filter(|x| x.is_finite() && *x != 0.0) {
        return x;
    }
    let sign = if q.numer() < &BigInt::zero() { -1.0 } else { 1.0 };
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    sign * ratio_f64(n, d)
}

pub fn pow_u(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(19, 9), BigUint::from(92378u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(7, 0), BigUint::one());
    }

    #[test]
    fn ln_big_matches_f64_for_small_and_large() {
        let x = BigUint::from(123_456_789u64);
        assert!((ln_big(&x) - 123_456_789f64.ln()).abs() < 1e-12);
        // 2^5000
        let big = BigUint::one() << 5000u32;
        let expect = 5000.0 * std::f64::consts::LN_2;
        assert!((ln_big(&big) - expect).abs() < 1e-9);
    }

    #[test]
    fn ratio_of_huge_numbers() {
        let den = BigUint::one() << 4000u32;
        let num = &den * 3u32;
        assert!((ratio_f64(&num, &den) - 3.0).abs() < 1e-12);
    }
}
