//! Integer combinatorics and Bernoulli numbers.

use crate::rational::Rational;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use std::sync::Mutex;

/// `n!` with arbitrary precision.
pub fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=u64::from(n) {
        acc *= k;
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..u64::from(k) {
        acc = acc * (u64::from(n) - i) / (i + 1);
    }
    acc
}

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The n-th Bernoulli number, exact, with the convention `B_1 = -1/2`.
///
/// Computed from the recursion `sum_k C(n+1, k) B_k = 0` and memoised.
pub fn bernoulli(n: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n as usize {
        let m = cache.len() as u32; // computing B_m
        let mut sum = Rational::zero();
        for (k, b) in cache.iter().enumerate() {
            let c = Rational::from_bigint(BigInt::from(binomial(m + 1, k as u32)));
            sum += &(&c * b);
        }
        let b = -sum / Rational::from_integer(i64::from(m) + 1);
        cache.push(b);
    }
    cache[n as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(4), BigUint::from(24u32));
        assert_eq!(factorial(6), BigUint::from(720u32));
        assert_eq!(factorial(21).to_string(), "51090942171709440000");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(7, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::ZERO);
    }

    #[test]
    fn bernoulli_base_cases() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), Rational::new(-1, 2));
    }

    #[test]
    fn bernoulli_against_sum_recursion() {
        // Independent check: sum_{k=0}^{n} C(n+1,k) B_k must vanish for n >= 1.
        for n in 1..=16u32 {
            let mut sum = Rational::zero();
            for k in 0..=n {
                let c = Rational::from_bigint(BigInt::from(binomial(n + 1, k)));
                sum += &(&c * &bernoulli(k));
            }
            assert!(sum.is_zero(), "recursion fails at n = {n}");
        }
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(12), Rational::new(-691, 2730));
    }
}
