//! Exact integer combinatorics helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Exact integer power with usize exponent.
pub fn int_pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow::pow(BigInt::from(base), exp)
}
