use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Generalized binomial coefficient `n(n-1)…(n-k+1)/k!` for `k >= 0`,
/// and `0` for `k < 0`. Negative `n` is allowed.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}
