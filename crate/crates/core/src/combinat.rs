//! Binomial coefficients and factorials over arbitrary-precision integers.
//!
//! Three binomial variants coexist on purpose:
//!
//! - [`binom`]: the standard convention, `C(a,b) = 0` for `b < 0` or `b > a`.
//!   Used by the appendix identities and the `W_N` / Fay-shuffle systems.
//! - [`binom_conv`]: the standard convention plus the single exception
//!   `C(-1,-1) = 1`, needed so the `m = 0` or `n = 0` cases of the transcribed
//!   length-two formulas (derivative and Fay) degenerate correctly.
//! - [`binom_row_neg1`]: the coefficient of `X^a` in the formal geometric
//!   expansion `(X+Y)^{-1} = sum_{j>=0} (-1)^j X^j Y^{-1-j}`, i.e. the
//!   generalized binomial `C(-1,a) = (-1)^a` for `a >= 0`. Used only by the
//!   generating-series coefficient extraction, where the merged-variable
//!   factor `(X_i + X_{i+1})^{m-1}` appears with `m = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Standard binomial coefficient; zero outside `0 <= b <= a`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a || a < 0 {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..b {
        num *= a - k;
        den *= k + 1;
    }
    num / den
}

/// Standard binomial with the single exception `C(-1,-1) = 1`.
pub fn binom_conv(a: i64, b: i64) -> BigInt {
    if a == -1 && b == -1 {
        return BigInt::one();
    }
    binom(a, b)
}

/// Coefficient of `X^a Y^{p-a}` in `(X+Y)^p` for `p >= -1`, expanding the
/// `p = -1` case as a geometric series in nonnegative powers of `X`.
pub fn binom_row_neg1(p: i64, a: i64) -> BigInt {
    if p >= 0 {
        binom(p, a)
    } else {
        debug_assert_eq!(p, -1);
        if a >= 0 {
            if a % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        } else {
            BigInt::zero()
        }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=i64::from(n)).fold(BigInt::one(), |acc, k| acc * k)
}

/// Double factorial of odd numbers: `(2n+1)!! = 1 * 3 * ... * (2n+1)`.
pub fn double_factorial_odd(n: u32) -> BigInt {
    (0..=i64::from(n)).fold(BigInt::one(), |acc, k| acc * (2 * k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(5, 0), BigInt::one());
        assert_eq!(binom(5, 5), BigInt::one());
        assert_eq!(binom(3, 4), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(-2, 0), BigInt::zero());
    }

    #[test]
    fn binom_conv_exception() {
        assert_eq!(binom_conv(-1, -1), BigInt::one());
        assert_eq!(binom_conv(-1, 0), BigInt::zero());
        assert_eq!(binom_conv(0, -1), BigInt::zero());
        assert_eq!(binom_conv(4, 2), BigInt::from(6));
    }

    #[test]
    fn binom_row_neg1_geometric_signs() {
        assert_eq!(binom_row_neg1(-1, 0), BigInt::one());
        assert_eq!(binom_row_neg1(-1, 1), BigInt::from(-1));
        assert_eq!(binom_row_neg1(-1, 2), BigInt::one());
        assert_eq!(binom_row_neg1(-1, -1), BigInt::zero());
        assert_eq!(binom_row_neg1(3, 1), BigInt::from(3));
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial_odd(0), BigInt::one());
        assert_eq!(double_factorial_odd(1), BigInt::from(3));
        assert_eq!(double_factorial_odd(2), BigInt::from(15));
        assert_eq!(double_factorial_odd(10), BigInt::from(13749310575u64));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
