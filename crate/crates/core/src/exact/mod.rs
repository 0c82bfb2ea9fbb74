//! Rational scalars, generalized factorials and the memoized number
//! triangles (Lah, signed Stirling of the first kind, Stirling of the
//! second kind) that the rest of the crate is built on.

mod degenerate_exp;
mod triangle;

pub use degenerate_exp::{degenerate_exp, degenerate_exp_exact};
pub use triangle::{
    lah_closed_form, lah_number, shared, stirling1_signed, stirling1_unsigned, stirling2, TriangleCache,
    TriangleKind,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedDiv, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type ExactRational = BigRational;

/// Builds `num/den`. Panics when `den == 0`; use [`checked_div`] for
/// runtime values.
pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn checked_div(a: &ExactRational, b: &ExactRational) -> Result<ExactRational> {
    a.checked_div(b).ok_or(Error::DivisionByZero)
}

/// Parses `"a"`, `"a/b"` or a plain decimal such as `"-0.125"`.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let value: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(value))
}

/// Canonical `"num/den"` form, denominator omitted when it is 1.
pub fn format_rational(value: &ExactRational) -> String {
    value.to_string()
}

pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Returns `m` when `1/lambda` is a positive integer `m`.
pub fn reciprocal_integer(lambda: &ExactRational) -> Option<u64> {
    if !lambda.is_positive() || !lambda.numer().is_one() {
        return None;
    }
    lambda.denom().to_u64()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial_coefficient(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(x)_n = x (x - 1) ... (x - n + 1)`.
pub fn falling_factorial(x: &ExactRational, n: u32) -> ExactRational {
    degenerate_falling_factorial(x, n, &ExactRational::one())
}

/// `<x>_n = x (x + 1) ... (x + n - 1)`.
pub fn rising_factorial(x: &ExactRational, n: u32) -> ExactRational {
    degenerate_falling_factorial(x, n, &-ExactRational::one())
}

/// `(x)_{n,lambda} = x (x - lambda) ... (x - (n - 1) lambda)`; `lambda = 0`
/// gives `x^n`.
pub fn degenerate_falling_factorial(x: &ExactRational, n: u32, lambda: &ExactRational) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return ExactRational::zero();
        }
        acc *= &factor;
        factor -= lambda;
    }
    acc
}

/// `(x)_m` for a nonnegative integer argument, kept in integers.
pub fn falling_factorial_int(x: u64, m: u32) -> BigInt {
    if (m as u64) > x {
        return BigInt::zero();
    }
    (0..m as u64).fold(BigInt::one(), |acc, j| acc * (x - j))
}

pub fn rising_factorial_int(x: u64, m: u32) -> BigInt {
    (0..m as u64).fold(BigInt::one(), |acc, j| acc * (x + j))
}
