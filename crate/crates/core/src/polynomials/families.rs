use num_bigint::BigInt;
use num_traits::Zero;

use super::{RationalPolynomial, Variable};
use crate::error::{Error, Result};
use crate::exact::{degenerate_falling_factorial, lah_number, stirling1_unsigned, stirling2, ExactRational};

fn from_integers(row: impl Iterator<Item = BigInt>, variable: Variable) -> RationalPolynomial {
    RationalPolynomial::new(row.map(ExactRational::from_integer).collect(), variable)
}

/// `B_n(x) = sum_k S2(n,k) x^k`.
pub fn bell_polynomial(n: usize) -> RationalPolynomial {
    from_integers((0..=n).map(|k| stirling2(n, k)), Variable::X)
}

/// `B_n^L(x) = sum_k L(n,k) x^k`.
pub fn lah_bell_polynomial(n: usize) -> RationalPolynomial {
    from_integers((0..=n).map(|k| lah_number(n, k)), Variable::X)
}

/// Number of partitions of an `n`-set into nonempty ordered lists.
pub fn lah_bell_number(n: usize) -> BigInt {
    (0..=n).map(|k| lah_number(n, k)).sum()
}

fn one_lambda(k: usize, lambda: &ExactRational) -> ExactRational {
    degenerate_falling_factorial(&ExactRational::from_integer(1.into()), k as u32, lambda)
}

/// Degenerate Bell polynomial `B_{n,lambda}(x) = sum_k (1)_{k,lambda} S2(n,k) y^k`
/// with `y = x/(1 + lambda x)`.
pub fn degenerate_bell_polynomial(n: usize, lambda: &ExactRational) -> RationalPolynomial {
    let coefficients = (0..=n)
        .map(|k| one_lambda(k, lambda) * ExactRational::from_integer(stirling2(n, k)))
        .collect();
    RationalPolynomial::new(
        coefficients,
        Variable::Y {
            lambda: lambda.clone(),
        },
    )
}

/// Degenerate Lah-Bell polynomial as a polynomial in `y = x/(1 + lambda x)`:
/// coefficient `l` is `(sum_{k=l}^n |S1(n,k)| S2(k,l)) (1)_{l,lambda}`.
pub fn degenerate_lah_bell_polynomial(n: usize, lambda: &ExactRational) -> RationalPolynomial {
    let coefficients = (0..=n)
        .map(|l| {
            let inner: BigInt = (l..=n).map(|k| stirling1_unsigned(n, k) * stirling2(k, l)).sum();
            ExactRational::from_integer(inner) * one_lambda(l, lambda)
        })
        .collect();
    let poly = RationalPolynomial::new(
        coefficients,
        Variable::Y {
            lambda: lambda.clone(),
        },
    );
    debug_assert!(n > 16 || poly == degenerate_lah_bell_via_bell(n, lambda));
    poly
}

/// Second construction of the degenerate Lah-Bell polynomial:
/// `sum_k |S1(n,k)| B_{k,lambda}`.
pub fn degenerate_lah_bell_via_bell(n: usize, lambda: &ExactRational) -> RationalPolynomial {
    (0..=n).fold(
        RationalPolynomial::zero(Variable::Y {
            lambda: lambda.clone(),
        }),
        |acc, k| {
            let weight = ExactRational::from_integer(stirling1_unsigned(n, k));
            acc.add(&degenerate_bell_polynomial(k, lambda).scale(&weight))
        },
    )
}

fn require(n: usize, values: &[ExactRational]) -> Result<()> {
    if values.len() <= n {
        return Err(Error::Length {
            expected: n + 1,
            actual: values.len(),
        });
    }
    Ok(())
}

/// `sum_k (-1)^(n-k) S1(n,k) values[k]`. With `values[k] = B_k(a)` this is
/// `B_n^L(a)`; with degenerate Bell values it is the degenerate Lah-Bell value.
pub fn lahbell_from_bell(n: usize, values: &[ExactRational]) -> Result<ExactRational> {
    require(n, values)?;
    Ok((0..=n)
        .map(|k| ExactRational::from_integer(stirling1_unsigned(n, k)) * &values[k])
        .fold(ExactRational::zero(), |acc, term| acc + term))
}

/// `sum_k (-1)^(n-k) S2(n,k) values[k]`, the inverse of [`lahbell_from_bell`].
pub fn bell_from_lahbell_degenerate(n: usize, values: &[ExactRational]) -> Result<ExactRational> {
    require(n, values)?;
    Ok((0..=n)
        .map(|k| {
            let s = ExactRational::from_integer(stirling2(n, k));
            let term = s * &values[k];
            if (n - k) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .fold(ExactRational::zero(), |acc, term| acc + term))
}

/// Applies [`lahbell_from_bell`] to every prefix of `values`.
pub fn lahbell_transform(values: &[ExactRational]) -> Vec<ExactRational> {
    (0..values.len())
        .map(|n| lahbell_from_bell(n, values).expect("prefix length checked"))
        .collect()
}

/// Applies [`bell_from_lahbell_degenerate`] to every prefix of `values`.
pub fn bell_transform(values: &[ExactRational]) -> Vec<ExactRational> {
    (0..values.len())
        .map(|n| bell_from_lahbell_degenerate(n, values).expect("prefix length checked"))
        .collect()
}
