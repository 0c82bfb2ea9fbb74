use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{to_f64, ExactRational};
use crate::error::{Error, Result};

fn check_domain(t: &ExactRational, lambda: &ExactRational) -> Result<ExactRational> {
    let base = ExactRational::one() + lambda * t;
    if !lambda.is_zero() && !base.is_positive() {
        return Err(Error::Domain(format!(
            "1 + lambda*t = {base} must be positive (lambda = {lambda}, t = {t})"
        )));
    }
    Ok(base)
}

/// Degenerate exponential `e_lambda^x(t) = (1 + lambda t)^(x/lambda)`,
/// `exp(x t)` when `lambda = 0`.
pub fn degenerate_exp(x: &ExactRational, t: &ExactRational, lambda: &ExactRational) -> Result<f64> {
    let base = check_domain(t, lambda)?;
    if let Some(exact) = exact_power(x, &base, lambda, EXACT_EXPONENT_LIMIT) {
        return Ok(to_f64(&exact));
    }
    if lambda.is_zero() {
        return Ok((to_f64(x) * to_f64(t)).exp());
    }
    let exponent = to_f64(&(x / lambda));
    let log_base = to_f64(&(lambda * t)).ln_1p();
    Ok((exponent * log_base).exp())
}

/// Exact value of `e_lambda^x(t)` when `x/lambda` is an integer (or the
/// result is trivially 1); `None` otherwise.
pub fn degenerate_exp_exact(
    x: &ExactRational,
    t: &ExactRational,
    lambda: &ExactRational,
) -> Result<Option<ExactRational>> {
    let base = check_domain(t, lambda)?;
    Ok(exact_power(x, &base, lambda, usize::MAX))
}

/// Beyond this exponent the float path is used instead of an exact power.
const EXACT_EXPONENT_LIMIT: usize = 64;

fn exact_power(
    x: &ExactRational,
    base: &ExactRational,
    lambda: &ExactRational,
    limit: usize,
) -> Option<ExactRational> {
    if x.is_zero() || (base.is_one() && !lambda.is_zero()) {
        return Some(ExactRational::one());
    }
    if lambda.is_zero() {
        return None;
    }
    let ratio = x / lambda;
    if !ratio.is_integer() {
        return None;
    }
    let m = ratio.to_integer();
    let magnitude = m.abs().to_usize().filter(|&e| e <= limit)?;
    let power = num_traits::pow(base.clone(), magnitude);
    Some(if m.is_negative() { power.recip() } else { power })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, rational};

    #[test]
    fn examples() {
        let v = degenerate_exp(&integer(0), &integer(5), &rational(1, 3)).unwrap();
        assert_eq!(v, 1.0);
        let exact = degenerate_exp_exact(&integer(1), &integer(1), &rational(1, 2)).unwrap();
        assert_eq!(exact, Some(rational(9, 4)));
        let near = degenerate_exp(&integer(1), &integer(1), &rational(1, 1_000_000)).unwrap();
        assert!((near - std::f64::consts::E).abs() < 1e-4);
    }

    #[test]
    fn classical_limit_and_negative_exponent() {
        let v = degenerate_exp(&integer(2), &rational(1, 2), &integer(0)).unwrap();
        assert!((v - 1f64.exp()).abs() < 1e-15);
        // e_{1/2}^{-1}(1) = (3/2)^{-2}
        let exact = degenerate_exp_exact(&integer(-1), &integer(1), &rational(1, 2)).unwrap();
        assert_eq!(exact, Some(rational(4, 9)));
        assert_eq!(
            degenerate_exp_exact(&integer(1), &integer(1), &integer(0)).unwrap(),
            None
        );
        assert_eq!(
            degenerate_exp_exact(&integer(1), &integer(1), &rational(2, 3)).unwrap(),
            None
        );
    }

    #[test]
    fn domain_error() {
        assert!(matches!(
            degenerate_exp(&integer(1), &integer(-2), &rational(1, 2)),
            Err(Error::Domain(_))
        ));
        assert!(degenerate_exp_exact(&integer(1), &integer(-3), &rational(1, 2)).is_err());
    }

    #[test]
    fn truncated_series_approaches_closed_form() {
        // sum_{k<=200} (x)_{k,lambda} t^k / k!
        let cases = [
            (rational(1, 1), rational(1, 2), rational(1, 3)),
            (rational(-3, 2), rational(7, 5), rational(2, 5)),
            (rational(5, 7), rational(-9, 10), rational(3, 4)),
            (rational(2, 1), rational(3, 2), rational(-1, 3)),
        ];
        for (x, t, lambda) in cases {
            let mut sum = 0.0f64;
            let mut term = ExactRational::one();
            for k in 0..=200u32 {
                sum += to_f64(&term);
                // (x)_{k+1,lambda} t^{k+1} / (k+1)! from the k-th term
                term = term * (&x - &lambda * integer(k as i64)) * &t / integer(k as i64 + 1);
            }
            let closed = degenerate_exp(&x, &t, &lambda).unwrap();
            assert!(
                (sum - closed).abs() < 1e-10,
                "{x} {t} {lambda}: {sum} vs {closed}"
            );
        }
    }
}
