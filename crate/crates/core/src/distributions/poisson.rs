use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{sign_analysis, Observable, SupportAnalysis, Value};
use crate::error::{Error, Result};
use crate::exact::{
    degenerate_exp, degenerate_falling_factorial, factorial, reciprocal_integer, to_f64, ExactRational,
};

/// Relative tolerance for dropping series terms.
pub const SERIES_TOLERANCE: f64 = 1e-14;
/// Consecutive small terms required before a series is cut off.
pub const SERIES_QUIET_TERMS: usize = 5;
pub const SERIES_TERM_BUDGET: usize = 100_000;

/// Degenerate Poisson variable with masses
/// `e_lambda^{-1}(alpha) alpha^i (1)_{i,lambda} / i!`.
///
/// `lambda = 0` is the classical Poisson variable. When `1/lambda = m` is an
/// integer the support is `{0, ..., m}` and every mass is a nonnegative
/// rational. Otherwise the support is infinite and the masses are summed as
/// a binomial series, which needs `lambda * alpha < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneratePoisson {
    alpha: ExactRational,
    lambda: ExactRational,
    support: Option<u64>,
    masses: Option<Arc<[ExactRational]>>,
}

impl DegeneratePoisson {
    pub fn new(alpha: ExactRational, lambda: ExactRational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} must be positive"
            )));
        }
        if lambda.is_negative() || lambda >= ExactRational::one() {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} must lie in [0, 1)"
            )));
        }
        let support = reciprocal_integer(&lambda);
        if !lambda.is_zero() && support.is_none() && &lambda * &alpha >= ExactRational::one() {
            return Err(Error::InvalidParameter(format!(
                "lambda*alpha = {} must be below 1 when 1/lambda is not an integer",
                &lambda * &alpha
            )));
        }
        let mut d = Self {
            alpha,
            lambda,
            support,
            masses: None,
        };
        d.masses = d.compute_masses();
        Ok(d)
    }

    pub fn alpha(&self) -> &ExactRational {
        &self.alpha
    }

    pub fn lambda(&self) -> &ExactRational {
        &self.lambda
    }

    pub fn is_classical(&self) -> bool {
        self.lambda.is_zero()
    }

    /// `m` when `1/lambda = m` is an integer.
    pub fn support_size(&self) -> Option<u64> {
        self.support
    }

    fn base(&self) -> ExactRational {
        ExactRational::one() + &self.lambda * &self.alpha
    }

    /// `e_lambda^{-1}(alpha) = (1 + lambda alpha)^{-1/lambda}`.
    pub fn normalizer(&self) -> Value {
        match self.support {
            Some(m) => Value::Exact(num_traits::pow(self.base(), m as usize).recip()),
            None => Value::Approx(
                degenerate_exp(&-ExactRational::one(), &self.alpha, &self.lambda)
                    .expect("1 + lambda*alpha > 0 for alpha > 0, lambda >= 0"),
            ),
        }
    }

    pub fn pmf(&self, i: u64) -> Value {
        if let Some(masses) = &self.masses {
            return Value::Exact(
                masses
                    .get(i as usize)
                    .cloned()
                    .unwrap_or_else(ExactRational::zero),
            );
        }
        let ratio = num_traits::pow(self.alpha.clone(), i as usize)
            * degenerate_falling_factorial(&ExactRational::one(), i as u32, &self.lambda)
            / ExactRational::from_integer(factorial(i));
        Value::Approx(self.normalizer().to_f64() * to_f64(&ratio))
    }

    /// Masses on `{0, ..., m}` for integer `1/lambda`.
    pub fn exact_masses(&self) -> Option<Vec<ExactRational>> {
        self.masses.as_deref().map(<[_]>::to_vec)
    }

    // p(i+1) = p(i) alpha (1 - i lambda) / (i + 1)
    fn compute_masses(&self) -> Option<Arc<[ExactRational]>> {
        let m = self.support?;
        let Value::Exact(mut mass) = self.normalizer() else {
            unreachable!("finite support has an exact normalizer")
        };
        let mut out = Vec::with_capacity(m as usize + 1);
        for i in 0..=m {
            out.push(mass.clone());
            let i = ExactRational::from_integer(i.into());
            mass =
                mass * &self.alpha * (ExactRational::one() - &i * &self.lambda) / (i + ExactRational::one());
        }
        Some(out.into())
    }

    /// `(alpha / (1 + alpha lambda), alpha / (1 + alpha lambda)^2)`.
    pub fn mean_variance(&self) -> (ExactRational, ExactRational) {
        let base = self.base();
        let mean = &self.alpha / &base;
        let variance = &mean / &base;
        (mean, variance)
    }

    pub fn analyze_support(&self, horizon: u64) -> SupportAnalysis {
        if let Some(masses) = &self.masses {
            return sign_analysis(masses, horizon);
        }
        if self.is_classical() {
            return SupportAnalysis {
                finite: false,
                cutoff: None,
                all_nonnegative: true,
                negative_indices: Vec::new(),
            };
        }
        // (1)_{i,lambda} picks up one negative factor per j > 1/lambda, so the
        // masses alternate in sign from index floor(1/lambda) + 2 on.
        let first_negative_factor = self
            .lambda
            .recip()
            .floor()
            .to_integer()
            .to_u64()
            .unwrap_or(u64::MAX)
            + 1;
        let first_negative = first_negative_factor + 1;
        let mut negative_indices: Vec<u64> = (first_negative..=horizon.max(first_negative))
            .filter(|i| (i - first_negative_factor) % 2 == 1)
            .collect();
        if negative_indices.is_empty() {
            negative_indices.push(first_negative);
        }
        SupportAnalysis {
            finite: false,
            cutoff: None,
            all_nonnegative: false,
            negative_indices,
        }
    }

    /// `sum_i f(i) p(i)` for an infinite support, truncated once
    /// `SERIES_QUIET_TERMS` consecutive terms fall below
    /// `SERIES_TOLERANCE` times the accumulated absolute sum.
    pub fn series_expectation(&self, f: &Observable) -> Result<f64> {
        let alpha = to_f64(&self.alpha);
        let lambda = to_f64(&self.lambda);
        let mut mass = self.normalizer().to_f64();
        let mut sum = 0.0f64;
        let mut compensation = 0.0f64;
        let mut absolute = 0.0f64;
        let mut quiet = 0usize;
        for i in 0..SERIES_TERM_BUDGET as u64 {
            let term = f.approx(i) * mass;
            if !term.is_finite() {
                break;
            }
            // Neumaier summation
            let next = sum + term;
            if sum.abs() >= term.abs() {
                compensation += (sum - next) + term;
            } else {
                compensation += (term - next) + sum;
            }
            sum = next;
            if term.abs() < SERIES_TOLERANCE * absolute {
                quiet += 1;
                if quiet >= SERIES_QUIET_TERMS {
                    return Ok(sum + compensation);
                }
            } else {
                quiet = 0;
            }
            absolute += term.abs();
            mass *= alpha * (1.0 - i as f64 * lambda) / (i + 1) as f64;
        }
        Err(Error::Convergence {
            budget: SERIES_TERM_BUDGET,
        })
    }

    pub(super) fn check_pgf_domain(&self, s: &ExactRational) -> Result<()> {
        let shifted = ExactRational::one() + &self.lambda * &self.alpha * s;
        if !shifted.is_positive() {
            return Err(Error::Domain(format!(
                "1 + lambda*alpha/(1-t) = {shifted} must be positive"
            )));
        }
        if self.support.is_none()
            && !self.is_classical()
            && (&self.lambda * &self.alpha * s).abs() >= ExactRational::one()
        {
            return Err(Error::Convergence {
                budget: SERIES_TERM_BUDGET,
            });
        }
        Ok(())
    }

    /// `e_lambda^{-1}(alpha) e_lambda(alpha s)` with `s = 1/(1-t)`.
    pub(super) fn pgf_closed_form(&self, s: &ExactRational) -> Result<Value> {
        let shifted = ExactRational::one() + &self.lambda * &self.alpha * s;
        if !shifted.is_positive() {
            return Err(Error::Domain(format!(
                "1 + lambda*alpha/(1-t) = {shifted} must be positive"
            )));
        }
        if self.is_classical() {
            let exponent = to_f64(&(&self.alpha * (s - ExactRational::one())));
            return Ok(Value::Approx(exponent.exp()));
        }
        match self.support {
            Some(m) => Ok(Value::Exact(num_traits::pow(shifted / self.base(), m as usize))),
            None => {
                let inverse = degenerate_exp(&-ExactRational::one(), &self.alpha, &self.lambda)?;
                let forward = degenerate_exp(&ExactRational::one(), &(&self.alpha * s), &self.lambda)?;
                Ok(Value::Approx(inverse * forward))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Distribution;
    use crate::exact::{integer, rational};

    fn dp(alpha: ExactRational, lambda: ExactRational) -> DegeneratePoisson {
        DegeneratePoisson::new(alpha, lambda).unwrap()
    }

    #[test]
    fn pmf_examples() {
        let d = dp(integer(1), rational(1, 2));
        assert_eq!(d.pmf(0), Value::Exact(rational(4, 9)));
        assert_eq!(d.pmf(2), Value::Exact(rational(1, 9)));
        assert_eq!(d.pmf(3), Value::Exact(integer(0)));
        assert_eq!(
            d.exact_masses().unwrap().iter().sum::<ExactRational>(),
            integer(1)
        );
    }

    #[test]
    fn classical_pmf_is_approximate() {
        let d = dp(integer(2), integer(0));
        let expected = (-2f64).exp() * 8.0 / 6.0;
        assert!((d.pmf(3).to_f64() - expected).abs() < 1e-15);
        assert!(d.exact_masses().is_none());
    }

    #[test]
    fn construction() {
        assert!(DegeneratePoisson::new(integer(0), rational(1, 2)).is_err());
        assert!(DegeneratePoisson::new(integer(1), integer(1)).is_err());
        // non-integer 1/lambda needs lambda*alpha < 1
        assert!(DegeneratePoisson::new(integer(3), rational(2, 5)).is_err());
        assert!(DegeneratePoisson::new(integer(2), rational(2, 5)).is_ok());
        // integer 1/lambda has finite support, any alpha is fine
        assert!(DegeneratePoisson::new(integer(30), rational(1, 3)).is_ok());
    }

    #[test]
    fn mean_variance_examples() {
        assert_eq!(
            dp(integer(1), rational(1, 2)).mean_variance(),
            (rational(2, 3), rational(4, 9))
        );
        assert_eq!(
            dp(integer(3), integer(0)).mean_variance(),
            (integer(3), integer(3))
        );
        assert_eq!(
            dp(integer(1), rational(1, 3)).mean_variance(),
            (rational(3, 4), rational(9, 16))
        );
    }

    #[test]
    fn support_examples() {
        let d = dp(integer(1), rational(1, 2));
        assert_eq!(
            d.analyze_support(100),
            SupportAnalysis {
                finite: true,
                cutoff: Some(2),
                all_nonnegative: true,
                negative_indices: vec![]
            }
        );
        let classical = dp(integer(1), integer(0)).analyze_support(50);
        assert!(!classical.finite && classical.all_nonnegative);
        // 1/lambda = 2.5: factors 1, 0.6, 0.2, -0.2, -0.6, ...
        let signed = dp(integer(1), rational(2, 5)).analyze_support(8);
        assert!(!signed.finite && !signed.all_nonnegative);
        assert_eq!(signed.negative_indices, vec![4, 6, 8]);
        let short = dp(integer(1), rational(2, 5)).analyze_support(1);
        assert_eq!(short.negative_indices, vec![4]);
    }

    #[test]
    fn signs_of_infinite_support_match_exact_masses() {
        let d = dp(rational(1, 3), rational(2, 7));
        let analysis = d.analyze_support(20);
        for i in 0..=20u64 {
            let sign = degenerate_falling_factorial(&integer(1), i as u32, d.lambda());
            assert_eq!(
                sign.is_negative(),
                analysis.negative_indices.contains(&i),
                "index {i}"
            );
        }
    }

    #[test]
    fn series_matches_closed_forms() {
        let d = dp(rational(3, 2), rational(2, 5));
        let (mean, variance) = d.mean_variance();
        let m1 = d.series_expectation(&Observable::Power(1)).unwrap();
        let m2 = d.series_expectation(&Observable::Power(2)).unwrap();
        assert!((m1 - to_f64(&mean)).abs() < 1e-12);
        assert!((m2 - m1 * m1 - to_f64(&variance)).abs() < 1e-12);
        let total = d.series_expectation(&Observable::Power(0)).unwrap();
        assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn pgf_examples() {
        let d: Distribution = dp(integer(1), rational(1, 2)).into();
        assert_eq!(d.pgf_eval(&integer(0)).unwrap(), Value::Exact(integer(1)));
        assert_eq!(
            d.pgf_eval(&rational(1, 2)).unwrap(),
            Value::Exact(rational(16, 9))
        );
        assert_eq!(
            d.pgf_direct(&rational(1, 2)).unwrap(),
            Value::Exact(rational(16, 9))
        );
        let c: Distribution = dp(integer(1), integer(0)).into();
        let closed = c.pgf_eval(&rational(1, 2)).unwrap().to_f64();
        assert!((closed - std::f64::consts::E).abs() < 1e-9);
        let direct = c.pgf_direct(&rational(1, 2)).unwrap().to_f64();
        assert!((direct - std::f64::consts::E).abs() < 1e-9);
        assert!(matches!(d.pgf_eval(&integer(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn pgf_divergent_direct_sum_is_reported() {
        // lambda*alpha*s = (2/5)(2)(2) > 1
        let d: Distribution = dp(integer(2), rational(2, 5)).into();
        assert!(d.pgf_eval(&rational(1, 2)).is_ok());
        assert!(matches!(
            d.pgf_direct(&rational(1, 2)),
            Err(Error::Convergence { .. })
        ));
    }
}
