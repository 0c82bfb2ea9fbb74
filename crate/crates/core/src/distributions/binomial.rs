use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{exact_expectation, sign_analysis, Observable, SupportAnalysis};
use crate::error::{Error, Result};
use crate::exact::{binomial_coefficient, degenerate_falling_factorial, to_f64, ExactRational};

/// Degenerate binomial variable `B_lambda(n, p)` with masses
/// `C(n,i) (p)_{i,lambda} (1-p)_{n-i,lambda} / (1)_{n,lambda}` on `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateBinomial {
    n: u32,
    p: ExactRational,
    lambda: ExactRational,
    /// `(1)_{n,lambda}`
    normalizer: ExactRational,
    masses: Arc<[ExactRational]>,
}

/// `C(n,i) (p)_{i,lambda} (q)_{n-i,lambda} / (1)_{n,lambda}` for all `i`,
/// with both generalized falling factorials built up incrementally.
fn masses(
    n: u32,
    p: &ExactRational,
    lambda: &ExactRational,
    normalizer: &ExactRational,
) -> Arc<[ExactRational]> {
    let q = ExactRational::one() - p;
    let partial = |x: &ExactRational| {
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut acc = ExactRational::one();
        out.push(acc.clone());
        for j in 0..n {
            acc *= x - lambda * ExactRational::from_integer(j.into());
            out.push(acc.clone());
        }
        out
    };
    let (ps, qs) = (partial(p), partial(&q));
    (0..=n as usize)
        .map(|i| {
            ExactRational::from_integer(binomial_coefficient(n as u64, i as u64))
                * &ps[i]
                * &qs[n as usize - i]
                / normalizer
        })
        .collect()
}

impl DegenerateBinomial {
    /// Fails unless `0 <= p <= 1`, `0 <= lambda < 1` and `(1)_{n,lambda} != 0`.
    pub fn new(n: u32, p: ExactRational, lambda: ExactRational) -> Result<Self> {
        if p.is_negative() || p > ExactRational::one() {
            return Err(Error::InvalidParameter(format!("p = {p} must lie in [0, 1]")));
        }
        if lambda.is_negative() || lambda >= ExactRational::one() {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} must lie in [0, 1)"
            )));
        }
        let normalizer = degenerate_falling_factorial(&ExactRational::one(), n, &lambda);
        if normalizer.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "(1)_{{{n},lambda}} vanishes for lambda = {lambda}"
            )));
        }
        let masses = masses(n, &p, &lambda, &normalizer);
        Ok(Self {
            n,
            p,
            lambda,
            normalizer,
            masses,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> &ExactRational {
        &self.p
    }

    pub fn lambda(&self) -> &ExactRational {
        &self.lambda
    }

    pub fn pmf(&self, i: u64) -> ExactRational {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.masses.get(i).cloned())
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn masses(&self) -> Vec<ExactRational> {
        self.masses.to_vec()
    }

    pub fn analyze_support(&self, horizon: u64) -> SupportAnalysis {
        sign_analysis(&self.masses, horizon)
    }

    /// `E[X] = n p (1-lambda)_{n-1,lambda} / (1)_{n,lambda}`.
    pub fn mean(&self) -> ExactRational {
        if self.n == 0 {
            return ExactRational::zero();
        }
        let shifted = ExactRational::one() - &self.lambda;
        ExactRational::from_integer(self.n.into())
            * &self.p
            * degenerate_falling_factorial(&shifted, self.n - 1, &self.lambda)
            / &self.normalizer
    }

    /// `(n p / (1)_{n,lambda}) (1-2lambda)_{n-2,lambda} ((n-1)p + 1 - n lambda - E[X](1-lambda))`
    /// for `n >= 2`; a direct sum over the support for `n < 2`.
    pub fn variance(&self) -> ExactRational {
        if self.n < 2 {
            return self.variance_by_summation();
        }
        let one = ExactRational::one();
        let n = ExactRational::from_integer(self.n.into());
        let lead = &n * &self.p / &self.normalizer;
        let twice = &one - &self.lambda * ExactRational::from_integer(2.into());
        let tail = degenerate_falling_factorial(&twice, self.n - 2, &self.lambda);
        let bracket = (&n - &one) * &self.p + &one - &n * &self.lambda - self.mean() * (&one - &self.lambda);
        lead * tail * bracket
    }

    pub fn variance_by_summation(&self) -> ExactRational {
        let mean = exact_expectation(&self.masses, &Observable::Power(1));
        exact_expectation(&self.masses, &Observable::Power(2)) - &mean * &mean
    }

    pub fn mean_by_summation(&self) -> ExactRational {
        exact_expectation(&self.masses, &Observable::Power(1))
    }

    /// `E[X^m] = (1/(1)_{n,lambda}) sum_i C(n,i) i^m (p)_{i,lambda} (1-p)_{n-i,lambda}`,
    /// the `m`-th derivative of the moment generating function at 0.
    pub fn raw_moment(&self, m: u32) -> ExactRational {
        exact_expectation(&self.masses, &Observable::Power(m))
    }

    /// `E[e^{tX}]`.
    pub fn mgf(&self, t: f64) -> f64 {
        self.masses()
            .iter()
            .enumerate()
            .map(|(i, mass)| (i as f64 * t).exp() * to_f64(mass))
            .sum()
    }
}
