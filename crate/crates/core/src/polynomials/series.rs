use num_traits::{One, Zero};

use crate::exact::{factorial, ExactRational};

/// Formal power series `sum_{i < order} c_i t^i + O(t^order)` with exact
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<ExactRational>,
}

impl TruncatedSeries {
    /// Keeps the first `order` coefficients, padding with zeros.
    pub fn new(mut coefficients: Vec<ExactRational>, order: usize) -> Self {
        coefficients.resize(order, ExactRational::zero());
        Self { coefficients }
    }

    pub fn one(order: usize) -> Self {
        let mut coefficients = vec![ExactRational::zero(); order];
        if let Some(c) = coefficients.first_mut() {
            *c = ExactRational::one();
        }
        Self { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![ExactRational::zero(); order];
        for (i, a) in self.coefficients.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(order - i) {
                out[i + j] += a * b;
            }
        }
        Self { coefficients: out }
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coefficients: (0..order)
                .map(|i| &self.coefficients[i] + &other.coefficients[i])
                .collect(),
        }
    }

    /// `exp(self)` by composing with `sum_j u^j / j!`; requires a zero
    /// constant term so that the composition is finite at this order.
    pub fn exp(&self) -> Self {
        assert!(
            self.coefficients.first().is_none_or(Zero::is_zero),
            "exp composition needs a zero constant term"
        );
        let order = self.order();
        let mut total = Self::one(order);
        let mut power = Self::one(order);
        let mut inv_factorial = ExactRational::one();
        for j in 1..order {
            power = power.mul(self);
            inv_factorial /= ExactRational::from_integer(j.into());
            total = total.add(&power.scale(&inv_factorial));
        }
        total
    }
}

/// `[B_0^L(x), ..., B_order^L(x)]` read off the exponential generating
/// function `exp(x (1/(1-t) - 1))`, expanded as a truncated power series.
pub fn lah_bell_series_coefficients(x: &ExactRational, order: usize) -> Vec<ExactRational> {
    let len = order + 1;
    // x (1/(1-t) - 1) = x (t + t^2 + ...)
    let inner = TruncatedSeries::new(
        (0..len)
            .map(|i| if i == 0 { ExactRational::zero() } else { x.clone() })
            .collect(),
        len,
    );
    inner
        .exp()
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| c * ExactRational::from_integer(factorial(n as u64)))
        .collect()
}
