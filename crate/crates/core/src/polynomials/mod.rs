//! Dense univariate polynomials with exact coefficients, and the four
//! polynomial families built on the number triangles: Bell, Lah-Bell,
//! degenerate Bell and degenerate Lah-Bell.
//!
//! The degenerate families are polynomials in `y = x / (1 + lambda x)`
//! rather than in `x`; that is recorded in the [`Variable`] tag and
//! [`RationalPolynomial::evaluate_at_x`] performs the substitution.

mod families;
mod series;

pub use families::{
    bell_from_lahbell_degenerate, bell_polynomial, bell_transform, degenerate_bell_polynomial,
    degenerate_lah_bell_polynomial, degenerate_lah_bell_via_bell, lah_bell_number, lah_bell_polynomial,
    lahbell_from_bell, lahbell_transform,
};
pub use series::{lah_bell_series_coefficients, TruncatedSeries};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variable {
    /// The plain variable `x`.
    X,
    /// `y = x / (1 + lambda x)`.
    Y { lambda: ExactRational },
}

impl Variable {
    pub fn tag(&self) -> &'static str {
        match self {
            Variable::X => "x",
            Variable::Y { .. } => "y",
        }
    }

    pub fn lambda(&self) -> Option<&ExactRational> {
        match self {
            Variable::X => None,
            Variable::Y { lambda } => Some(lambda),
        }
    }

    /// Maps an `x` value into this variable.
    pub fn substitute(&self, x: &ExactRational) -> Result<ExactRational> {
        match self {
            Variable::X => Ok(x.clone()),
            Variable::Y { lambda } => {
                let denominator = ExactRational::one() + lambda * x;
                if denominator.is_zero() {
                    return Err(Error::Evaluation {
                        x: x.to_string(),
                        lambda: lambda.to_string(),
                    });
                }
                Ok(x / denominator)
            }
        }
    }
}

/// `sum_i coefficients[i] * v^i`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coefficients: Vec<ExactRational>,
    variable: Variable,
}

impl RationalPolynomial {
    pub fn new(mut coefficients: Vec<ExactRational>, variable: Variable) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self {
            coefficients,
            variable,
        }
    }

    pub fn zero(variable: Variable) -> Self {
        Self::new(Vec::new(), variable)
    }

    pub fn constant(value: ExactRational, variable: Variable) -> Self {
        Self::new(vec![value], variable)
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> ExactRational {
        self.coefficients.get(power).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn variable(&self) -> &Variable {
        &self.variable
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Horner evaluation in the polynomial's own variable.
    pub fn evaluate(&self, value: &ExactRational) -> ExactRational {
        self.coefficients
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * value + c)
    }

    /// Evaluates at a value of `x`, substituting `y = x/(1 + lambda x)` for
    /// Y-tagged polynomials.
    pub fn evaluate_at_x(&self, x: &ExactRational) -> Result<ExactRational> {
        Ok(self.evaluate(&self.variable.substitute(x)?))
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        Self::new(
            self.coefficients.iter().map(|c| c * factor).collect(),
            self.variable.clone(),
        )
    }

    /// Sum of two polynomials in the same variable. Panics on a variable mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.variable, other.variable,
            "adding polynomials in different variables"
        );
        let len = self.coefficients.len().max(other.coefficients.len());
        let coefficients = (0..len)
            .map(|i| self.coefficient(i) + other.coefficient(i))
            .collect();
        Self::new(coefficients, self.variable.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.variable, other.variable,
            "multiplying polynomials in different variables"
        );
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.variable.clone());
        }
        let mut out = vec![ExactRational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, self.variable.clone())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.variable.tag();
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < ExactRational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coefficient = power == 0 || !magnitude.is_one();
            if show_coefficient {
                if magnitude.is_integer() || power == 0 {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            match power {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{power}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
