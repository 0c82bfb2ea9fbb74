//! Degenerate binomial and degenerate Poisson random variables, with the
//! classical binomial and Poisson variables as their `lambda = 0` members.
//!
//! For generic `lambda` the mass formulas can go negative, so every
//! distribution is treated as a signed measure: identities and exact moments
//! are computed unconditionally, and [`SupportAnalysis`] reports where the
//! masses are negative so that samplers can refuse those cases.

mod binomial;
mod poisson;

pub use binomial::DegenerateBinomial;
pub use poisson::DegeneratePoisson;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{falling_factorial_int, rising_factorial_int, to_f64, ExactRational};

/// Result of an expectation: exact when it came from a finite rational sum,
/// approximate when a normalizer is irrational or a series was truncated.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(ExactRational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Approx(v) => *v,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Approx(v) => write!(f, "{v}"),
        }
    }
}

/// A function of the outcome whose expectation is taken.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    /// `i^m`
    Power(u32),
    /// `(i)_m`
    Falling(u32),
    /// `<i>_m`
    Rising(u32),
    /// `s^i`
    Geometric(ExactRational),
}

impl Observable {
    pub fn exact(&self, i: u64) -> ExactRational {
        match self {
            Observable::Power(m) => {
                ExactRational::from_integer(num_traits::pow(BigInt::from(i), *m as usize))
            }
            Observable::Falling(m) => ExactRational::from_integer(falling_factorial_int(i, *m)),
            Observable::Rising(m) => ExactRational::from_integer(rising_factorial_int(i, *m)),
            Observable::Geometric(s) => num_traits::pow(s.clone(), i as usize),
        }
    }

    pub fn approx(&self, i: u64) -> f64 {
        let x = i as f64;
        match self {
            Observable::Power(m) => x.powi(*m as i32),
            Observable::Falling(m) => (0..*m).map(|j| x - j as f64).product(),
            Observable::Rising(m) => (0..*m).map(|j| x + j as f64).product(),
            Observable::Geometric(s) => to_f64(s).powi(i as i32),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportAnalysis {
    pub finite: bool,
    /// Last index with nonzero mass, for finite supports.
    pub cutoff: Option<u64>,
    pub all_nonnegative: bool,
    /// Indices with negative mass among those inspected.
    pub negative_indices: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Binomial(DegenerateBinomial),
    Poisson(DegeneratePoisson),
}

impl From<DegenerateBinomial> for Distribution {
    fn from(d: DegenerateBinomial) -> Self {
        Distribution::Binomial(d)
    }
}

impl From<DegeneratePoisson> for Distribution {
    fn from(d: DegeneratePoisson) -> Self {
        Distribution::Poisson(d)
    }
}

impl Distribution {
    pub fn is_classical_poisson(&self) -> bool {
        matches!(self, Distribution::Poisson(d) if d.is_classical())
    }

    pub fn pmf(&self, i: u64) -> Value {
        match self {
            Distribution::Binomial(d) => Value::Exact(d.pmf(i)),
            Distribution::Poisson(d) => d.pmf(i),
        }
    }

    /// All masses of a finite support, exactly; `None` for infinite supports.
    pub fn finite_masses(&self) -> Option<Vec<ExactRational>> {
        match self {
            Distribution::Binomial(d) => Some(d.masses()),
            Distribution::Poisson(d) => d.exact_masses(),
        }
    }

    pub fn analyze_support(&self, horizon: u64) -> SupportAnalysis {
        match self {
            Distribution::Binomial(d) => d.analyze_support(horizon),
            Distribution::Poisson(d) => d.analyze_support(horizon),
        }
    }

    /// `E[f(X)]`: an exact sum over a finite support, a truncated series otherwise.
    pub fn expectation(&self, f: &Observable) -> Result<Value> {
        match self.finite_masses() {
            Some(masses) => Ok(Value::Exact(exact_expectation(&masses, f))),
            None => match self {
                Distribution::Poisson(d) => d.series_expectation(f).map(Value::Approx),
                Distribution::Binomial(_) => unreachable!("binomial supports are finite"),
            },
        }
    }

    /// `E[X^m]`. Classical Poisson moments are the Bell polynomial values `B_m(alpha)`.
    pub fn raw_moment(&self, m: u32) -> Result<Value> {
        match self {
            Distribution::Binomial(d) => Ok(Value::Exact(d.raw_moment(m))),
            Distribution::Poisson(d) if d.is_classical() => Ok(Value::Exact(
                crate::polynomials::bell_polynomial(m as usize).evaluate(d.alpha()),
            )),
            _ if m == 0 => Ok(Value::Exact(ExactRational::one())),
            _ => self.expectation(&Observable::Power(m)),
        }
    }

    /// `E[(X)_m]`; `alpha^m` in closed form for the classical Poisson.
    pub fn falling_factorial_moment(&self, m: u32) -> Result<Value> {
        match self {
            Distribution::Poisson(d) if d.is_classical() => {
                Ok(Value::Exact(num_traits::pow(d.alpha().clone(), m as usize)))
            }
            _ if m == 0 => Ok(Value::Exact(ExactRational::one())),
            _ => self.expectation(&Observable::Falling(m)),
        }
    }

    /// `E[<X>_m]`, always by direct summation so it can be checked against
    /// the Lah-Bell polynomials.
    pub fn rising_factorial_moment(&self, m: u32) -> Result<Value> {
        if m == 0 {
            return Ok(Value::Exact(ExactRational::one()));
        }
        self.expectation(&Observable::Rising(m))
    }

    /// `E[(1/(1-t))^X]` from its closed form.
    pub fn pgf_eval(&self, t: &ExactRational) -> Result<Value> {
        let s = pgf_argument(t)?;
        match self {
            Distribution::Binomial(d) => Ok(Value::Exact(exact_expectation(
                &d.masses(),
                &Observable::Geometric(s),
            ))),
            Distribution::Poisson(d) => d.pgf_closed_form(&s),
        }
    }

    /// `E[(1/(1-t))^X]` by summing over the support.
    pub fn pgf_direct(&self, t: &ExactRational) -> Result<Value> {
        let s = pgf_argument(t)?;
        if let Distribution::Poisson(d) = self {
            d.check_pgf_domain(&s)?;
        }
        self.expectation(&Observable::Geometric(s))
    }

    /// First index with negative mass, if any, looking at the whole finite
    /// support or `horizon` terms of an infinite one.
    pub fn first_negative_index(&self, horizon: u64) -> Option<u64> {
        self.analyze_support(horizon).negative_indices.first().copied()
    }
}

/// `1/(1-t)` for `|t| < 1`.
fn pgf_argument(t: &ExactRational) -> Result<ExactRational> {
    if t.abs() >= ExactRational::one() {
        return Err(Error::Domain(format!(
            "pgf argument t = {t} must satisfy |t| < 1"
        )));
    }
    Ok((ExactRational::one() - t).recip())
}

pub(crate) fn exact_expectation(masses: &[ExactRational], f: &Observable) -> ExactRational {
    masses
        .iter()
        .enumerate()
        .filter(|(_, mass)| !mass.is_zero())
        .map(|(i, mass)| f.exact(i as u64) * mass)
        .fold(ExactRational::zero(), |acc, term| acc + term)
}

pub(crate) fn sign_analysis(masses: &[ExactRational], horizon: u64) -> SupportAnalysis {
    let cutoff = masses.iter().rposition(|m| !m.is_zero()).map(|i| i as u64);
    let negative_indices: Vec<u64> = masses
        .iter()
        .enumerate()
        .take(horizon.saturating_add(1).min(masses.len() as u64) as usize)
        .filter(|(_, m)| m.is_negative())
        .map(|(i, _)| i as u64)
        .collect();
    SupportAnalysis {
        finite: true,
        cutoff,
        all_nonnegative: negative_indices.is_empty(),
        negative_indices,
    }
}
