use num_traits::{One, Zero};

use super::{exact_report, skipped_report, statistical_report, Mode, ParamSet, VerificationReport};
use crate::distributions::{DegenerateBinomial, DegeneratePoisson, Distribution, Observable, Value};
use crate::error::{Error, Result};
use crate::exact::{
    factorial, lah_closed_form, lah_number, stirling1_signed, stirling1_unsigned, stirling2, ExactRational,
};
use crate::montecarlo::{estimate_observable, InverseCdfSampler, SamplerStream};
use crate::polynomials::{
    bell_from_lahbell_degenerate, bell_polynomial, degenerate_bell_polynomial,
    degenerate_lah_bell_polynomial, degenerate_lah_bell_via_bell, lah_bell_polynomial,
    lah_bell_series_coefficients, lahbell_from_bell,
};

macro_rules! identities {
    ($($variant:ident => $tag:literal, $mode:ident, [$($param:literal),*];)*) => {
        /// Every identity the checker knows, keyed by a stable tag.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Identity {
            $($variant,)*
        }

        impl Identity {
            pub const ALL: &'static [Identity] = &[$(Identity::$variant,)*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(Identity::$variant => $tag,)*
                }
            }

            pub fn mode(self) -> Mode {
                match self {
                    $(Identity::$variant => Mode::$mode,)*
                }
            }

            /// Parameter names the identity reads.
            pub fn parameters(self) -> &'static [&'static str] {
                match self {
                    $(Identity::$variant => &[$($param),*],)*
                }
            }
        }
    };
}

identities! {
    StirlingInversion12 => "stirling-inversion-s1s2", Exact, ["n", "m"];
    StirlingInversion21 => "stirling-inversion-s2s1", Exact, ["n", "m"];
    LahClosedForm => "lah-closed-form", Exact, ["n", "k"];
    Stirling1RowSum => "stirling1-row-sum", Exact, ["n"];
    PowerBasis => "bell-power-basis", Exact, ["n", "k"];
    SeriesCoefficient => "lahbell-series", Exact, ["x", "n"];
    LahBellFromBell => "lahbell-from-bell", Exact, ["alpha", "n"];
    DegenerateConstructions => "dlahbell-constructions", Exact, ["n", "lambda", "l"];
    DegenerateInverse => "dlahbell-inverse", Exact, ["n", "lambda", "x"];
    BinomialMean => "theorem5-mean", Exact, ["n", "p", "lambda"];
    BinomialVariance => "db-variance", Exact, ["n", "p", "lambda"];
    BinomialNormalization => "db-normalization", Exact, ["n", "p", "lambda"];
    PoissonNormalization => "dp-normalization", Exact, ["alpha", "lambda"];
    PoissonMean => "dp-mean", Exact, ["alpha", "lambda"];
    PoissonVariance => "dp-variance", Exact, ["alpha", "lambda"];
    DegenerateRising => "dpoisson-rising", Exact, ["alpha", "lambda", "m"];
    DegenerateRisingDoubleStirling => "dpoisson-rising-double-stirling", Exact, ["alpha", "lambda", "m"];
    DegeneratePgf => "theorem9-pgf", Exact, ["alpha", "lambda", "t"];
    PoissonRisingMc => "theorem2-rising", Statistical, ["alpha", "m"];
    PoissonFallingMc => "poisson-falling", Statistical, ["alpha", "m"];
    PoissonRawMc => "poisson-raw", Statistical, ["alpha", "m"];
    PoissonPgfMc => "poisson-pgf", Statistical, ["alpha", "t"];
    DegenerateRisingMc => "dpoisson-rising-mc", Statistical, ["alpha", "lambda", "m"];
    BinomialMeanMc => "db-mean-mc", Statistical, ["n", "p", "lambda"];
}

impl Identity {
    pub fn from_tag(tag: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.tag() == tag)
            .ok_or_else(|| Error::UnknownIdentity(tag.to_string()))
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

fn int(n: impl Into<num_bigint::BigInt>) -> ExactRational {
    ExactRational::from_integer(n.into())
}

fn kronecker(a: u32, b: u32) -> ExactRational {
    if a == b {
        ExactRational::one()
    } else {
        ExactRational::zero()
    }
}

fn sum(terms: impl Iterator<Item = ExactRational>) -> ExactRational {
    terms.fold(ExactRational::zero(), |acc, t| acc + t)
}

fn binomial(params: &ParamSet) -> Result<DegenerateBinomial> {
    DegenerateBinomial::new(
        params.int("n")?,
        params.get("p")?.clone(),
        params.get("lambda")?.clone(),
    )
}

fn poisson(params: &ParamSet, classical: bool) -> Result<DegeneratePoisson> {
    let lambda = if classical {
        ExactRational::zero()
    } else {
        params.get("lambda")?.clone()
    };
    DegeneratePoisson::new(params.get("alpha")?.clone(), lambda)
}

/// Runs one identity instance. Statistical identities draw `samples` values
/// from `stream`; exact ones ignore both `samples` and `stream`.
///
/// Checks that need a finite support (or a nonnegative one, for sampling)
/// report `SKIPPED` when the parameters do not provide it.
pub fn verify_identity(
    tag: &str,
    params: &ParamSet,
    samples: u64,
    z_threshold: f64,
    stream: &mut SamplerStream,
) -> Result<VerificationReport> {
    let id = Identity::from_tag(tag)?;
    match id.mode() {
        Mode::Exact => exact_sides(id, params).map(|sides| match sides {
            Some((lhs, rhs)) => exact_report(id, params, &lhs, &rhs),
            None => skipped_report(id, params, Mode::Exact),
        }),
        Mode::Statistical => {
            if samples < 2 {
                return Err(Error::InvalidParameter(format!(
                    "need at least 2 samples, got {samples}"
                )));
            }
            let (distribution, f, target) = statistical_setup(id, params)?;
            let sampler = match InverseCdfSampler::new(&distribution) {
                Ok(sampler) => sampler,
                Err(Error::SignedMass { .. }) => return Ok(skipped_report(id, params, Mode::Statistical)),
                Err(e) => return Err(e),
            };
            let seed = stream.master_seed();
            let acc = estimate_observable(&sampler, &f, samples, stream);
            Ok(statistical_report(id, params, &target, &acc, z_threshold, seed))
        }
    }
}

/// Both sides of an exact identity, or `None` when the instance needs a
/// finite support it does not have.
fn exact_sides(id: Identity, params: &ParamSet) -> Result<Option<(ExactRational, ExactRational)>> {
    use Identity::*;
    let sides = match id {
        StirlingInversion12 | StirlingInversion21 => {
            let (n, m) = (params.int("n")?, params.int("m")?);
            let lhs = sum((0..=n.max(m)).map(|k| {
                let (k, n, m) = (k as usize, n as usize, m as usize);
                if id == StirlingInversion12 {
                    int(stirling1_signed(n, k) * stirling2(k, m))
                } else {
                    int(stirling2(n, k) * stirling1_signed(k, m))
                }
            }));
            (lhs, kronecker(n, m))
        }
        LahClosedForm => {
            let (n, k) = (params.int("n")? as usize, params.int("k")? as usize);
            (int(lah_closed_form(n as u64, k as u64)), int(lah_number(n, k)))
        }
        Stirling1RowSum => {
            let n = params.int("n")? as usize;
            let row = sum((0..=n).map(|k| int(stirling1_unsigned(n, k))));
            (row, int(factorial(n as u64)))
        }
        PowerBasis => {
            // sum_j S1(n,j) B_j(x) = x^n, compared coefficient by coefficient.
            let (n, k) = (params.int("n")?, params.int("k")?);
            let lhs = sum((0..=n as usize)
                .map(|j| int(stirling1_signed(n as usize, j)) * bell_polynomial(j).coefficient(k as usize)));
            (lhs, kronecker(n, k))
        }
        SeriesCoefficient => {
            let (x, n) = (params.get("x")?, params.int("n")? as usize);
            let series = lah_bell_series_coefficients(x, n);
            (series[n].clone(), lah_bell_polynomial(n).evaluate(x))
        }
        LahBellFromBell => {
            let (alpha, n) = (params.get("alpha")?, params.int("n")? as usize);
            let bells: Vec<_> = (0..=n).map(|k| bell_polynomial(k).evaluate(alpha)).collect();
            (
                lahbell_from_bell(n, &bells)?,
                lah_bell_polynomial(n).evaluate(alpha),
            )
        }
        DegenerateConstructions => {
            let (n, lambda, l) = (
                params.int("n")? as usize,
                params.get("lambda")?,
                params.int("l")? as usize,
            );
            (
                degenerate_lah_bell_polynomial(n, lambda).coefficient(l),
                degenerate_lah_bell_via_bell(n, lambda).coefficient(l),
            )
        }
        DegenerateInverse => {
            let (n, lambda, x) = (params.int("n")? as usize, params.get("lambda")?, params.get("x")?);
            let values = (0..=n)
                .map(|k| degenerate_lah_bell_polynomial(k, lambda).evaluate_at_x(x))
                .collect::<Result<Vec<_>>>()?;
            (
                bell_from_lahbell_degenerate(n, &values)?,
                degenerate_bell_polynomial(n, lambda).evaluate_at_x(x)?,
            )
        }
        BinomialMean => {
            let d = binomial(params)?;
            (d.mean(), d.mean_by_summation())
        }
        BinomialVariance => {
            let d = binomial(params)?;
            (d.variance(), d.variance_by_summation())
        }
        BinomialNormalization => (sum(binomial(params)?.masses().into_iter()), ExactRational::one()),
        PoissonNormalization | PoissonMean | PoissonVariance => {
            let d = poisson(params, false)?;
            let Some(masses) = d.exact_masses() else {
                return Ok(None);
            };
            let dist = Distribution::from(d.clone());
            let (mean, variance) = d.mean_variance();
            match id {
                PoissonNormalization => (sum(masses.into_iter()), ExactRational::one()),
                PoissonMean => (mean, exact(dist.raw_moment(1)?)?),
                _ => {
                    let m1 = exact(dist.raw_moment(1)?)?;
                    let m2 = exact(dist.raw_moment(2)?)?;
                    (variance, m2 - &m1 * &m1)
                }
            }
        }
        DegenerateRising | DegenerateRisingDoubleStirling => {
            let d = poisson(params, false)?;
            let (alpha, lambda) = (d.alpha().clone(), d.lambda().clone());
            let m = params.int("m")?;
            let dist = Distribution::from(d);
            if dist.finite_masses().is_none() {
                return Ok(None);
            }
            let direct = exact(dist.rising_factorial_moment(m)?)?;
            let other = if id == DegenerateRising {
                let bells = (0..=m as usize)
                    .map(|k| degenerate_bell_polynomial(k, &lambda).evaluate_at_x(&alpha))
                    .collect::<Result<Vec<_>>>()?;
                lahbell_from_bell(m as usize, &bells)?
            } else {
                degenerate_lah_bell_polynomial(m as usize, &lambda).evaluate_at_x(&alpha)?
            };
            (direct, other)
        }
        DegeneratePgf => {
            let dist = Distribution::from(poisson(params, false)?);
            if dist.finite_masses().is_none() {
                return Ok(None);
            }
            let t = params.get("t")?;
            (exact(dist.pgf_eval(t)?)?, exact(dist.pgf_direct(t)?)?)
        }
        PoissonRisingMc | PoissonFallingMc | PoissonRawMc | PoissonPgfMc | DegenerateRisingMc
        | BinomialMeanMc => unreachable!("statistical identity on the exact path"),
    };
    Ok(Some(sides))
}

fn exact(value: Value) -> Result<ExactRational> {
    match value {
        Value::Exact(v) => Ok(v),
        Value::Approx(_) => Err(Error::Domain("expected an exact value".to_string())),
    }
}

/// Distribution, observable and exact target of a statistical identity.
fn statistical_setup(id: Identity, params: &ParamSet) -> Result<(Distribution, Observable, Value)> {
    use Identity::*;
    Ok(match id {
        PoissonRisingMc | PoissonFallingMc | PoissonRawMc => {
            let d = poisson(params, true)?;
            let m = params.int("m")?;
            let alpha = d.alpha().clone();
            let (f, target) = match id {
                PoissonRisingMc => (
                    Observable::Rising(m),
                    lah_bell_polynomial(m as usize).evaluate(&alpha),
                ),
                PoissonFallingMc => (Observable::Falling(m), num_traits::pow(alpha, m as usize)),
                _ => (Observable::Power(m), bell_polynomial(m as usize).evaluate(&alpha)),
            };
            (d.into(), f, Value::Exact(target))
        }
        PoissonPgfMc => {
            let dist = Distribution::from(poisson(params, true)?);
            let t = params.get("t")?;
            let target = dist.pgf_eval(t)?;
            let s = (ExactRational::one() - t).recip();
            (dist, Observable::Geometric(s), target)
        }
        DegenerateRisingMc => {
            let d = poisson(params, false)?;
            let m = params.int("m")?;
            let target = degenerate_lah_bell_polynomial(m as usize, d.lambda()).evaluate_at_x(d.alpha())?;
            (d.into(), Observable::Rising(m), Value::Exact(target))
        }
        BinomialMeanMc => {
            let d = binomial(params)?;
            let target = d.mean();
            (d.into(), Observable::Power(1), Value::Exact(target))
        }
        _ => unreachable!("exact identity on the statistical path"),
    })
}
