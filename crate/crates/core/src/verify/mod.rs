//! Registry of identity checks and the reports they produce.
//!
//! Each identity compares two independently computed sides. Exact checks
//! pass only on literal equality of rationals; statistical checks compare a
//! Monte Carlo estimate against an exact target with a z-score.

mod identities;
mod suite;

pub use identities::{verify_identity, Identity};
pub use suite::{run_suite, suite_instances, Suite, SuiteConfig};

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::distributions::Value;
use crate::error::{Error, Result};
use crate::exact::{format_rational, to_f64, ExactRational};
use crate::montecarlo::Accumulator;

/// Default PASS/FAIL bound on `|z|` for statistical checks.
pub const DEFAULT_Z_THRESHOLD: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Exact,
    Statistical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub mode: Mode,
    pub lhs: String,
    pub rhs: String,
    pub discrepancy: String,
    pub status: Status,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

/// Named rational parameters of one identity instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamSet(BTreeMap<String, ExactRational>);

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: ExactRational) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn with_int(self, name: &str, value: u32) -> Self {
        self.with(name, ExactRational::from_integer(value.into()))
    }

    pub fn insert(&mut self, name: &str, value: ExactRational) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<&ExactRational> {
        self.0
            .get(name)
            .ok_or_else(|| Error::MissingParameter(name.to_string()))
    }

    /// A parameter that must be a nonnegative integer.
    pub fn int(&self, name: &str) -> Result<u32> {
        let value = self.get(name)?;
        if !value.is_integer() || value.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "{name} = {value} must be a nonnegative integer"
            )));
        }
        value
            .to_integer()
            .to_u32()
            .ok_or_else(|| Error::InvalidParameter(format!("{name} = {value} is too large")))
    }

    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.0
            .iter()
            .map(|(k, v)| (k.clone(), format_rational(v)))
            .collect()
    }
}

fn format_float(value: f64) -> String {
    format!("{value}")
}

pub(crate) fn exact_report(
    identity: Identity,
    params: &ParamSet,
    lhs: &ExactRational,
    rhs: &ExactRational,
) -> VerificationReport {
    let equal = lhs == rhs;
    VerificationReport {
        identity: identity.tag().to_string(),
        params: params.to_strings(),
        mode: Mode::Exact,
        lhs: format_rational(lhs),
        rhs: format_rational(rhs),
        discrepancy: if equal {
            "0".to_string()
        } else {
            format_float(to_f64(&(lhs - rhs).abs()))
        },
        status: if equal { Status::Pass } else { Status::Fail },
        seed: None,
        samples: None,
    }
}

pub(crate) fn skipped_report(identity: Identity, params: &ParamSet, mode: Mode) -> VerificationReport {
    VerificationReport {
        identity: identity.tag().to_string(),
        params: params.to_strings(),
        mode,
        lhs: "n/a".to_string(),
        rhs: "n/a".to_string(),
        discrepancy: "n/a".to_string(),
        status: Status::Skipped,
        seed: None,
        samples: None,
    }
}

/// `z = (estimate - target) / standard_error`; a zero standard error gives
/// `z = 0` on an exact hit and infinity otherwise.
pub fn z_score(estimate: f64, target: f64, standard_error: f64) -> f64 {
    let diff = estimate - target;
    if standard_error > 0.0 {
        diff / standard_error
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

pub(crate) fn statistical_report(
    identity: Identity,
    params: &ParamSet,
    target: &Value,
    estimate: &Accumulator,
    z_threshold: f64,
    seed: u64,
) -> VerificationReport {
    let z = z_score(estimate.mean(), target.to_f64(), estimate.standard_error());
    let mut params = params.to_strings();
    params.insert("z_threshold".to_string(), format_float(z_threshold));
    VerificationReport {
        identity: identity.tag().to_string(),
        params,
        mode: Mode::Statistical,
        lhs: target.to_string(),
        rhs: format_float(estimate.mean()),
        discrepancy: format_float(z.abs()),
        status: if z.abs() <= z_threshold {
            Status::Pass
        } else {
            Status::Fail
        },
        seed: Some(seed),
        samples: Some(estimate.count()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, rational};

    #[test]
    fn param_set_access() {
        let params = ParamSet::new().with_int("n", 3).with("p", rational(1, 2));
        assert_eq!(params.int("n").unwrap(), 3);
        assert!(params.int("p").is_err());
        assert_eq!(params.get("q"), Err(Error::MissingParameter("q".into())));
        assert_eq!(params.to_strings()["p"], "1/2");
    }

    #[test]
    fn exact_reports() {
        let params = ParamSet::new();
        let pass = exact_report(Identity::BinomialMean, &params, &integer(1), &integer(1));
        assert_eq!((pass.status, pass.discrepancy.as_str()), (Status::Pass, "0"));
        let fail = exact_report(Identity::BinomialMean, &params, &integer(1), &rational(3, 4));
        assert_eq!((fail.status, fail.discrepancy.as_str()), (Status::Fail, "0.25"));
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(1.0, 1.0, 0.0), 0.0);
        assert!(z_score(1.0, 2.0, 0.0).is_infinite());
        assert_eq!(z_score(3.0, 2.0, 0.5), 2.0);
    }
}
