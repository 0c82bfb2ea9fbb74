use std::str::FromStr;

use rand::Rng;

use super::{verify_identity, Identity, ParamSet, VerificationReport, DEFAULT_Z_THRESHOLD};
use crate::distributions::DegenerateBinomial;
use crate::error::{Error, Result};
use crate::exact::{integer, rational, ExactRational};
use crate::montecarlo::SamplerStream;

/// Stream index reserved for drawing random suite parameters; statistical
/// instances use their ordinal in the suite.
const PARAMETER_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Stirling,
    Lahbell,
    Dbinomial,
    Dpoisson,
    Pgf,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "stirling", "lahbell", "dbinomial", "dpoisson", "pgf"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Stirling => "stirling",
            Suite::Lahbell => "lahbell",
            Suite::Dbinomial => "dbinomial",
            Suite::Dpoisson => "dpoisson",
            Suite::Pgf => "pgf",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::All,
            Suite::Stirling,
            Suite::Lahbell,
            Suite::Dbinomial,
            Suite::Dpoisson,
            Suite::Pgf,
        ]
        .into_iter()
        .find(|suite| suite.name() == s)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_max: u32,
    pub seed: u64,
    /// Number of randomly drawn parameter sets per randomized family.
    pub trials: u32,
    /// Draws per statistical instance.
    pub samples: u64,
    pub z_threshold: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: 12,
            seed: 0,
            trials: 5,
            samples: 100_000,
            z_threshold: DEFAULT_Z_THRESHOLD,
        }
    }
}

fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> ExactRational {
    let den = rng.random_range(1..=max_den);
    rational(rng.random_range(lo * den..=hi * den), den)
}

/// A rational strictly between 0 and 1.
fn random_unit_open(rng: &mut impl Rng) -> ExactRational {
    let den = rng.random_range(2..=40);
    rational(rng.random_range(1..den), den)
}

/// A rational in [0, 1).
fn random_unit_half_open(rng: &mut impl Rng) -> ExactRational {
    let den = rng.random_range(1..=40);
    rational(rng.random_range(0..den), den)
}

/// Every instance of `suite`, in report order. Random parameters are drawn
/// from a dedicated stream of `config.seed`, so the list depends only on the
/// suite and the configuration.
pub fn suite_instances(suite: Suite, config: &SuiteConfig) -> Vec<(Identity, ParamSet)> {
    let mut rng_stream = SamplerStream::new(config.seed, PARAMETER_STREAM);
    let rng = rng_stream.rng();
    let n_max = config.n_max;
    let mut out = Vec::new();
    let mut push = |id: Identity, params: ParamSet| out.push((id, params));

    if matches!(suite, Suite::All | Suite::Stirling) {
        for id in [Identity::StirlingInversion12, Identity::StirlingInversion21] {
            for n in 0..=n_max {
                for m in 0..=n_max {
                    push(id, ParamSet::new().with_int("n", n).with_int("m", m));
                }
            }
        }
        for n in 0..=n_max {
            for k in 0..=n {
                push(
                    Identity::LahClosedForm,
                    ParamSet::new().with_int("n", n).with_int("k", k),
                );
            }
            push(Identity::Stirling1RowSum, ParamSet::new().with_int("n", n));
        }
    }

    if matches!(suite, Suite::All | Suite::Lahbell) {
        for n in 0..=n_max {
            for k in 0..=n {
                push(
                    Identity::PowerBasis,
                    ParamSet::new().with_int("n", n).with_int("k", k),
                );
            }
        }
        for x in [integer(1), integer(2), rational(1, 2), rational(-1, 3)] {
            for n in 0..=n_max {
                push(
                    Identity::SeriesCoefficient,
                    ParamSet::new().with("x", x.clone()).with_int("n", n),
                );
            }
        }
        for alpha in [integer(1), integer(2), rational(3, 2)] {
            for n in 0..=n_max {
                push(
                    Identity::LahBellFromBell,
                    ParamSet::new().with("alpha", alpha.clone()).with_int("n", n),
                );
            }
        }
        for _ in 0..config.trials {
            let lambda = random_unit_open(rng);
            for n in 0..=n_max {
                for l in 0..=n {
                    push(
                        Identity::DegenerateConstructions,
                        ParamSet::new()
                            .with_int("n", n)
                            .with("lambda", lambda.clone())
                            .with_int("l", l),
                    );
                }
            }
        }
        for _ in 0..config.trials {
            let lambda = random_unit_open(rng);
            let x = random_rational(rng, 0, 3, 10);
            for n in 0..=n_max {
                push(
                    Identity::DegenerateInverse,
                    ParamSet::new()
                        .with_int("n", n)
                        .with("lambda", lambda.clone())
                        .with("x", x.clone()),
                );
            }
        }
        for (alpha, m) in [(integer(2), 3), (rational(1, 2), 4), (integer(1), 2)] {
            let params = ParamSet::new().with("alpha", alpha).with_int("m", m);
            push(Identity::PoissonRisingMc, params.clone());
            push(Identity::PoissonFallingMc, params.clone());
            push(Identity::PoissonRawMc, params);
        }
    }

    if matches!(suite, Suite::All | Suite::Dbinomial) {
        let mut triples = vec![
            (2, rational(1, 2), rational(1, 4)),
            (3, rational(1, 10), rational(2, 5)),
            (5, rational(1, 3), integer(0)),
        ];
        for _ in 0..config.trials {
            let n = rng.random_range(0..=n_max);
            triples.push((n, random_rational(rng, 0, 1, 20), random_unit_half_open(rng)));
        }
        for (n, p, lambda) in triples {
            // (1)_{n,lambda} = 0 leaves no distribution to check.
            if DegenerateBinomial::new(n, p.clone(), lambda.clone()).is_err() {
                continue;
            }
            let params = ParamSet::new()
                .with_int("n", n)
                .with("p", p)
                .with("lambda", lambda);
            for id in [
                Identity::BinomialNormalization,
                Identity::BinomialMean,
                Identity::BinomialVariance,
            ] {
                push(id, params.clone());
            }
        }
        push(
            Identity::BinomialMeanMc,
            ParamSet::new()
                .with_int("n", 2)
                .with("p", rational(1, 2))
                .with("lambda", rational(1, 4)),
        );
    }

    if matches!(suite, Suite::All | Suite::Dpoisson) {
        for (alpha, lambda) in dpoisson_grid() {
            let base = ParamSet::new().with("alpha", alpha).with("lambda", lambda);
            for id in [
                Identity::PoissonNormalization,
                Identity::PoissonMean,
                Identity::PoissonVariance,
            ] {
                push(id, base.clone());
            }
            for m in 0..=n_max.min(8) {
                let params = base.clone().with_int("m", m);
                push(Identity::DegenerateRising, params.clone());
                push(Identity::DegenerateRisingDoubleStirling, params);
            }
        }
        push(
            Identity::DegenerateRisingMc,
            ParamSet::new()
                .with("alpha", integer(1))
                .with("lambda", rational(1, 2))
                .with_int("m", 2),
        );
    }

    if matches!(suite, Suite::All | Suite::Pgf) {
        for (alpha, lambda) in dpoisson_grid() {
            for t in [rational(1, 4), rational(-1, 4), rational(1, 2), rational(-1, 2)] {
                push(
                    Identity::DegeneratePgf,
                    ParamSet::new()
                        .with("alpha", alpha.clone())
                        .with("lambda", lambda.clone())
                        .with("t", t),
                );
            }
        }
        for t in [rational(1, 4), rational(-1, 2)] {
            push(
                Identity::PoissonPgfMc,
                ParamSet::new().with("alpha", integer(1)).with("t", t),
            );
        }
    }
    out
}

/// Finite-support degenerate Poisson parameters: `lambda = 1/m` with `alpha < m`.
fn dpoisson_grid() -> Vec<(ExactRational, ExactRational)> {
    let mut grid = Vec::new();
    for m in [2, 3, 5, 8] {
        for alpha in [rational(1, 2), integer(1), rational(3, 2), integer(4)] {
            if alpha < integer(m) {
                grid.push((alpha, rational(1, m)));
            }
        }
    }
    grid
}

/// Runs every instance of `suite`. The statistical instance at position `i`
/// samples from stream `i` of `config.seed`.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    suite_instances(suite, config)
        .into_iter()
        .enumerate()
        .map(|(i, (id, params))| {
            let mut stream = SamplerStream::new(config.seed, i as u64);
            verify_identity(id.tag(), &params, config.samples, config.z_threshold, &mut stream)
        })
        .collect()
}
