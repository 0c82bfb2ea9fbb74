use std::io::{self, Write};

use clap::{Args, ValueEnum};
use lahbell::distributions::{DegenerateBinomial, DegeneratePoisson, Distribution, Value};
use lahbell::exact::{format_rational, integer, parse_rational, shared, ExactRational, TriangleKind};
use lahbell::montecarlo::estimate_moment_partitioned;
use lahbell::polynomials::{
    bell_polynomial, degenerate_bell_polynomial, degenerate_lah_bell_polynomial, lah_bell_number,
    lah_bell_polynomial,
};
use lahbell::verify::{run_suite, z_score, Suite, SuiteConfig, DEFAULT_Z_THRESHOLD};
use lahbell::{MomentKind, Status};

use crate::render::{self, PolyReport, SimulationReport};
use crate::{Common, Exit, Failure, Format};

type Outcome = Result<Exit, Failure>;

fn rational_arg(name: &str, text: &str) -> Result<ExactRational, Failure> {
    parse_rational(text).map_err(|_| Failure::usage(format!("--{name}: {text:?} is not a rational number")))
}

fn check_cap(value: u32, common: &Common) -> Result<(), Failure> {
    if value > common.cap {
        return Err(Failure {
            exit: Exit::Cap,
            message: format!("{value} exceeds the cap of {} (raise it with --cap)", common.cap),
        });
    }
    Ok(())
}

fn write_out(text: &str) -> Result<(), Failure> {
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| Failure {
            exit: Exit::Domain,
            message: format!("cannot write output: {e}"),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Lah,
    S1,
    S2,
    LahbellNumbers,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    kind: TableKind,
    #[arg(long)]
    n_max: u32,
    #[command(flatten)]
    common: Common,
}

pub fn table(args: &TableArgs) -> Outcome {
    check_cap(args.n_max, &args.common)?;
    let n_max = args.n_max as usize;
    let rows: Vec<Vec<String>> = match args.kind {
        TableKind::LahbellNumbers => {
            vec![(0..=n_max).map(|n| lah_bell_number(n).to_string()).collect()]
        }
        kind => {
            let cache = shared(match kind {
                TableKind::Lah => TriangleKind::Lah,
                TableKind::S1 => TriangleKind::Stirling1Signed,
                _ => TriangleKind::Stirling2,
            });
            (0..=n_max)
                .map(|n| cache.row(n).iter().map(ToString::to_string).collect())
                .collect()
        }
    };
    let text = match (args.common.format, args.kind) {
        (Format::Csv, _) => render::csv_rows(&rows)?,
        (Format::Json, TableKind::LahbellNumbers) => format!("{}\n", render::json_integers(&rows[0])),
        (Format::Json, _) => {
            let rows: Vec<String> = rows.iter().map(|r| render::json_integers(r)).collect();
            format!("[{}]\n", rows.join(","))
        }
    };
    write_out(&text)?;
    Ok(Exit::Pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bell,
    Lahbell,
    Dbell,
    Dlahbell,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    n: u32,
    /// Degeneracy parameter; required for dbell and dlahbell.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Evaluate the polynomial at this x.
    #[arg(long = "at", alias = "eval", allow_hyphen_values = true)]
    at: Option<String>,
    #[command(flatten)]
    common: Common,
}

pub fn poly(args: &PolyArgs) -> Outcome {
    check_cap(args.n, &args.common)?;
    let n = args.n as usize;
    let degenerate = matches!(args.family, Family::Dbell | Family::Dlahbell);
    let lambda = match (&args.lambda, degenerate) {
        (Some(text), true) => Some(rational_arg("lambda", text)?),
        (None, true) => return Err(Failure::usage("--lambda is required for degenerate families")),
        (Some(_), false) => return Err(Failure::usage("--lambda only applies to dbell and dlahbell")),
        (None, false) => None,
    };
    let polynomial = match (args.family, &lambda) {
        (Family::Bell, _) => bell_polynomial(n),
        (Family::Lahbell, _) => lah_bell_polynomial(n),
        (Family::Dbell, Some(l)) => degenerate_bell_polynomial(n, l),
        (Family::Dlahbell, Some(l)) => degenerate_lah_bell_polynomial(n, l),
        _ => unreachable!("lambda presence checked above"),
    };
    let value = match &args.at {
        Some(text) => Some(polynomial.evaluate_at_x(&rational_arg("at", text)?)?),
        None => None,
    };
    let report = PolyReport {
        family: args
            .family
            .to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string(),
        n: args.n,
        variable: polynomial.variable().tag().to_uppercase(),
        lambda: lambda.as_ref().map(format_rational),
        coefficients: polynomial.coefficients().iter().map(format_rational).collect(),
        value: value.as_ref().map(format_rational),
    };
    write_out(&render::poly(&report, args.common.format)?)?;
    Ok(Exit::Pass)
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(value_parser = Suite::NAMES, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 12)]
    n_max: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomly drawn parameter sets per randomized family.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    /// Draws per statistical check.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    z_threshold: f64,
    #[command(flatten)]
    common: Common,
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    check_cap(args.n_max, &args.common)?;
    let suite: Suite = args.suite.parse()?;
    let config = SuiteConfig {
        n_max: args.n_max,
        seed: args.seed,
        trials: args.trials,
        samples: args.samples,
        z_threshold: args.z_threshold,
    };
    let reports = run_suite(suite, &config)?;
    write_out(&render::reports(&reports, args.common.format)?)?;
    if reports.iter().all(|r| r.status == Status::Pass) {
        Ok(Exit::Pass)
    } else {
        Ok(Exit::IdentityFailure)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Poisson,
    Dpoisson,
    Binomial,
    Dbinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentArg {
    Raw,
    Falling,
    Rising,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    dist: DistKind,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "raw")]
    moment: MomentArg,
    #[arg(long, default_value_t = 1)]
    order: u32,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; the estimate depends on the seed and this count.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
    workers: u32,
    #[command(flatten)]
    common: Common,
}

fn required(name: &str, value: &Option<String>) -> Result<ExactRational, Failure> {
    match value {
        Some(text) => rational_arg(name, text),
        None => Err(Failure::usage(format!(
            "--{name} is required for this distribution"
        ))),
    }
}

fn build_distribution(args: &SimulateArgs) -> Result<Distribution, Failure> {
    let degenerate = matches!(args.dist, DistKind::Dpoisson | DistKind::Dbinomial);
    let lambda = match (degenerate, &args.lambda) {
        (true, _) => required("lambda", &args.lambda)?,
        (false, None) => integer(0),
        (false, Some(_)) => return Err(Failure::usage("--lambda only applies to dpoisson and dbinomial")),
    };
    Ok(match args.dist {
        DistKind::Poisson | DistKind::Dpoisson => {
            DegeneratePoisson::new(required("alpha", &args.alpha)?, lambda)?.into()
        }
        DistKind::Binomial | DistKind::Dbinomial => {
            let n = args
                .n
                .ok_or_else(|| Failure::usage("--n is required for this distribution"))?;
            check_cap(n, &args.common)?;
            DegenerateBinomial::new(n, required("p", &args.p)?, lambda)?.into()
        }
    })
}

/// Exact target when one is known in closed form or by a finite sum; the
/// truncated series value otherwise.
fn target(distribution: &Distribution, kind: MomentKind, order: u32) -> Result<Value, Failure> {
    Ok(match kind {
        MomentKind::Raw => distribution.raw_moment(order)?,
        MomentKind::Falling => distribution.falling_factorial_moment(order)?,
        MomentKind::Rising => match distribution {
            Distribution::Poisson(d) if d.is_classical() => {
                Value::Exact(lah_bell_polynomial(order as usize).evaluate(d.alpha()))
            }
            _ => distribution.rising_factorial_moment(order)?,
        },
    })
}

pub fn simulate(args: &SimulateArgs) -> Outcome {
    let distribution = build_distribution(args)?;
    let kind = match args.moment {
        MomentArg::Raw => MomentKind::Raw,
        MomentArg::Falling => MomentKind::Falling,
        MomentArg::Rising => MomentKind::Rising,
    };
    let estimate = estimate_moment_partitioned(
        &distribution,
        kind,
        args.order,
        args.samples,
        args.seed,
        args.workers as usize,
    )?;
    let target = target(&distribution, kind, args.order)?;
    let z = z_score(estimate.estimate, target.to_f64(), estimate.standard_error);
    let report = SimulationReport {
        estimate,
        target: target.to_string(),
        z: z.is_finite().then_some(z),
        seed: args.seed,
    };
    write_out(&render::simulation(&report, args.common.format)?)?;
    Ok(Exit::Pass)
}
