//! Seeded Monte Carlo estimation of moments and other expectations.
//!
//! Draws come from an inverse-CDF table over the exact masses, so only
//! distributions whose masses are all nonnegative can be sampled.

mod sampler;
mod stream;

pub use sampler::{sample, InverseCdfSampler, TAIL_COVERAGE};
pub use stream::SamplerStream;

use serde::{Deserialize, Serialize};

use crate::distributions::{Distribution, Observable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MomentKind {
    Raw,
    Falling,
    Rising,
}

impl MomentKind {
    pub fn observable(self, order: u32) -> Observable {
        match self {
            MomentKind::Raw => Observable::Power(order),
            MomentKind::Falling => Observable::Falling(order),
            MomentKind::Rising => Observable::Rising(order),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MomentKind::Raw => "RAW",
            MomentKind::Falling => "FALLING",
            MomentKind::Rising => "RISING",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub sample_count: u64,
    pub moment_kind: MomentKind,
    pub order: u32,
}

/// Running mean and sum of squared deviations (Welford), mergeable.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Standard error of the mean, from the unbiased sample variance.
    pub fn standard_error(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples for a standard error, got {samples}"
        )));
    }
    Ok(())
}

/// Sample mean of `f(X)` over `samples` draws from one stream.
pub fn estimate_observable(
    sampler: &InverseCdfSampler,
    f: &Observable,
    samples: u64,
    stream: &mut SamplerStream,
) -> Accumulator {
    let mut acc = Accumulator::default();
    for _ in 0..samples {
        acc.push(f.approx(sampler.sample(stream)));
    }
    acc
}

/// Sample mean and standard error of `X^order`, `(X)_order` or `<X>_order`.
pub fn estimate_moment(
    distribution: &Distribution,
    kind: MomentKind,
    order: u32,
    samples: u64,
    stream: &mut SamplerStream,
) -> Result<MomentEstimate> {
    check_samples(samples)?;
    let sampler = InverseCdfSampler::new(distribution)?;
    if order == 0 {
        return Ok(MomentEstimate {
            estimate: 1.0,
            standard_error: 0.0,
            sample_count: samples,
            moment_kind: kind,
            order,
        });
    }
    let acc = estimate_observable(&sampler, &kind.observable(order), samples, stream);
    Ok(MomentEstimate {
        estimate: acc.mean(),
        standard_error: acc.standard_error(),
        sample_count: acc.count(),
        moment_kind: kind,
        order,
    })
}

/// As [`estimate_moment`], split across `workers` threads. Worker `w` draws
/// its share from stream `w` of `master_seed` and the partial results are
/// merged in worker order, so the output depends only on the seed, the
/// sample count and the worker count.
pub fn estimate_moment_partitioned(
    distribution: &Distribution,
    kind: MomentKind,
    order: u32,
    samples: u64,
    master_seed: u64,
    workers: usize,
) -> Result<MomentEstimate> {
    check_samples(samples)?;
    let workers = workers.max(1);
    if workers == 1 {
        return estimate_moment(
            distribution,
            kind,
            order,
            samples,
            &mut SamplerStream::new(master_seed, 0),
        );
    }
    let sampler = InverseCdfSampler::new(distribution)?;
    if order == 0 {
        return estimate_moment(
            distribution,
            kind,
            0,
            samples,
            &mut SamplerStream::new(master_seed, 0),
        );
    }
    let f = kind.observable(order);
    let share = samples / workers as u64;
    let extra = samples % workers as u64;
    let partials: Vec<Accumulator> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let count = share + u64::from((w as u64) < extra);
                let (sampler, f) = (&sampler, &f);
                scope.spawn(move || {
                    let mut stream = SamplerStream::new(master_seed, w as u64);
                    estimate_observable(sampler, f, count, &mut stream)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("estimation worker panicked"))
            .collect()
    });
    let mut total = Accumulator::default();
    for partial in &partials {
        total.merge(partial);
    }
    Ok(MomentEstimate {
        estimate: total.mean(),
        standard_error: total.standard_error(),
        sample_count: total.count(),
        moment_kind: kind,
        order,
    })
}
