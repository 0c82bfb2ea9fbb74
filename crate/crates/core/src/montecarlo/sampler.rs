use num_traits::{One, Zero};

use super::SamplerStream;
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::exact::{to_f64, ExactRational};

/// Mass left uncovered when an infinite support is truncated.
pub const TAIL_COVERAGE: f64 = 1e-12;
const TABLE_BUDGET: usize = 100_000;

/// Inverse-CDF sampler over a precomputed cumulative table.
#[derive(Debug, Clone)]
pub struct InverseCdfSampler {
    cumulative: Vec<f64>,
}

impl InverseCdfSampler {
    /// Refuses distributions with any negative mass. Finite supports use the
    /// exact cumulative sums (which must reach exactly 1); the classical
    /// Poisson table stops at coverage `1 - TAIL_COVERAGE` and the last
    /// bucket absorbs the remainder.
    pub fn new(distribution: &Distribution) -> Result<Self> {
        let masses = distribution.finite_masses();
        // whole finite support; an infinite signed support reports its first negative index anyway
        let horizon = if masses.is_some() { u64::MAX } else { 0 };
        let analysis = distribution.analyze_support(horizon);
        if let Some(&index) = analysis.negative_indices.first() {
            return Err(Error::SignedMass {
                index,
                mass: distribution.pmf(index).to_string(),
            });
        }
        if let Some(masses) = masses {
            let mut running = ExactRational::zero();
            let mut cumulative = Vec::with_capacity(masses.len());
            for mass in &masses {
                running += mass;
                cumulative.push(to_f64(&running));
            }
            assert!(running.is_one(), "finite masses sum to {running}, not 1");
            return Ok(Self { cumulative });
        }
        let Distribution::Poisson(d) = distribution else {
            unreachable!("only Poisson supports are infinite")
        };
        let alpha = to_f64(d.alpha());
        let mut mass = (-alpha).exp();
        let mut running = 0.0f64;
        let mut cumulative = Vec::new();
        for i in 0..TABLE_BUDGET {
            running += mass;
            cumulative.push(running);
            if running >= 1.0 - TAIL_COVERAGE {
                *cumulative.last_mut().expect("just pushed") = 1.0;
                return Ok(Self { cumulative });
            }
            mass *= alpha / (i + 1) as f64;
        }
        Err(Error::Tail {
            coverage: running,
            terms: TABLE_BUDGET,
        })
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn sample(&self, stream: &mut SamplerStream) -> u64 {
        let u = stream.next_uniform();
        let index = self.cumulative.partition_point(|&c| c <= u);
        index.min(self.cumulative.len() - 1) as u64
    }
}

/// One variate from `distribution`. Builds the table on every call; use
/// [`InverseCdfSampler`] directly for repeated draws.
pub fn sample(distribution: &Distribution, stream: &mut SamplerStream) -> Result<u64> {
    Ok(InverseCdfSampler::new(distribution)?.sample(stream))
}
