use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random stream identified by `(master_seed, stream_index)`.
///
/// The generator is ChaCha8 keyed by the master seed; the stream index
/// selects ChaCha's 64-bit stream (nonce), so distinct indices give
/// independent sequences under one key.
#[derive(Debug, Clone)]
pub struct SamplerStream {
    master_seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

impl SamplerStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        Self {
            master_seed,
            stream_index,
            rng,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Sibling stream under the same master seed.
    pub fn derive(&self, stream_index: u64) -> Self {
        Self::new(self.master_seed, stream_index)
    }

    /// Uniform draw from `[0, 1)`.
    pub fn next_uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
