//! Seeded random streams.
//!
//! Every random source in the crate is a [`ChaCha8Rng`]. ChaCha is a
//! counter-based generator with a 64-bit stream selector, so each
//! `(model, N, trial)` tuple gets its own independent stream keyed off the
//! run seed. Results therefore never depend on evaluation order or thread
//! count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as StreamRng;

/// SplitMix64 finalizer, used to mix stream coordinates into one selector.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Coordinates of one independent random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub model_id: u64,
    pub n: u64,
    pub trial: u64,
}

impl StreamKey {
    pub fn new(seed: u64, model_id: u64, n: u64, trial: u64) -> Self {
        Self {
            seed,
            model_id,
            n,
            trial,
        }
    }

    fn stream_id(&self) -> u64 {
        let mut h = mix64(self.model_id);
        h = mix64(h ^ self.n);
        mix64(h ^ self.trial)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id());
        rng
    }
}

/// Plain seeded generator for single-run commands.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
