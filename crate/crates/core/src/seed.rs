use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Root seed plus a substream index. Identical pairs give bit-identical
/// random streams regardless of which thread consumes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSeed {
    pub seed: u64,
    pub stream_id: u64,
}

impl GenSeed {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        GenSeed { seed, stream_id }
    }

    /// Stream used for the feature matrix of realization `index`.
    ///
    /// Realization streams are laid out by counter: features take even
    /// stream ids and the network build the following odd id.
    pub fn features(seed: u64, index: u64) -> Self {
        GenSeed::new(seed, 2 * index)
    }

    /// Stream used for the network built on realization `index`.
    pub fn network(seed: u64, index: u64) -> Self {
        GenSeed::new(seed, 2 * index + 1)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
