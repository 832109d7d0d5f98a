//! Deterministic RNG substreams.
//!
//! All randomness in the crate flows from a single root seed through named
//! substreams, so that components (generation, training, per-epoch
//! refreshes) are individually reproducible and independent of each other.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream labels; the label keeps substreams for different purposes apart
/// even when their numeric parts collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    BaseEquations,
    SourceDerivation,
    EpochRefresh,
    Shuffle,
    TrainNoise,
    ParamInit,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::BaseEquations => 0x45514e53,   // base equation sampling
            Stream::SourceDerivation => 0x53524344, // initial src derivation
            Stream::EpochRefresh => 0x52465253,    // per-epoch data refresh
            Stream::Shuffle => 0x5348464c,         // batch shuffling
            Stream::TrainNoise => 0x54524e4e,      // dropout + teacher forcing
            Stream::ParamInit => 0x494e4954,       // parameter initialization
        }
    }
}

/// A ChaCha8 generator keyed by (root seed, stream, up to two indices).
/// Identical arguments always produce an identical generator on every
/// platform.
pub fn substream(root: u64, stream: Stream, a: u64, b: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&root.to_le_bytes());
    key[8..16].copy_from_slice(&stream.tag().to_le_bytes());
    key[16..24].copy_from_slice(&a.to_le_bytes());
    key[24..32].copy_from_slice(&b.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
