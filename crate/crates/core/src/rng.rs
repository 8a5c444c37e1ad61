//! Deterministic random streams.
//!
//! Every random draw in the crate comes from a ChaCha8 stream whose 256-bit
//! key is derived from the user seed plus a path of stream labels, e.g.
//! `(seed, BOOTSTRAP, replicate, sample)`. ChaCha is a counter-mode cipher, so
//! distinct keys give independent streams and a replicate's draws never depend
//! on which worker thread ran it or in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Label for bootstrap weight streams.
pub const DOMAIN_BOOTSTRAP: u64 = 0x626f_6f74;
/// Label for Monte Carlo data-generation streams.
pub const DOMAIN_SIMULATE: u64 = 0x7369_6d75;

/// A position in the tree of random streams rooted at a user seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamKey {
    seed: u64,
    path: u64,
}

impl StreamKey {
    pub fn root(seed: u64) -> Self {
        Self {
            seed,
            path: mix64(seed ^ 0x6a09_e667_f3bc_c908),
        }
    }

    /// Child stream identified by `label`; derivation is pure.
    pub fn child(self, label: u64) -> Self {
        Self {
            seed: self.seed,
            path: mix64(self.path ^ mix64(label.wrapping_add(0x9e37_79b9_7f4a_7c15))),
        }
    }

    pub fn seed(self) -> u64 {
        self.seed
    }

    /// Opaque identifier of this stream, recorded in run metadata.
    pub fn id(self) -> u64 {
        self.path
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        let words = [
            self.seed,
            self.path,
            mix64(self.path ^ 0xbb67_ae85_84ca_a73b),
            mix64(self.path ^ 0x3c6e_f372_fe94_f82b),
        ];
        for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
