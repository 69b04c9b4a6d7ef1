//! Seeded, splittable random streams.
//!
//! Stream `(kind, index)` of seed `s` is a ChaCha8 generator seeded (via
//! `SeedableRng::seed_from_u64`) with `splitmix64(s ^ splitmix64(tag(kind) << 56 ^ index))`,
//! where `splitmix64` is the SplitMix64 output finalizer. Streams are therefore
//! identical on every platform and independent of how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Purpose of a stream; each gets a disjoint index space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    OrderBlock = 1,
    Pilot = 2,
    Allocation = 3,
    SetBlock = 4,
    MonotoneChain = 5,
    User = 6,
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn substream_seed(seed: u64, kind: Stream, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64((kind as u64) << 56 ^ index))
}

pub fn substream(seed: u64, kind: Stream, index: u64) -> StreamRng {
    StreamRng::seed_from_u64(substream_seed(seed, kind, index))
}
