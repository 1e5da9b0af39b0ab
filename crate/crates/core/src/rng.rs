//! Seeded generators.
//!
//! Every random choice in the crate is drawn from a ChaCha8 stream. Work that
//! may run in parallel derives its stream from `(seed, key)` instead of
//! sharing one generator, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for `key` under `seed`. Same inputs, same stream.
pub fn keyed(seed: u64, key: &str) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(key.as_bytes()));
    rng
}

// FNV-1a is fixed by definition, unlike std's DefaultHasher.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}
