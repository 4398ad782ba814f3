//! Counter-based random numbers: every draw is a pure hash of
//! `(seed, index, stream)`, so draws can be made in any order or in parallel.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
pub fn hash(seed: u64, index: u64, stream: u64) -> u64 {
    let key = mix64(seed.wrapping_add(GOLDEN.wrapping_mul(stream.wrapping_add(1))));
    mix64(key ^ mix64(index.wrapping_add(GOLDEN)))
}

/// Uniform draw in `[0, 1)` with 53 bits of resolution.
#[inline]
pub fn uniform(seed: u64, index: u64, stream: u64) -> f64 {
    (hash(seed, index, stream) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Independent draw streams.
pub(crate) mod stream {
    pub const SELECT: u64 = 0;
    pub const DRAW_A: u64 = 1;
    pub const DRAW_B: u64 = 2;
    pub const PERMUTATION: u64 = 3;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_in_unit_interval() {
        for i in 0..10_000 {
            let u = uniform(7, i, 1);
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn streams_and_seeds_differ() {
        assert_ne!(hash(1, 5, 0), hash(1, 5, 1));
        assert_ne!(hash(1, 5, 0), hash(2, 5, 0));
        assert_ne!(hash(1, 5, 0), hash(1, 6, 0));
        assert_eq!(hash(1, 5, 0), hash(1, 5, 0));
    }
}
