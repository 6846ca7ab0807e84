//! Seed derivation and RNG construction.
//!
//! Every random quantity in the crate is a pure function of
//! (master seed, purpose tag), so trials and retries can derive
//! independent streams without sharing mutable RNG state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; spreads structured (seed, tag) pairs into
/// well-mixed 64-bit stream seeds.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derives a child seed from a master seed and a purpose tag.
pub fn derive_seed(master: u64, tag: u64) -> u64 {
    splitmix64(master ^ splitmix64(tag))
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Purpose tags for the fixed seed-derivation tree.
pub mod tags {
    /// Base for scenario generation attempts (add the attempt index).
    pub const SCENARIO: u64 = 0x100;
    pub const BS_PLACEMENT: u64 = 0x01;
    pub const USER_PLACEMENT: u64 = 0x02;
    pub const KMEANS: u64 = 0x03;
    /// Root of the per-trial fading streams for one benchmark run.
    pub const FADING: u64 = 0x300;
    /// Base for per-trial geometry in redraw-all mode (add the trial index).
    pub const GEOMETRY_TRIAL: u64 = 0x400;
    /// Base for synthetic scaling inputs (add the matrix size).
    pub const SCALING_T: u64 = 0x500;
    pub const SCALING_G: u64 = 0x600;
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn derive_seed_is_deterministic() {
        assert_eq!(derive_seed(42, 1), derive_seed(42, 1));
    }

    #[test]
    fn derive_seed_separates_masters_and_tags() {
        let a = derive_seed(1, 0);
        let b = derive_seed(2, 0);
        let c = derive_seed(1, 1);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn streams_reproduce_bitwise() {
        let xs: Vec<f64> = (0..8).map(|_| 0.0).collect();
        let mut r1 = rng_from(derive_seed(9, 3));
        let mut r2 = rng_from(derive_seed(9, 3));
        let a: Vec<f64> = xs.iter().map(|_| r1.gen()).collect();
        let b: Vec<f64> = xs.iter().map(|_| r2.gen()).collect();
        assert_eq!(a, b);
    }
}
