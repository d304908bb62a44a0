//! Seeded random number generation.
//!
//! All sampling goes through [`PottsRng`], a xoshiro256++ generator whose
//! 256-bit state is expanded from a 64-bit seed with SplitMix64, so
//! identical seeds replay identical streams on every platform.
//! Independent streams for replications are keyed with [`derive_seed`].

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PottsRng(Xoshiro256PlusPlus);

impl PottsRng {
    /// Identifier recorded in output metadata.
    pub const ALGORITHM: &'static str = "xoshiro256++";

    pub fn seed_from_u64(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }
}

impl RngCore for PottsRng {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    #[inline]
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of stream `index` under `master`: `mix64(master + (index + 1) * golden)`
/// where `mix64` is the SplitMix64 finalizer and `golden = 0x9e3779b97f4a7c15`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}
