//! Deterministic random number streams.
//!
//! All randomness derives from a single 64-bit master seed through SplitMix64.
//! Each (purpose, step, codon) triple gets its own substream whose seed is the
//! SplitMix64 finalizer applied to a mix of the coordinates, so draws are
//! independent of evaluation order and a run can be resumed from any step
//! without replaying the generator. Streams are stable across platforms and
//! releases; this generator is not cryptographically secure.

/// Stream purposes; part of the substream seed derivation.
pub const PURPOSE_INIT: u64 = 0x494E_4954; // "INIT"
pub const PURPOSE_BROWNIAN: u64 = 0x4252_4F57; // "BROW"

/// SplitMix64 finalizer: a 64-bit bijective mix.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 sequence generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    #[inline]
    pub fn next_symmetric(&mut self) -> f64 {
        self.next_f64() * 2.0 - 1.0
    }
}

/// Substream for a (purpose, step, codon) coordinate.
pub fn substream(master_seed: u64, purpose: u64, step: u64, index: u64) -> SplitMix64 {
    let mut h = mix64(master_seed ^ mix64(purpose));
    h = mix64(h ^ step.wrapping_mul(0xA24B_AED4_963E_E407));
    h = mix64(h ^ index.wrapping_mul(0x9FB2_1C65_1E98_DF25));
    SplitMix64::new(h)
}
