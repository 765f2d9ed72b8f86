//! Counter-based random streams.
//!
//! Every (seed, stream, trial) triple maps to its own position in a ChaCha8
//! keystream, so trials can run in any order or in parallel and still draw
//! exactly the same numbers.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream used for the transmitter's message and random offset.
pub const STREAM_TX: u64 = 0;
pub const STREAM_BOB: u64 = 1;
pub const STREAM_EVE: u64 = 2;

/// 32-bit words reserved per trial in each stream.
const WORDS_PER_TRIAL: u128 = 1 << 16;

pub struct TrialRng {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl TrialRng {
    pub fn new(seed: u64, stream: u64, trial: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        inner.set_word_pos(trial as u128 * WORDS_PER_TRIAL);
        TrialRng { inner, spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Integer in `[lo, hi]` from a single 64-bit draw (multiply-shift; the
    /// bias is below 2⁻⁶⁰ for the ranges used here).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u128;
        lo + ((self.next_u64() as u128 * span) >> 64) as i64
    }

    /// Standard normal via Box–Muller; two uniforms per pair of outputs.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let phi = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * phi.sin());
        r * phi.cos()
    }
}
