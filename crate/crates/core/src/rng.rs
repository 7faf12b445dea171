//! Seeded pseudo-randomness with a fixed, documented algorithm.
//!
//! Every random choice in the crate goes through [`SplitMix64`] so that an
//! experiment can be reproduced bit-for-bit by any implementation that follows
//! the recipe below.
//!
//! Generator (Steele, Lea & Flood's SplitMix64):
//!
//! ```text
//! state <- state + 0x9E3779B97F4A7C15            (wrapping)
//! z     <- state
//! z     <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (wrapping)
//! z     <- (z ^ (z >> 27)) * 0x94D049BB133111EB  (wrapping)
//! out   <- z ^ (z >> 31)
//! ```
//!
//! Derived draws:
//!
//! * `unit()`: `(next_u64() >> 11) * 2^-53`, uniform on `[0, 1)`.
//! * `bernoulli(p)`: `unit() < p`.
//! * `below(k)`: rejection sampling; draw `x = next_u64()` until
//!   `x < 2^64 - (2^64 mod k)`, return `x mod k`.
//! * `shuffle(xs)`: Fisher-Yates from the back; for `i = len-1 down to 1`,
//!   swap `xs[i]` with `xs[below(i + 1)]`.
//! * `derive(seed, stream)`: a fresh generator seeded with
//!   `mix(seed + stream * 0x9E3779B97F4A7C15)` where `mix` is the output
//!   function above applied to its argument.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX2: u64 = 0x94D0_49BB_1331_11EB;

/// Finalizer of SplitMix64.
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX2);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream for sub-task `stream` of an experiment seeded with `seed`.
    pub fn derive(seed: u64, stream: u64) -> Self {
        Self::new(mix(seed.wrapping_add(stream.wrapping_mul(GOLDEN))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform integer in `0..k`. Panics if `k == 0`.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % k + 1) % k;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % k;
            }
        }
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }

    /// `k` distinct elements of `xs` in random order (partial Fisher-Yates
    /// over a copy, drawing positions from the front).
    pub fn sample<T: Clone>(&mut self, xs: &[T], k: usize) -> Vec<T> {
        let mut pool = xs.to_vec();
        let k = k.min(pool.len());
        for i in 0..k {
            let j = i + self.below((pool.len() - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}
