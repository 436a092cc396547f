//! Counter-based splittable random number generator.
//!
//! Every draw is a pure function of `(key, counter)`, so replicate `k` of an
//! experiment can run on any thread with the key `derive_key(master_seed, k)`
//! and produce the same stream as a serial run.

use std::f64::consts::PI;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer; a bijective 64-bit mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent stream key for replicate `index` of a run seeded
/// with `master`.
#[inline]
pub fn derive_key(master: u64, index: u64) -> u64 {
    mix64(mix64(master ^ GOLDEN) ^ index.wrapping_mul(GOLDEN))
}

/// Counter-based generator: output `i` is `mix64(key + i*GOLDEN)`.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        CounterRng { key, counter: 0 }
    }

    /// Stream for replicate `index` under `master`.
    pub fn for_replicate(master: u64, index: u64) -> Self {
        CounterRng::new(derive_key(master, index))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let out = mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)));
        self.counter = self.counter.wrapping_add(1);
        out
    }

    /// Uniform on [0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform on (0, 1); safe as a log or division argument.
    #[inline]
    pub fn open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Standard normal via Box-Muller. Uses two uniforms per draw.
    #[inline]
    pub fn normal(&mut self) -> f64 {
        let u = self.open01();
        let v = self.uniform();
        (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
    }

    /// Standard exponential.
    #[inline]
    pub fn exponential(&mut self) -> f64 {
        -self.open01().ln()
    }
}
