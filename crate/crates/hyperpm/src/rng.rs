//! Deterministic word generation.
//!
//! The generator is xorshift64* seeded through one round of splitmix64:
//!
//! ```text
//! seed:   z = seed + 0x9E3779B97F4A7C15           (wrapping)
//!         z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!         z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!         x = z ^ (z >> 31);  if x == 0 { x = 0x9E3779B97F4A7C15 }
//! next:   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27
//!         return x * 0x2545F4914F6CDD1D            (wrapping)
//! below(n) = ((next() >> 32) * n) >> 32            (n < 2^32)
//! ```
//!
//! [`random_words`] draws `count` words of `length` letters, word by word and
//! left to right, each letter being `below(|Σ|)`.

use crate::alphabet::{Alphabet, LetterId, Word, WordSet};

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        let x = z ^ (z >> 31);
        XorShift64Star { state: if x == 0 { 0x9E37_79B9_7F4A_7C15 } else { x } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform value in `0..n` by multiply-shift on the high 32 bits.
    pub fn below(&mut self, n: u32) -> u32 {
        (((self.next_u64() >> 32) * n as u64) >> 32) as u32
    }
}

pub fn random_words(alphabet: &Alphabet, count: usize, length: usize, seed: u64) -> WordSet {
    let mut rng = XorShift64Star::new(seed);
    let n = alphabet.len() as u32;
    (0..count)
        .map(|_| Word::new((0..length).map(|_| rng.below(n) as LetterId).collect()))
        .collect()
}
