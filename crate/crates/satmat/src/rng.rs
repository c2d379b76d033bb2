//! Deterministic random source for sampling and randomized scan orders.
//!
//! SplitMix64 (Steele, Lea, Flood 2014): a 64-bit state advanced by the
//! golden-ratio constant and finalized with two xor-shift multiplies. Chosen
//! over an external generator so that a seed produces the same stream on
//! every platform and under every future dependency bump.

use crate::perm::PermutationMatrix;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in 0..bound, by rejection so no residue is favored.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// In-place Fisher-Yates shuffle, high index down to 1.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// Uniform random permutation matrix of size k.
    pub fn permutation(&mut self, k: usize) -> PermutationMatrix {
        let mut sigma: Vec<usize> = (1..=k).collect();
        self.shuffle(&mut sigma);
        PermutationMatrix::from_sigma(&sigma).expect("shuffle keeps a bijection")
    }
}
