//! Synthetic i.i.d. uniform token data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tokens::{TokenId, TokenSequence};

/// `n` raw symbols drawn uniformly from `0..vocab`. Identical for identical
/// arguments on every platform.
pub fn uniform_raw(n: usize, vocab: u32, seed: u64) -> Vec<u32> {
    assert!(vocab >= 1, "vocabulary must be non-empty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..vocab)).collect()
}

/// Same draw as [`uniform_raw`] shifted to token ids `1..=vocab`.
pub fn uniform_sequence(n: usize, vocab: u32, seed: u64) -> TokenSequence {
    let ids: Vec<TokenId> = uniform_raw(n, vocab, seed)
        .into_iter()
        .map(|v| v + 1)
        .collect();
    TokenSequence::new(ids).expect("shifted ids are non-zero")
}
