//! Longest-common-substring match lengths between a bounded source prefix and
//! a target suffix, and the match-length entropy estimators built on them.
//!
//! The query structure ([`LcsIndex`]) combines a suffix array over
//! `S · σ · T`, a sparse-table LCP oracle and a persistent ordered set of the
//! source suffix ranks. Each strict match-length query costs
//! `O(log(N_S + N_T) · log min(N_S, N_T))` after `O(M log M)` preprocessing.
//!
//! Real-valued outputs are generic over [`num_traits::Float`]; the aliases at
//! the crate root fix the common `f64` and `f32` instantiations.

pub mod bench;
pub mod entropy;
mod error;
pub mod lcs;
pub mod pset;
pub mod suffix;
pub mod synth;
pub mod tokens;

pub use entropy::{cross_entropy_rate, match_length_profile, self_entropy_rate, CrossEntropyMode};
pub use error::{Error, Result};
pub use lcs::{brute_force_lambda_search, brute_force_strict, LcsIndex, MatchQuery};
pub use pset::PersistentSet;
pub use suffix::SuffixStructure;
pub use tokens::{parse_integer_sequence, tokenize, TokenId, TokenSequence, VocabMap, SEPARATOR};

/// Entropy report with `f64` estimates.
pub type EntropyReport = entropy::EntropyReport<f64>;
/// Entropy report with `f32` estimates.
pub type EntropyReportF32 = entropy::EntropyReport<f32>;
