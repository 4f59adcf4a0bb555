//! Match-length entropy rate estimators.
//!
//! For a sequence of length `n` the self-entropy estimate in bits per token is
//!
//! ```text
//! H = n · log2(n) / Σ Λ_i        with Λ_i = Λ(t_start = i, s_bound = i)
//! ```
//!
//! i.e. the reciprocal of the Cesàro average of `Λ_i / log n`. The cross
//! estimate uses the same form with `log2(N_S)` (the source length) and the
//! number of evaluated target positions in place of `n`.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::lcs::{LcsIndex, MatchQuery};
use crate::tokens::TokenSequence;

/// How target positions are paired with source prefix bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossEntropyMode {
    /// Target position `i` against the first `min(i, N_S)` source tokens.
    Positional,
    /// Every target position against the whole source.
    FullHistory,
    /// Caller-supplied pairs, e.g. aligned by timestamp.
    Mapped(Vec<MatchQuery>),
}

impl CrossEntropyMode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Positional => "positional",
            Self::FullHistory => "full_history",
            Self::Mapped(_) => "mapped",
        }
    }

    fn queries(&self, s_len: usize, t_len: usize) -> Vec<MatchQuery> {
        match self {
            Self::Positional => (0..t_len)
                .map(|i| MatchQuery::new(i, i.min(s_len)))
                .collect(),
            Self::FullHistory => (0..t_len).map(|i| MatchQuery::new(i, s_len)).collect(),
            Self::Mapped(pairs) => pairs.clone(),
        }
    }
}

/// Output of an entropy estimation.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport<F> {
    pub lambdas: Vec<usize>,
    pub lambda_sum: u64,
    pub n_positions: usize,
    /// Bits per token.
    pub entropy_bits: F,
}

impl<F: Float> EntropyReport<F> {
    fn from_lambdas(lambdas: Vec<usize>, database_len: usize) -> Self {
        let lambda_sum: u64 = lambdas.iter().map(|&l| l as u64).sum();
        let n_positions = lambdas.len();
        let n = F::from(n_positions).unwrap();
        let db = F::from(database_len).unwrap();
        let entropy_bits = n * db.log2() / F::from(lambda_sum).unwrap();
        Self {
            lambdas,
            lambda_sum,
            n_positions,
            entropy_bits,
        }
    }
}

/// Self-entropy rate of `x`, which needs at least two tokens.
pub fn self_entropy_rate<F: Float>(x: &TokenSequence) -> Result<EntropyReport<F>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    let index = LcsIndex::build(x, x);
    let queries: Vec<_> = (0..n).map(|i| MatchQuery::new(i, i)).collect();
    let lambdas = index.batch_lambda(&queries)?;
    Ok(EntropyReport::from_lambdas(lambdas, n))
}

/// `Λ` values of `target` against `source` for the positions selected by
/// `mode`, without normalization.
pub fn match_length_profile(
    source: &TokenSequence,
    target: &TokenSequence,
    mode: &CrossEntropyMode,
) -> Result<Vec<usize>> {
    if source.len() < 2 {
        return Err(Error::TooShort {
            len: source.len(),
            min: 2,
        });
    }
    let queries = mode.queries(source.len(), target.len());
    if queries.is_empty() {
        return Err(Error::NoPositions);
    }
    LcsIndex::build(source, target).batch_lambda(&queries)
}

/// Cross-entropy rate of `target` given the history of `source`. Not
/// symmetric in its arguments.
pub fn cross_entropy_rate<F: Float>(
    source: &TokenSequence,
    target: &TokenSequence,
    mode: &CrossEntropyMode,
) -> Result<EntropyReport<F>> {
    let lambdas = match_length_profile(source, target, mode)?;
    Ok(EntropyReport::from_lambdas(lambdas, source.len()))
}
