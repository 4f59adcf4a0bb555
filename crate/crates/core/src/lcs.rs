//! Match-length queries between a bounded source prefix and a target suffix.
//!
//! All indices are 0-based. A query `(t_start = i, s_bound = j)` asks for the
//! longest `k` such that `T[i..i + k]` equals `S[p..p + k]` for some `p` with
//! `p + k <= j`, i.e. the match lies entirely inside the first `j` source
//! tokens. `Λ` is that length plus one: the length of the shortest substring
//! of `T` starting at `i` that does not occur in the source prefix.
//!
//! The index reduces this to a *relaxed* predicate, "is there a length-`k`
//! match starting at or before source position `j`", which is monotone in `k`
//! once the start bound is shifted to `j - k`. The strict length is then
//! found by binary search on `k`.

use crate::error::{Error, Result};
use crate::pset::PersistentSet;
use crate::suffix::SuffixStructure;
use crate::tokens::{TokenId, TokenSequence, SEPARATOR};

/// A `(t_start, s_bound)` query: target start `i`, source prefix length `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchQuery {
    pub t_start: usize,
    pub s_bound: usize,
}

impl MatchQuery {
    pub fn new(t_start: usize, s_bound: usize) -> Self {
        Self { t_start, s_bound }
    }
}

/// Query structure for one `(S, T)` pair.
#[derive(Debug, Clone)]
pub struct LcsIndex {
    s_len: usize,
    t_len: usize,
    ss: SuffixStructure,
    // version v holds the ranks of source suffixes starting at 0..v
    tau: PersistentSet,
}

impl LcsIndex {
    pub fn build(source: &TokenSequence, target: &TokenSequence) -> Self {
        Self::from_slices(source, target)
    }

    /// Builds from raw id slices.
    ///
    /// Panics if either slice contains the separator id 0.
    pub fn from_slices(source: &[TokenId], target: &[TokenId]) -> Self {
        assert!(
            !source.contains(&SEPARATOR) && !target.contains(&SEPARATOR),
            "token id 0 is reserved for the separator"
        );
        let (s_len, t_len) = (source.len(), target.len());
        let mut psi = Vec::with_capacity(s_len + 1 + t_len);
        psi.extend_from_slice(source);
        psi.push(SEPARATOR);
        psi.extend_from_slice(target);
        assert!(
            psi.len() < u32::MAX as usize,
            "sequences too long for 32-bit ranks"
        );

        let ss = SuffixStructure::build(psi);
        let mut tau = PersistentSet::with_capacity(s_len);
        for p in 0..s_len {
            tau.insert(ss.rank()[p] as u32);
        }
        Self {
            s_len,
            t_len,
            ss,
            tau,
        }
    }

    pub fn source_len(&self) -> usize {
        self.s_len
    }

    pub fn target_len(&self) -> usize {
        self.t_len
    }

    pub fn suffixes(&self) -> &SuffixStructure {
        &self.ss
    }

    /// The persistent set of source suffix ranks; version `v` covers source
    /// start positions `0..v`.
    pub fn tau(&self) -> &PersistentSet {
        &self.tau
    }

    pub fn check(&self, q: MatchQuery) -> Result<()> {
        self.check_at(q, 0)
    }

    fn check_at(&self, q: MatchQuery, index: usize) -> Result<()> {
        if q.t_start > self.t_len || q.s_bound > self.s_len {
            return Err(Error::QueryOutOfRange {
                index,
                t_start: q.t_start,
                s_bound: q.s_bound,
                t_len: self.t_len,
                s_len: self.s_len,
            });
        }
        Ok(())
    }

    /// Whether some source start `p <= j` begins a length-`k` match with the
    /// target at `i`. The match may run past `j`.
    ///
    /// Requires `i <= N_T` and `j < N_S` (any `j` is accepted when `k == 0`).
    pub fn relaxed_query(&self, i: usize, j: usize, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        assert!(i <= self.t_len, "target position {i} out of range");
        assert!(j < self.s_len, "source position {j} out of range");
        if i + k > self.t_len {
            return false;
        }
        self.best_match(i, j + 1) >= k
    }

    // Longest match of T[i..] against source suffixes starting in 0..version.
    // The best partner is one of the two rank-neighbours of T[i..] among
    // those suffixes, since lcp decays moving away from a rank.
    fn best_match(&self, i: usize, version: usize) -> usize {
        let z = self.ss.rank()[self.s_len + 1 + i];
        let z32 = z as u32;
        let below = self.tau.pred_strict(version, z32);
        let above = self.tau.succ_strict(version, z32);
        let lcp = |r: Option<u32>| r.map_or(0, |r| self.ss.lcp_ranks(r as usize, z));
        lcp(below).max(lcp(above))
    }

    /// Longest match starting at `q.t_start` in `T` and lying wholly within
    /// the first `q.s_bound` tokens of `S`.
    ///
    /// Panics on an out-of-range query; see [`check`](Self::check).
    pub fn strict_match_length(&self, q: MatchQuery) -> usize {
        if let Err(e) = self.check(q) {
            panic!("{e}");
        }
        let (i, j) = (q.t_start, q.s_bound);
        // invariant: a match of length lo exists, none of length hi + 1
        let (mut lo, mut hi) = (0, j.min(self.t_len - i));
        while lo < hi {
            let k = lo + (hi - lo).div_ceil(2);
            if self.relaxed_query(i, j - k, k) {
                lo = k;
            } else {
                hi = k - 1;
            }
        }
        lo
    }

    /// `Λ = strict_match_length + 1`.
    pub fn lambda_length(&self, q: MatchQuery) -> usize {
        self.strict_match_length(q) + 1
    }

    /// `Λ` for every query, in order. Fails on the first out-of-range query
    /// without evaluating any.
    pub fn batch_lambda(&self, queries: &[MatchQuery]) -> Result<Vec<usize>> {
        for (index, &q) in queries.iter().enumerate() {
            self.check_at(q, index)?;
        }
        Ok(queries.iter().map(|&q| self.lambda_length(q)).collect())
    }
}

/// Reference strict match length: tries every source start below the bound
/// and extends symbol by symbol.
pub fn brute_force_strict(source: &[TokenId], target: &[TokenId], q: MatchQuery) -> usize {
    let (i, j) = (q.t_start, q.s_bound);
    assert!(i <= target.len() && j <= source.len(), "query out of range");
    let mut best = 0;
    for p in 0..j {
        let mut k = 0;
        while p + k < j && i + k < target.len() && source[p + k] == target[i + k] {
            k += 1;
        }
        best = best.max(k);
    }
    best
}

/// `Λ` straight from its definition as the shortest unseen substring: try
/// lengths `1, 2, ...` and, for each, scan the source prefix for an
/// occurrence of `T[i..i + len]`; `Λ` is the first length with no
/// occurrence. Cubic in the worst case.
pub fn brute_force_lambda_search(source: &[TokenId], target: &[TokenId], q: MatchQuery) -> usize {
    let (i, j) = (q.t_start, q.s_bound);
    assert!(i <= target.len() && j <= source.len(), "query out of range");
    let remaining = target.len() - i;
    let mut len = 1;
    while len <= remaining && len <= j {
        let needle = &target[i..i + len];
        if !source[..j].windows(len).any(|w| w == needle) {
            break;
        }
        len += 1;
    }
    len
}
