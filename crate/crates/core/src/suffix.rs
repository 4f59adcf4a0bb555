//! Suffix array, adjacent-LCP table and O(1) arbitrary-pair LCP queries.

use crate::tokens::TokenId;

/// Suffix array over an id sequence together with its inverse, the
/// Kasai adjacent-LCP table and a sparse table for range minima over it.
#[derive(Debug, Clone)]
pub struct SuffixStructure {
    psi: Vec<TokenId>,
    sa: Vec<usize>,
    rank: Vec<usize>,
    lcp_adj: Vec<usize>,
    rmq: SparseMin,
}

impl SuffixStructure {
    /// Builds the structure by prefix doubling with counting sorts,
    /// `O(M log M)` time.
    ///
    /// Panics if `psi` is empty.
    pub fn build(psi: Vec<TokenId>) -> Self {
        assert!(
            !psi.is_empty(),
            "suffix structure needs a non-empty sequence"
        );
        let sa = suffix_array(&psi);
        let mut rank = vec![0; psi.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p] = r;
        }
        let lcp_adj = kasai(&psi, &sa, &rank);
        let rmq = SparseMin::new(&lcp_adj);
        Self {
            psi,
            sa,
            rank,
            lcp_adj,
            rmq,
        }
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn psi(&self) -> &[TokenId] {
        &self.psi
    }

    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    /// `lcp_adj[r]` is the LCP of suffixes `sa[r - 1]` and `sa[r]`; entry 0 is 0.
    pub fn lcp_adj(&self) -> &[usize] {
        &self.lcp_adj
    }

    /// Longest common prefix of the suffixes starting at `a` and `b`.
    pub fn lcp_any(&self, a: usize, b: usize) -> usize {
        let m = self.psi.len();
        assert!(
            a < m && b < m,
            "lcp position out of range: ({a}, {b}) with length {m}"
        );
        if a == b {
            return m - a;
        }
        self.lcp_ranks(self.rank[a], self.rank[b])
    }

    /// Same as [`lcp_any`](Self::lcp_any) but addressed by suffix-array rank.
    pub fn lcp_ranks(&self, ra: usize, rb: usize) -> usize {
        if ra == rb {
            return self.psi.len() - self.sa[ra];
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.rmq.min(lo + 1, hi + 1)
    }
}

fn suffix_array(psi: &[TokenId]) -> Vec<usize> {
    let m = psi.len();

    // dense initial ranks
    let mut alphabet = psi.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut rank: Vec<usize> = psi
        .iter()
        .map(|t| alphabet.binary_search(t).unwrap())
        .collect();
    let mut classes = alphabet.len();

    let mut sa = vec![0usize; m];
    let mut tmp = vec![0usize; m];
    let mut count = vec![0usize; m.max(classes) + 1];

    counting_sort(
        (0..m).collect::<Vec<_>>().as_slice(),
        &rank,
        classes,
        &mut count,
        &mut sa,
    );

    let mut k = 1;
    while classes < m {
        // order by second key: suffixes shorter than k first, then by sa shifted
        let mut order = Vec::with_capacity(m);
        order.extend(m - k.min(m)..m);
        order.extend(sa.iter().filter(|&&p| p >= k).map(|&p| p - k));

        counting_sort(&order, &rank, classes, &mut count, &mut sa);

        let key = |p: usize| (rank[p], if p + k < m { rank[p + k] as isize } else { -1 });
        tmp[sa[0]] = 0;
        let mut next = 0;
        for r in 1..m {
            if key(sa[r]) != key(sa[r - 1]) {
                next += 1;
            }
            tmp[sa[r]] = next;
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = next + 1;
        k *= 2;
    }
    sa
}

// Stable counting sort of `items` by `rank[item]` into `out`.
fn counting_sort(
    items: &[usize],
    rank: &[usize],
    classes: usize,
    count: &mut [usize],
    out: &mut [usize],
) {
    count[..=classes].fill(0);
    for &p in items {
        count[rank[p] + 1] += 1;
    }
    for c in 1..=classes {
        count[c] += count[c - 1];
    }
    for &p in items {
        let slot = &mut count[rank[p]];
        out[*slot] = p;
        *slot += 1;
    }
}

fn kasai(psi: &[TokenId], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let m = psi.len();
    let mut lcp = vec![0; m];
    let mut h = 0usize;
    for p in 0..m {
        let r = rank[p];
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1];
        while p + h < m && q + h < m && psi[p + h] == psi[q + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Sparse table answering range minima over a fixed slice in O(1).
#[derive(Debug, Clone)]
struct SparseMin {
    // levels[k][i] = min of values[i..i + 2^k]
    levels: Vec<Vec<u32>>,
}

impl SparseMin {
    fn new(values: &[usize]) -> Self {
        let base: Vec<u32> = values
            .iter()
            .map(|&v| u32::try_from(v).expect("lcp exceeds u32"))
            .collect();
        let mut levels = vec![base];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..prev.len() - width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        Self { levels }
    }

    /// Minimum over the half-open range `[lo, hi)`, which must be non-empty.
    fn min(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo < hi);
        let k = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let level = &self.levels[k];
        level[lo].min(level[hi - (1 << k)]) as usize
    }
}
