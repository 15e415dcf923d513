//! Longest-common-extension queries.
//!
//! Built from a suffix array (prefix doubling), the Kasai LCP array and a
//! sparse table for range minima, so every query is answered exactly in
//! O(1) after O(n log² n) preprocessing.

/// Answers `lce(i, j)`: the length of the longest common prefix of the
/// suffixes starting at the 0-based positions `i` and `j`.
#[derive(Debug, Clone)]
pub struct LceTable {
    n: usize,
    sa: Vec<u32>,
    rank: Vec<u32>,
    /// `sparse[k][r]` = min of `lcp[r .. r + 2^k]`, where `lcp[r]` is the
    /// LCP of the suffixes of rank `r - 1` and `r`.
    sparse: Vec<Vec<u32>>,
}

impl LceTable {
    pub fn new(w: &[u8]) -> Self {
        let n = w.len();
        let sa = suffix_array(w);
        let mut rank = vec![0u32; n];
        for (r, &s) in sa.iter().enumerate() {
            rank[s as usize] = r as u32;
        }
        let lcp = kasai(w, &sa, &rank);
        let sparse = sparse_table(lcp);
        Self {
            n,
            sa,
            rank,
            sparse,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    /// Longest common extension of the suffixes at `i` and `j` (0-based).
    pub fn lce(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.n - i;
        }
        let (ri, rj) = (self.rank[i] as usize, self.rank[j] as usize);
        let (lo, hi) = if ri < rj { (ri + 1, rj) } else { (rj + 1, ri) };
        self.range_min(lo, hi) as usize
    }

    /// Minimum of `lcp[lo..=hi]`.
    fn range_min(&self, lo: usize, hi: usize) -> u32 {
        let k = usize::BITS - 1 - (hi - lo + 1).leading_zeros();
        let row = &self.sparse[k as usize];
        row[lo].min(row[hi + 1 - (1 << k)])
    }

    /// For every position `i`, the longest extension shared with any later
    /// suffix: `max_{j > i} lce(i, j)` (0 for the last position).
    ///
    /// A factor starting at `i` occurs again further right iff its length
    /// is at most this value.
    pub fn longest_later_match(&self) -> Vec<usize> {
        let n = self.n;
        let mut out = vec![0; n];
        let mut seen = std::collections::BTreeSet::new();
        for i in (0..n).rev() {
            let r = self.rank[i] as usize;
            let mut best = 0;
            if let Some(&prev) = seen.range(..r).next_back() {
                best = best.max(self.range_min(prev + 1, r));
            }
            if let Some(&next) = seen.range(r + 1..).next() {
                best = best.max(self.range_min(r + 1, next));
            }
            out[i] = best as usize;
            seen.insert(r);
        }
        out
    }
}

fn suffix_array(w: &[u8]) -> Vec<u32> {
    let n = w.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<u32> = w.iter().map(|&c| c as u32).collect();
    let mut next = vec![0u32; n];
    let mut k = 1;
    loop {
        // Pair (rank[i], rank[i + k] + 1), with 0 standing for "past the end".
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0] as usize] = 0;
        for r in 1..n {
            let bump = (key(sa[r - 1]) != key(sa[r])) as u32;
            next[sa[r] as usize] = next[sa[r - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

fn kasai(w: &[u8], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = w.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && w[i + h] == w[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

fn sparse_table(base: Vec<u32>) -> Vec<Vec<u32>> {
    let n = base.len();
    let mut table = vec![base];
    let mut width = 1;
    while 2 * width <= n {
        let prev = table.last().unwrap();
        let row = (0..=n - 2 * width)
            .map(|i| prev[i].min(prev[i + width]))
            .collect();
        table.push(row);
        width *= 2;
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn naive_lce(w: &[u8], i: usize, j: usize) -> usize {
        w[i..]
            .iter()
            .zip(&w[j..])
            .take_while(|(a, b)| a == b)
            .count()
    }

    fn check_all_pairs(w: &[u8]) {
        let t = LceTable::new(w);
        for i in 0..w.len() {
            for j in 0..w.len() {
                assert_eq!(t.lce(i, j), naive_lce(w, i, j), "{w:?} {i} {j}");
            }
        }
        let later = t.longest_later_match();
        for (i, &got) in later.iter().enumerate() {
            let expect = (i + 1..w.len())
                .map(|j| naive_lce(w, i, j))
                .max()
                .unwrap_or(0);
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn examples_one_based() {
        let t = LceTable::new(&"aaaa".parse::<Word>().unwrap());
        assert_eq!(t.lce(0, 1), 3);
        let t = LceTable::new(&"abab".parse::<Word>().unwrap());
        assert_eq!(t.lce(0, 2), 2);
        let w: Word = "abaababaabaababaa".parse().unwrap();
        // The whole suffix at 9 matches: lce(1, 9) = 9.
        assert_eq!(naive_lce(&w, 0, 8), 9);
        assert_eq!(LceTable::new(&w).lce(0, 8), 9);
    }

    #[test]
    fn identity_and_symmetry() {
        let w: Word = "abaababaab".parse().unwrap();
        let t = LceTable::new(&w);
        for i in 0..w.len() {
            assert_eq!(t.lce(i, i), w.len() - i);
            for j in 0..w.len() {
                assert_eq!(t.lce(i, j), t.lce(j, i));
            }
        }
    }

    #[test]
    fn exhaustive_small_words() {
        for n in 1..=9u32 {
            for code in 0..3u32.pow(n) {
                let mut c = code;
                let w: Vec<u8> = (0..n)
                    .map(|_| {
                        let d = (c % 3) as u8;
                        c /= 3;
                        d
                    })
                    .collect();
                check_all_pairs(&w);
            }
        }
    }

    #[test]
    fn suffix_array_is_sorted() {
        let w: Word = "mississippi".parse().unwrap();
        let t = LceTable::new(&w);
        let sa = t.suffix_array();
        for r in 1..sa.len() {
            assert!(w[sa[r - 1] as usize..] < w[sa[r] as usize..]);
        }
    }

    #[test]
    fn empty_and_single() {
        assert!(LceTable::new(&[]).is_empty());
        let t = LceTable::new(&[4]);
        assert_eq!(t.lce(0, 0), 1);
        assert_eq!(t.longest_later_match(), vec![0]);
    }
}
