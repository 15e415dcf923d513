//! Words up to alphabet renaming.
//!
//! A word is canonical when its first letter is `a` and each letter that
//! has not been seen yet is the smallest unused one. Every word has exactly
//! one canonical renaming.

use crate::word::Word;

/// First-occurrence renaming of `w`.
pub fn canonicalize(w: &[u8]) -> Word {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    let codes: Vec<u8> = w
        .iter()
        .map(|&c| {
            if map[c as usize] == u8::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect();
    Word::from_codes(codes)
}

pub fn is_canonical(w: &[u8]) -> bool {
    let mut fresh = 0u8;
    for &c in w {
        if c > fresh {
            return false;
        }
        if c == fresh {
            fresh += 1;
        }
    }
    true
}

/// Visit every canonical word of length `n` over `k` letters that starts
/// with the canonical `prefix`, in lexicographic order.
pub fn for_each_canonical(k: usize, n: usize, prefix: &[u8], mut visit: impl FnMut(&[u8])) {
    debug_assert!(is_canonical(prefix) && prefix.len() <= n);
    let used = prefix.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut buf = prefix.to_vec();
    extend(k, n, used, &mut buf, &mut visit);
}

fn extend(k: usize, n: usize, used: usize, buf: &mut Vec<u8>, visit: &mut impl FnMut(&[u8])) {
    if buf.len() == n {
        visit(buf);
        return;
    }
    for c in 0..k.min(used + 1) {
        buf.push(c as u8);
        extend(k, n, used.max(c + 1), buf, visit);
        buf.pop();
    }
}

/// All canonical words of length `n` over `k` letters, in lexicographic
/// order.
pub fn canonical_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_canonical(k, n, &[], |w| out.push(Word::from(w)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_stirling_sums() {
        // Binary: 2^(n-1); ternary: S(n,1) + S(n,2) + S(n,3).
        for n in 1..=10 {
            assert_eq!(canonical_words(2, n).len(), 1 << (n - 1));
            let s3 = 3usize.pow(n as u32 - 1).div_ceil(2);
            assert_eq!(canonical_words(3, n).len(), s3, "{n}");
        }
        assert_eq!(canonical_words(1, 5).len(), 1);
        assert_eq!(canonical_words(2, 0), vec![Word::new()]);
    }

    #[test]
    fn every_word_has_one_canonical_form() {
        let canon = canonical_words(3, 6);
        assert!(canon.windows(2).all(|p| p[0] < p[1]));
        for code in 0..3u32.pow(6) {
            let mut c = code;
            let w: Vec<u8> = (0..6)
                .map(|_| {
                    let d = (c % 3) as u8;
                    c /= 3;
                    d
                })
                .collect();
            let r = canonicalize(&w);
            assert!(is_canonical(&r));
            assert!(canon.binary_search(&r).is_ok());
        }
    }

    #[test]
    fn prefix_restricts_enumeration() {
        let mut got = Vec::new();
        for_each_canonical(2, 4, &[0, 1], |w| got.push(Word::from(w).to_string()));
        assert_eq!(got, ["abaa", "abab", "abba", "abbb"]);
        assert_eq!(
            canonicalize(&"bca".parse::<Word>().unwrap()).to_string(),
            "abc"
        );
    }
}
