//! Test-side oracles, written without the library's LCE machinery.
#![allow(dead_code)]

use std::collections::HashMap;

use fsdsq::Word;

/// Cubic census: compare both halves of every candidate square directly
/// and remember the last start of each square value.
pub struct NaiveCensus {
    pub s: Vec<u32>,
    pub distinct: usize,
}

pub fn naive_census(w: &[u8]) -> NaiveCensus {
    let n = w.len();
    let mut last: HashMap<&[u8], usize> = HashMap::new();
    for i in 0..n {
        for p in 1..=(n - i) / 2 {
            if w[i..i + p] == w[i + p..i + 2 * p] {
                last.insert(&w[i..i + 2 * p], i);
            }
        }
    }
    let mut s = vec![0u32; n];
    for &i in last.values() {
        s[i] += 1;
    }
    NaiveCensus {
        s,
        distinct: last.len(),
    }
}

/// All words of length `n` over `k` letters, in lexicographic order.
pub fn all_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// First-occurrence test, independent of the library's enumerator.
pub fn is_canonical(w: &[u8]) -> bool {
    let mut seen: Vec<u8> = Vec::new();
    for &c in w {
        if !seen.contains(&c) {
            if c as usize != seen.len() {
                return false;
            }
            seen.push(c);
        }
    }
    true
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

pub const SEVENTEEN: &str = "abaababaabaababaa";
pub const V: &str = "abaaabaabaaabb";

/// Published letter rows of the two unequal examples.
pub const W1_TEXT: &str = concat!(
    "aabaaabaabaaabbababaaabaabaaabb",
    "abaaabaabaaabbababaaabaabaaabb"
);
pub const W2_TEXT: &str = concat!(
    "aabaaabaabaaabbabaaabaabaaabbababaaabaabaaabb",
    "abaaabaabaaabbabaaabaabaaabbababaaabaabaaabb"
);

pub fn w1() -> Word {
    word(W1_TEXT)
}

pub fn w2() -> Word {
    word(W2_TEXT)
}

/// `a (V m V)^2` with `m = ab` (w1) or `m = V ab` (w2).
pub fn template_word(long: bool) -> Word {
    let m = if long { format!("{V}ab") } else { "ab".into() };
    word(&format!("a{}", format!("{V}{m}{V}").repeat(2)))
}

pub fn digits(s: &str) -> Vec<u32> {
    s.chars().map(|c| c.to_digit(10).unwrap()).collect()
}

/// Published s_i rows.
pub const SEVENTEEN_S: &str = "22000011100110010";
pub const W1_S: &str = concat!(
    "2210000000000000111110000000000",
    "000000000000001110011100001010"
);
pub const W2_S: &str = concat!(
    "221000000000001110000000000000000001111111111",
    "11110000000000000000000000001110011100001010"
);
