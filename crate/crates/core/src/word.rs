//! Words over a small indexed alphabet and the basic combinatorics on them:
//! primitivity, primitive roots, conjugacy and longest common prefixes.
//!
//! Symbols are stored as codes `0, 1, 2, ...`; the textual encoding maps the
//! letters `a, b, c, ...` onto those codes.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest alphabet representable in the textual encoding.
pub const TEXT_ALPHABET: usize = 26;

/// A finite sequence of symbol codes.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_codes(codes: impl Into<Vec<u8>>) -> Self {
        Self(codes.into())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn codes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_codes(self) -> Vec<u8> {
        self.0
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(symbol);
    }

    pub fn extend_from_slice(&mut self, symbols: &[u8]) {
        self.0.extend_from_slice(symbols);
    }

    /// Number of distinct letters needed to spell the word (`max code + 1`).
    pub fn alphabet_size(&self) -> usize {
        self.0.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Factor `[start, start + len)` as an owned word (0-based).
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// `self^k`.
    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn concat(parts: &[&[u8]]) -> Word {
        Word(parts.concat())
    }

    /// Textual form; fails for codes outside `a..=z`.
    pub fn to_text(&self) -> Result<String> {
        self.0.iter().map(|&c| letter(c)).collect()
    }
}

/// Letter for a symbol code.
pub fn letter(code: u8) -> Result<char> {
    if (code as usize) < TEXT_ALPHABET {
        Ok((b'a' + code) as char)
    } else {
        Err(Error::NotPrintable(code))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(offset, ch)| {
                if ch.is_ascii_lowercase() {
                    Ok(ch as u8 - b'a')
                } else {
                    Err(Error::InvalidCharacter { ch, offset })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            match letter(c) {
                Ok(ch) => write!(f, "{ch}")?,
                Err(_) => write!(f, "<{c}>")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl From<&[u8]> for Word {
    fn from(codes: &[u8]) -> Self {
        Word(codes.to_vec())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let text = self.to_text().map_err(serde::ser::Error::custom)?;
        serializer.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// KMP failure function: `border[i]` is the length of the longest proper
/// border of `w[..=i]`.
fn borders(w: &[u8]) -> Vec<usize> {
    let mut border = vec![0; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = border[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i] = k;
    }
    border
}

/// Smallest period of a nonempty word.
pub fn smallest_period(w: &[u8]) -> usize {
    debug_assert!(!w.is_empty());
    w.len() - borders(w)[w.len() - 1]
}

pub fn is_primitive(w: &[u8]) -> Result<bool> {
    Ok(primitive_root_len(w)? == w.len())
}

/// Length of the primitive root of a nonempty word.
pub fn primitive_root_len(w: &[u8]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let p = smallest_period(w);
    Ok(if w.len().is_multiple_of(p) {
        p
    } else {
        w.len()
    })
}

/// `(root, exponent)` with `root` primitive and `root^exponent = w`.
pub fn primitive_root(w: &[u8]) -> Result<(Word, usize)> {
    let len = primitive_root_len(w)?;
    Ok((Word::from(&w[..len]), w.len() / len))
}

/// Does `needle` occur as a factor of `hay`?
fn occurs_in(needle: &[u8], hay: &[u8]) -> bool {
    if needle.is_empty() {
        return true;
    }
    let border = borders(needle);
    let mut k = 0;
    for &c in hay {
        while k > 0 && c != needle[k] {
            k = border[k - 1];
        }
        if c == needle[k] {
            k += 1;
            if k == needle.len() {
                return true;
            }
        }
    }
    false
}

/// `u` and `v` are conjugate iff they have the same length and `v` is a
/// factor of `uu`.
pub fn are_conjugate(u: &[u8], v: &[u8]) -> bool {
    u.len() == v.len() && occurs_in(v, &[u, u].concat())
}

pub fn lcp(u: &[u8], v: &[u8]) -> usize {
    u.iter().zip(v).take_while(|(a, b)| a == b).count()
}
