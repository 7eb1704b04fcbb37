//! Binary words naming cylinders of the Cantor set.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::contract;
use crate::{Error, Result};

/// Longest word a [`Word`] can hold.
pub const MAX_DEPTH: u32 = 64;

/// A finite binary word, stored most significant bit first in `bits`.
/// Words order lexicographically as strings, so a word precedes its
/// extensions. The empty word names the whole space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: u64,
    len: u32,
}

impl Word {
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    /// The word of the low `len` bits of `bits`, most significant first.
    pub fn from_bits(bits: u64, len: u32) -> Result<Self> {
        if len > MAX_DEPTH || (len < 64 && bits >> len != 0) {
            return Err(contract!("{bits:#b} does not fit in {len} bits"));
        }
        Ok(Self { bits, len })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The `i`-th letter.
    pub fn bit(&self, i: u32) -> bool {
        debug_assert!(i < self.len);
        (self.bits >> (self.len - 1 - i)) & 1 == 1
    }

    pub fn child(&self, bit: bool) -> Word {
        assert!(self.len < MAX_DEPTH, "word too long");
        Word {
            bits: (self.bits << 1) | bit as u64,
            len: self.len + 1,
        }
    }

    pub fn parent(&self) -> Option<Word> {
        (self.len > 0).then(|| Word {
            bits: self.bits >> 1,
            len: self.len - 1,
        })
    }

    pub fn last_bit(&self) -> Option<bool> {
        (self.len > 0).then_some(self.bits & 1 == 1)
    }

    pub fn concat(&self, tail: &Word) -> Word {
        assert!(self.len + tail.len <= MAX_DEPTH, "word too long");
        if tail.len == 0 {
            return *self;
        }
        Word {
            bits: (self.bits << tail.len) | tail.bits,
            len: self.len + tail.len,
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.len <= other.len
            && (self.len == 0 || other.bits >> (other.len - self.len) == self.bits)
    }

    /// `other` without the prefix `self`.
    pub fn strip_from(&self, other: &Word) -> Option<Word> {
        if !self.is_prefix_of(other) {
            return None;
        }
        let len = other.len - self.len;
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Some(Word {
            bits: other.bits & mask,
            len,
        })
    }

    /// All words of length `depth`, in order.
    pub fn all_of_length(depth: u32) -> impl Iterator<Item = Word> {
        assert!(depth < 64, "depth too large to enumerate");
        (0..1u64 << depth).map(move |bits| Word { bits, len: depth })
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let a = if common == 0 {
            0
        } else {
            self.bits >> (self.len - common)
        };
        let b = if common == 0 {
            0
        } else {
            other.bits >> (other.len - common)
        };
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::EMPTY;
        for c in s.chars() {
            if w.len == MAX_DEPTH {
                return Err(contract!("word {s:?} longer than {MAX_DEPTH}"));
            }
            w = match c {
                '0' => w.child(false),
                '1' => w.child(true),
                _ => return Err(contract!("word {s:?} is not binary")),
            };
        }
        Ok(w)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        alloc::format!("{w}")
    }
}

/// No word is a prefix of another.
pub fn is_prefix_free(words: &[Word]) -> bool {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| !w[0].is_prefix_of(&w[1]))
}

/// The cylinders of `words` cover the whole space exactly once.
pub fn is_complete_code(words: &[Word]) -> bool {
    if !is_prefix_free(words) || words.is_empty() {
        return false;
    }
    // Kraft sum in units of 2^-MAX_DEPTH, which fits in u128.
    let total: u128 = words.iter().map(|w| 1u128 << (MAX_DEPTH - w.len)).sum();
    total == 1u128 << MAX_DEPTH
}

/// A complete binary prefix code, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixCode {
    words: Vec<Word>,
}

impl PrefixCode {
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        if !is_complete_code(&words) {
            return Err(contract!("{words:?} is not a complete prefix code"));
        }
        words.sort();
        Ok(Self { words })
    }

    pub fn whole() -> Self {
        Self {
            words: alloc::vec![Word::EMPTY],
        }
    }

    /// All words of one length.
    pub fn uniform(depth: u32) -> Self {
        Self {
            words: Word::all_of_length(depth).collect(),
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn order_is_lexicographic() {
        let mut words = vec![w("1"), w("01"), w(""), w("0"), w("00"), w("10")];
        words.sort();
        assert_eq!(
            words,
            vec![w(""), w("0"), w("00"), w("01"), w("1"), w("10")]
        );
    }

    #[test]
    fn prefixes() {
        assert!(w("01").is_prefix_of(&w("0110")));
        assert!(!w("01").is_prefix_of(&w("00")));
        assert!(Word::EMPTY.is_prefix_of(&w("1")));
        assert_eq!(w("01").strip_from(&w("0110")), Some(w("10")));
        assert_eq!(w("0").concat(&w("11")), w("011"));
        assert_eq!(alloc::format!("{}", w("0110")), "0110");
        assert!("012".parse::<Word>().is_err());
    }

    #[test]
    fn codes() {
        assert!(is_complete_code(&[w("0"), w("10"), w("11")]));
        assert!(!is_complete_code(&[w("0"), w("10")]));
        assert!(!is_complete_code(&[w("0"), w("01"), w("1")]));
        assert!(is_complete_code(&[Word::EMPTY]));
        assert_eq!(PrefixCode::uniform(2).len(), 4);
    }
}
