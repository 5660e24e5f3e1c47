//! Finite and lazily generated infinite words over the alphabet `{a, b}`.
//!
//! Infinite words are only ever observed through [`WordStream::prefix`]. Every
//! stream memoizes the longest prefix computed so far, so repeated queries are
//! cheap and always agree with each other.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("`{prefix}` is not a prefix of `{word}`")]
    NotAPrefix { prefix: Word, word: Word },
    #[error("`{suffix}` is not a suffix of `{word}`")]
    NotASuffix { suffix: Word, word: Word },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid letter {0:?}; words are strings over {{a, b}}")]
    InvalidLetter(char),
}

/// A letter of the two-letter alphabet, ordered `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    /// The other letter.
    pub fn swap(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = WordError;

    fn try_from(c: char) -> Result<Self, Self::Error> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            other => Err(WordError::InvalidLetter(other)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word. `Display` writes the machine form (the empty word is `""`);
/// use [`Word::human`] for the human form, where the empty word reads `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(c: Letter) -> Self {
        Word(vec![c])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, c: Letter) {
        self.0.push(c);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    /// `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self^n`.
    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// The first `len` letters (the whole word if it is shorter).
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &[Letter]) -> bool {
        other.starts_with(&self.0)
    }

    /// `u⁻¹w` where `self = w`.
    pub fn strip_prefix(&self, u: &Word) -> Result<Word, WordError> {
        self.0
            .strip_prefix(u.letters())
            .map(|rest| Word(rest.to_vec()))
            .ok_or_else(|| WordError::NotAPrefix {
                prefix: u.clone(),
                word: self.clone(),
            })
    }

    /// `wv⁻¹` where `self = w`.
    pub fn strip_suffix(&self, v: &Word) -> Result<Word, WordError> {
        self.0
            .strip_suffix(v.letters())
            .map(|rest| Word(rest.to_vec()))
            .ok_or_else(|| WordError::NotASuffix {
                suffix: v.clone(),
                word: self.clone(),
            })
    }

    /// The `k`-th conjugate: `vu` where `self = uv` and `|u| = k`.
    pub fn conjugate(&self, k: usize) -> Result<Word, WordError> {
        if k > self.len() {
            return Err(WordError::IndexOutOfRange {
                index: k,
                max: self.len(),
            });
        }
        let mut letters = self.0.clone();
        letters.rotate_left(k);
        Ok(Word(letters))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Letterwise exchange of `a` and `b`.
    pub fn exchanged(&self) -> Word {
        Word(self.0.iter().map(|c| c.swap()).collect())
    }

    /// All distinct factors of length `n`.
    pub fn distinct_factors(&self, n: usize) -> Result<BTreeSet<Word>, WordError> {
        if n > self.len() {
            return Err(WordError::IndexOutOfRange {
                index: n,
                max: self.len(),
            });
        }
        if n == 0 {
            return Ok(BTreeSet::from([Word::empty()]));
        }
        Ok(self.0.windows(n).map(|w| Word(w.to_vec())).collect())
    }

    /// Human-readable form: `ε` for the empty word.
    pub fn human(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.to_string()
        }
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Letter> for Word {
    fn from(c: Letter) -> Self {
        Word::letter(c)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses a string over `{a, b}`. Both `""` and `"ε"` denote the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" {
            return Ok(Word::empty());
        }
        s.chars().map(Letter::try_from).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|c| c.as_char()).collect();
        f.write_str(&s)
    }
}

/// Shorthand for parsing a word literal in code and tests. Panics on letters
/// outside `{a, b}`.
pub fn w(s: &str) -> Word {
    s.parse().expect("word literal over {a, b}")
}

/// Producer of ever-longer prefixes of one fixed infinite word.
pub trait PrefixSource: Send + Sync {
    /// Returns a prefix of length at least `len`. Longer results are allowed
    /// and are kept by the memoizing [`WordStream`].
    fn generate(&self, len: usize) -> Word;
}

impl<F> PrefixSource for F
where
    F: Fn(usize) -> Word + Send + Sync,
{
    fn generate(&self, len: usize) -> Word {
        self(len)
    }
}

struct StreamInner {
    source: Box<dyn PrefixSource>,
    cache: Mutex<Word>,
}

/// An infinite word over `{a, b}`, observed through its prefixes.
///
/// Cloning is cheap and clones share the memoized prefix.
#[derive(Clone)]
pub struct WordStream {
    inner: Arc<StreamInner>,
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cached = self.inner.cache.lock().expect("stream cache poisoned");
        let head = cached.prefix(32);
        write!(f, "WordStream({head}…)")
    }
}

impl WordStream {
    pub fn new<S: PrefixSource + 'static>(source: S) -> Self {
        WordStream {
            inner: Arc::new(StreamInner {
                source: Box::new(source),
                cache: Mutex::new(Word::empty()),
            }),
        }
    }

    /// The first `len` letters.
    pub fn prefix(&self, len: usize) -> Word {
        let mut cache = self.inner.cache.lock().expect("stream cache poisoned");
        if cache.len() < len {
            // Grow geometrically so that incremental callers stay linear.
            let target = len.max(cache.len().saturating_mul(2));
            let produced = self.inner.source.generate(target);
            assert!(
                produced.len() >= len,
                "prefix source returned {} letters, {} requested",
                produced.len(),
                len
            );
            *cache = produced;
        }
        cache.prefix(len)
    }

    /// The letter at position `i`.
    pub fn letter_at(&self, i: usize) -> Letter {
        self.prefix(i + 1)[i]
    }

    /// The `k`-th conjugate: this word with its first `k` letters removed.
    pub fn shift(&self, k: usize) -> WordStream {
        if k == 0 {
            return self.clone();
        }
        let base = self.clone();
        WordStream::new(move |len: usize| {
            let full = base.prefix(len + k);
            Word::from_letters(full[k..].to_vec())
        })
    }

    /// `u⁻¹x`, failing when `u` does not head this word.
    pub fn strip_prefix(&self, u: &Word) -> Result<WordStream, WordError> {
        let head = self.prefix(u.len());
        if &head != u {
            return Err(WordError::NotAPrefix {
                prefix: u.clone(),
                word: head,
            });
        }
        Ok(self.shift(u.len()))
    }

    /// `u · x`.
    pub fn prepend(&self, u: &Word) -> WordStream {
        if u.is_empty() {
            return self.clone();
        }
        let base = self.clone();
        let u = u.clone();
        WordStream::new(move |len: usize| {
            let tail = base.prefix(len.saturating_sub(u.len()));
            u.concat(&tail)
        })
    }

    /// Letterwise exchange `E(x)`.
    pub fn exchanged(&self) -> WordStream {
        let base = self.clone();
        WordStream::new(move |len: usize| base.prefix(len).exchanged())
    }

    /// The infinite concatenation of the words produced by `next_factor`
    /// (called with 0, 1, 2, …). Every factor must be nonempty.
    pub fn from_factors<F>(next_factor: F) -> WordStream
    where
        F: Fn(usize) -> Word + Send + Sync + 'static,
    {
        WordStream::new(move |len: usize| {
            let mut out = Word::empty();
            let mut i = 0;
            while out.len() < len {
                let factor = next_factor(i);
                assert!(
                    !factor.is_empty(),
                    "factor {i} of an infinite product is empty"
                );
                out.extend_from(&factor);
                i += 1;
            }
            out
        })
    }

    /// Number of distinct factors of length `n` within the first `window` letters.
    pub fn factor_count(&self, n: usize, window: usize) -> Result<usize, WordError> {
        Ok(self.prefix(window).distinct_factors(n)?.len())
    }
}
