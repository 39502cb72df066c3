//! Scattered-subword occurrence counts and distinct-letter patterns.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Largest alphabet for which distinct-letter patterns are enumerated.
pub const MAX_PATTERN_ALPHABET: usize = 8;

/// Number of occurrences of a word as a scattered subword of another.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubwordCount(u64);

impl SubwordCount {
    pub fn new(value: u64) -> SubwordCount {
        SubwordCount(value)
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for SubwordCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl serde::Serialize for SubwordCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

/// `|w|_u`: the number of increasing position tuples of `w` spelling `u`.
/// `|w|_λ = 1`.
pub fn count_subword(w: &Word, u: &Word) -> Result<SubwordCount> {
    let pattern = u.letters();
    // ways[j] = embeddings of pattern[..j] into the prefix of w read so far
    let mut ways = vec![0u64; pattern.len() + 1];
    ways[0] = 1;
    for letter in w.iter() {
        for j in (1..=pattern.len()).rev() {
            if pattern[j - 1] == letter {
                ways[j] = ways[j].checked_add(ways[j - 1]).ok_or(Error::ArithmeticOverflow)?;
            }
        }
    }
    Ok(SubwordCount(ways[pattern.len()]))
}

fn check_pattern_alphabet(sigma: &Alphabet) -> Result<()> {
    if sigma.len() > MAX_PATTERN_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            size: sigma.len(),
            max: MAX_PATTERN_ALPHABET,
        });
    }
    Ok(())
}

/// Every word over `sigma` in which each letter occurs at most once,
/// λ included, in shortlex order.
pub fn distinct_letter_patterns(sigma: &Alphabet) -> Result<Vec<Word>> {
    check_pattern_alphabet(sigma)?;
    let letters = sigma.letters();
    let mut out = vec![Word::empty()];
    for k in 1..=letters.len() {
        out.extend(letters.iter().copied().permutations(k).map(Word::from));
    }
    Ok(out)
}

/// `Σ_{k=0}^{s} s!/(s−k)!`, the number of distinct-letter patterns over `s`
/// letters.
pub fn pattern_count(s: usize) -> usize {
    (0..=s).map(|k| ((s - k + 1)..=s).product::<usize>()).sum()
}

/// Counts of a word on every distinct-letter pattern of an alphabet, listed
/// in pattern order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubwordSignature {
    entries: Vec<(Word, SubwordCount)>,
}

impl SubwordSignature {
    pub fn get(&self, pattern: &Word) -> Option<SubwordCount> {
        self.entries.iter().find(|(p, _)| p == pattern).map(|&(_, c)| c)
    }

    pub fn entries(&self) -> &[(Word, SubwordCount)] {
        &self.entries
    }

    pub fn counts(&self) -> Vec<u64> {
        self.entries.iter().map(|(_, c)| c.get()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn subword_signature(w: &Word, sigma: &Alphabet) -> Result<SubwordSignature> {
    sigma.check_word(w)?;
    let entries = distinct_letter_patterns(sigma)?
        .into_iter()
        .map(|p| count_subword(w, &p).map(|c| (p, c)))
        .collect::<Result<_>>()?;
    Ok(SubwordSignature { entries })
}

/// Counts on a precomputed pattern list; skips the alphabet checks.
pub(crate) fn signature_counts(w: &Word, patterns: &[Word]) -> Result<Vec<u64>> {
    patterns
        .iter()
        .map(|p| count_subword(w, p).map(SubwordCount::get))
        .collect()
}
