//! Letters, alphabets, ordered alphabets and words.
//!
//! Letters are the lowercase characters `'a'..='z'`. Words serialize as plain
//! strings; the empty word is the empty string, or `-` on the command line.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Number of canonical letters.
pub const MAX_LETTERS: usize = 26;

/// Command-line spelling of the empty word.
pub const EMPTY_WORD_TOKEN: &str = "-";

/// A single symbol `'a'..='z'`.
///
/// The derived order is the canonical character order. It is used for
/// canonical listings only and says nothing about any alphabet ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Result<Letter> {
        if c.is_ascii_lowercase() {
            Ok(Letter(c as u8))
        } else {
            Err(Error::InvalidLetter(c))
        }
    }

    /// Panics on a byte outside `b'a'..=b'z'`; meant for constants.
    pub const fn from_ascii(c: u8) -> Letter {
        assert!(c.is_ascii_lowercase(), "not a letter");
        Letter(c)
    }

    /// `0 -> 'a'`, `25 -> 'z'`.
    pub fn from_index(index: usize) -> Option<Letter> {
        (index < MAX_LETTERS).then(|| Letter(b'a' + index as u8))
    }

    pub fn index(self) -> usize {
        (self.0 - b'a') as usize
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;

    fn try_from(c: char) -> Result<Letter> {
        Letter::new(c)
    }
}

/// An unordered finite set of letters, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    mask: u32,
}

impl Alphabet {
    pub fn empty() -> Alphabet {
        Alphabet { mask: 0 }
    }

    /// The first `size` canonical letters.
    pub fn first(size: usize) -> Result<Alphabet> {
        if size > MAX_LETTERS {
            return Err(Error::AlphabetTooLarge { size, max: MAX_LETTERS });
        }
        Ok(Alphabet {
            mask: ((1u64 << size) - 1) as u32,
        })
    }

    pub fn insert(&mut self, letter: Letter) {
        self.mask |= 1 << letter.index();
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.mask & (1 << letter.index()) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet {
            mask: self.mask | other.mask,
        }
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Letters in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..MAX_LETTERS)
            .filter(|&i| self.mask & (1 << i) != 0)
            .filter_map(Letter::from_index)
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.iter().collect()
    }

    /// The ordering that lists the letters in canonical order.
    pub fn canonical_order(&self) -> Result<OrderedAlphabet> {
        OrderedAlphabet::new(self.letters())
    }

    /// Every total ordering of this alphabet, in lexicographic permutation
    /// order of the canonical letter sequence.
    pub fn orderings(&self) -> impl Iterator<Item = OrderedAlphabet> {
        let letters = self.letters();
        let n = letters.len();
        letters
            .into_iter()
            .permutations(n)
            .map(|seq| OrderedAlphabet::new(seq).expect("distinct letters"))
    }

    /// Fails with the first letter of `w` that is not in this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|&l| !self.contains(l)) {
            Some(l) => Err(Error::LetterOutsideAlphabet(l)),
            None => Ok(()),
        }
    }

    /// All words of length exactly `n`, in canonical lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let letters = self.letters();
        if n == 0 {
            return vec![Word::empty()];
        }
        if letters.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(letters.len().pow(n as u32));
        let mut digits = vec![0usize; n];
        loop {
            out.push(Word(digits.iter().map(|&d| letters[d]).collect()));
            // odometer
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < letters.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|n| self.words_of_length(n)).collect()
    }
}

impl FromIterator<Letter> for Alphabet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Alphabet {
        let mut a = Alphabet::empty();
        for l in iter {
            a.insert(l);
        }
        a
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    /// `"abc"` is `{a,b,c}`; `"-"` or `""` is the empty set.
    fn from_str(s: &str) -> Result<Alphabet> {
        let mut a = Alphabet::empty();
        if s == EMPTY_WORD_TOKEN {
            return Ok(a);
        }
        for c in s.chars() {
            let l = Letter::new(c)?;
            if a.contains(l) {
                return Err(Error::DuplicateLetter(l));
            }
            a.insert(l);
        }
        Ok(a)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.iter() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

const NO_RANK: u8 = u8::MAX;

/// An alphabet with a total order: `letters()[0] < letters()[1] < ...`.
///
/// Ranks are 0-based: the least letter has rank 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    seq: Vec<Letter>,
    rank: [u8; MAX_LETTERS],
}

impl OrderedAlphabet {
    pub fn new(seq: Vec<Letter>) -> Result<OrderedAlphabet> {
        if seq.is_empty() {
            return Err(Error::EmptyOrdering);
        }
        let mut rank = [NO_RANK; MAX_LETTERS];
        for (i, &l) in seq.iter().enumerate() {
            if rank[l.index()] != NO_RANK {
                return Err(Error::DuplicateLetter(l));
            }
            rank[l.index()] = i as u8;
        }
        Ok(OrderedAlphabet { seq, rank })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.seq
    }

    pub fn letter(&self, rank: usize) -> Option<Letter> {
        self.seq.get(rank).copied()
    }

    pub fn rank(&self, letter: Letter) -> Option<usize> {
        match self.rank[letter.index()] {
            NO_RANK => None,
            r => Some(r as usize),
        }
    }

    pub fn underlying(&self) -> Alphabet {
        self.seq.iter().copied().collect()
    }

    /// Ranks of the letters of `w`, failing on letters outside the alphabet.
    pub fn ranks_of(&self, w: &Word) -> Result<Vec<usize>> {
        w.iter()
            .map(|l| self.rank(l).ok_or(Error::LetterOutsideAlphabet(l)))
            .collect()
    }

    /// Compares two words lexicographically under this ordering.
    pub fn compare_lex(&self, v: &Word, w: &Word) -> Ordering {
        let key = |l: Letter| self.rank(l).unwrap_or(usize::MAX);
        v.iter().map(key).cmp(w.iter().map(key))
    }
}

impl FromStr for OrderedAlphabet {
    type Err = Error;

    /// `"cab"` is `{c<a<b}`.
    fn from_str(s: &str) -> Result<OrderedAlphabet> {
        let seq = s.chars().map(Letter::new).collect::<Result<Vec<_>>>()?;
        OrderedAlphabet::new(seq)
    }
}

impl fmt::Display for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.seq {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.seq.iter().join("<"))
    }
}

/// A finite sequence of letters. `Word::empty()` is λ.
///
/// Words order by length first, then lexicographically by canonical letter
/// order (shortlex).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The set of letters occurring in the word.
    pub fn support(&self) -> Alphabet {
        self.iter().collect()
    }

    /// Erases every letter outside `gamma`.
    pub fn project(&self, gamma: &Alphabet) -> Word {
        Word(self.iter().filter(|&l| gamma.contains(l)).collect())
    }

    pub fn count_letter(&self, letter: Letter) -> usize {
        self.iter().filter(|&l| l == letter).count()
    }

    /// Occurrence count of every canonical letter.
    pub fn letter_counts(&self) -> [u32; MAX_LETTERS] {
        let mut counts = [0u32; MAX_LETTERS];
        for l in self.iter() {
            counts[l.index()] += 1;
        }
        counts
    }

    /// Swaps the letters at `i` and `i + 1`.
    pub(crate) fn swapped(&self, i: usize) -> Word {
        let mut letters = self.0.clone();
        letters.swap(i, i + 1);
        Word(letters)
    }

    /// Spelling for the command line, where λ is `-`.
    pub fn to_token(&self) -> String {
        if self.is_empty() {
            EMPTY_WORD_TOKEN.to_string()
        } else {
            self.to_string()
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `-` for λ as well as the empty string.
    fn from_str(s: &str) -> Result<Word> {
        if s == EMPTY_WORD_TOKEN {
            return Ok(Word::empty());
        }
        s.chars().map(Letter::new).collect::<Result<Vec<_>>>().map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "λ")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Letter counts of a word, listed in the order of an ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParikhVector {
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.counts.iter().join(","))
    }
}

pub fn parikh_vector(w: &Word, sigma: &OrderedAlphabet) -> Result<ParikhVector> {
    let mut counts = vec![0u64; sigma.len()];
    for r in sigma.ranks_of(w)? {
        counts[r] += 1;
    }
    Ok(ParikhVector { counts })
}

/// A permutation of `0..s`, acting on the ranks of an ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(size: usize) -> Permutation {
        Permutation {
            images: (0..size).collect(),
        }
    }

    pub fn transposition(size: usize, i: usize, j: usize) -> Result<Permutation> {
        for k in [i, j] {
            if k >= size {
                return Err(Error::IndexOutOfRange { index: k, size });
            }
        }
        let mut images: Vec<usize> = (0..size).collect();
        images.swap(i, j);
        Ok(Permutation { images })
    }

    /// All permutations of `0..size` in lexicographic order.
    pub fn all(size: usize) -> impl Iterator<Item = Permutation> {
        (0..size).permutations(size).map(|images| Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    fn check_size(&self, sigma: &OrderedAlphabet) -> Result<()> {
        if self.len() != sigma.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: sigma.len(),
            });
        }
        Ok(())
    }
}

/// Replaces every occurrence of the rank-`i` letter by the rank-`σ(i)` letter.
pub fn apply_permutation(sigma_perm: &Permutation, w: &Word, sigma: &OrderedAlphabet) -> Result<Word> {
    sigma_perm.check_size(sigma)?;
    Ok(sigma
        .ranks_of(w)?
        .into_iter()
        .map(|r| sigma.seq[sigma_perm.apply(r)])
        .collect())
}

/// The ordering whose rank-`j` letter is the rank-`σ⁻¹(j)` letter of `sigma`.
pub fn permute_alphabet(sigma_perm: &Permutation, sigma: &OrderedAlphabet) -> Result<OrderedAlphabet> {
    sigma_perm.check_size(sigma)?;
    let inv = sigma_perm.inverse();
    OrderedAlphabet::new((0..sigma.len()).map(|j| sigma.seq[inv.apply(j)]).collect())
}
