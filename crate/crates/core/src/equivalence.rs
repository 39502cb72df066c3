//! Ordering-free relations built on Parikh matrices.
//!
//! Strong M-equivalence asks for equal Parikh matrices under every ordering
//! of the alphabet; equivalently, equal counts on every pattern that uses each
//! letter at most once. Weak M-relatedness asks for a single ordering.

use crate::error::{Error, Result};
use crate::matrix::m_equivalent;
use crate::subword::{count_subword, distinct_letter_patterns, MAX_PATTERN_ALPHABET};
use crate::word::{Alphabet, Letter, OrderedAlphabet, Word};

/// An ordering under which two words have the same Parikh matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderingWitness {
    pub ordering: OrderedAlphabet,
}

impl OrderingWitness {
    pub fn certifies(&self, w: &Word, w2: &Word) -> bool {
        m_equivalent(w, w2, &self.ordering).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongVerdict {
    pub equivalent: bool,
    /// Shortlex-least distinct-letter pattern counted differently, when
    /// the words are not equivalent.
    pub separating_pattern: Option<Word>,
}

fn check_search_alphabet(sigma: &Alphabet) -> Result<()> {
    if sigma.len() > MAX_PATTERN_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            size: sigma.len(),
            max: MAX_PATTERN_ALPHABET,
        });
    }
    Ok(())
}

/// Decides strong M-equivalence by comparing counts on distinct-letter
/// patterns over the union of the supports.
pub fn strongly_m_equivalent(w: &Word, w2: &Word) -> Result<StrongVerdict> {
    let sigma = w.support().union(&w2.support());
    for pattern in distinct_letter_patterns(&sigma)? {
        if count_subword(w, &pattern)? != count_subword(w2, &pattern)? {
            return Ok(StrongVerdict {
                equivalent: false,
                separating_pattern: Some(pattern),
            });
        }
    }
    Ok(StrongVerdict {
        equivalent: true,
        separating_pattern: None,
    })
}

/// Decides strong M-equivalence by trying all `|Σ|!` orderings.
pub fn strongly_m_equivalent_by_orderings(w: &Word, w2: &Word, sigma: &Alphabet) -> Result<bool> {
    check_search_alphabet(sigma)?;
    sigma.check_word(w)?;
    sigma.check_word(w2)?;
    for ordering in sigma.orderings() {
        if !m_equivalent(w, w2, &ordering)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first ordering of `sigma`, in lexicographic permutation order, under
/// which `w` and `w2` are M-equivalent.
pub fn weakly_m_related(w: &Word, w2: &Word, sigma: &Alphabet) -> Result<Option<OrderingWitness>> {
    check_search_alphabet(sigma)?;
    sigma.check_word(w)?;
    sigma.check_word(w2)?;
    if !parikh_equivalent(w, w2) {
        return Ok(None);
    }
    for ordering in sigma.orderings() {
        if m_equivalent(w, w2, &ordering)? {
            return Ok(Some(OrderingWitness { ordering }));
        }
    }
    Ok(None)
}

/// Same letter counts.
pub fn parikh_equivalent(w: &Word, w2: &Word) -> bool {
    w.letter_counts() == w2.letter_counts()
}

/// A path from `w` to `w2` in which consecutive words differ by one adjacent
/// transposition of distinct letters.
///
/// Position by position, the nearest matching letter is bubbled leftwards into
/// place. Over an alphabet of at least three letters every hop is a weakly
/// M-related pair.
pub fn transposition_chain(w: &Word, w2: &Word, sigma: &Alphabet) -> Result<Vec<Word>> {
    if !parikh_equivalent(w, w2) {
        return Err(Error::PreconditionViolated(format!(
            "{w} and {w2} have different Parikh vectors"
        )));
    }
    if sigma.len() < 3 {
        return Err(Error::PreconditionViolated(format!(
            "alphabet {sigma:?} has fewer than three letters"
        )));
    }
    sigma.check_word(w)?;

    let target = w2.letters();
    let mut current: Vec<Letter> = w.letters().to_vec();
    let mut chain = vec![w.clone()];
    for (i, &want) in target.iter().enumerate() {
        let j = (i..current.len())
            .find(|&j| current[j] == want)
            .expect("equal letter counts");
        for k in (i..j).rev() {
            current.swap(k, k + 1);
            chain.push(Word::from(current.clone()));
        }
    }
    Ok(chain)
}

/// An ordering of a `2k − 1` letter alphabet, `k = |supp(w)|`, in which no two
/// support letters are adjacent. Every entry above the second diagonal of the
/// Parikh matrix then vanishes, so Parikh-equivalent words agree.
///
/// Fresh letters are the canonical letters outside the support, taken in
/// order. For λ the ordering is the single letter `a`.
pub fn expanded_weak_witness(w: &Word, w2: &Word) -> Result<OrderingWitness> {
    let support = w.support();
    if support != w2.support() {
        return Err(Error::PreconditionViolated(format!(
            "{w} and {w2} have different supports"
        )));
    }
    if !parikh_equivalent(w, w2) {
        return Err(Error::PreconditionViolated(format!(
            "{w} and {w2} have different Parikh vectors"
        )));
    }
    let own = support.letters();
    let mut fresh = (0..crate::word::MAX_LETTERS)
        .filter_map(Letter::from_index)
        .filter(|l| !support.contains(*l));
    let mut seq = Vec::with_capacity(2 * own.len());
    for (i, &l) in own.iter().enumerate() {
        if i > 0 {
            seq.push(
                fresh
                    .next()
                    .ok_or_else(|| Error::PreconditionViolated("not enough fresh letters".to_string()))?,
            );
        }
        seq.push(l);
    }
    if seq.is_empty() {
        seq.extend(fresh.next());
    }
    let witness = OrderingWitness {
        ordering: OrderedAlphabet::new(seq)?,
    };
    if !witness.certifies(w, w2) {
        return Err(Error::PreconditionViolated(format!(
            "{:?} does not separate the support letters",
            witness.ordering
        )));
    }
    Ok(witness)
}
