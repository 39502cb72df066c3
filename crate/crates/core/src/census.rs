//! Exhaustive enumeration of words and their partition into classes.
//!
//! Every relation here refines "same length and same Parikh vector", so the
//! universe is split into such strata first. Within a stratum each word gets
//! one label per slot; two words are related when some slot labels agree.
//! Equivalences use a single slot. The weak relation uses one slot per
//! ordering, and its classes are the connected components of the resulting
//! graph.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::parikh_matrix_of;
use crate::relation::RelationKind;
use crate::rewrite::{one_equiv_normal_form, RuleSet};
use crate::subword::{distinct_letter_patterns, signature_counts, MAX_PATTERN_ALPHABET};
use crate::word::{Alphabet, OrderedAlphabet, Word};

/// Words of one length sharing one Parikh vector, in shortlex order.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub length: usize,
    /// Letter counts in canonical letter order of the universe alphabet.
    pub counts: Vec<u32>,
    pub members: Vec<Word>,
}

/// All words over an alphabet up to a length, split into strata.
#[derive(Clone, Debug)]
pub struct Universe {
    alphabet: Alphabet,
    max_len: usize,
    strata: Vec<Stratum>,
}

/// `Σ_{n=0}^{max_len} s^n`, or `None` on overflow.
pub fn universe_size(s: usize, max_len: usize) -> Option<u64> {
    (0..=max_len).try_fold(0u64, |acc, n| acc.checked_add((s as u64).checked_pow(n as u32)?))
}

impl Universe {
    pub fn new(alphabet: Alphabet, max_len: usize, budget: usize) -> Result<Universe> {
        let total = universe_size(alphabet.len(), max_len);
        if total.is_none_or(|t| t > budget as u64) {
            return Err(Error::BudgetExceeded(format!(
                "{} words over {{{alphabet}}} up to length {max_len} exceed {budget}",
                total.map_or("too many".to_string(), |t| t.to_string())
            )));
        }
        let letters = alphabet.letters();
        let mut strata = Vec::new();
        for length in 0..=max_len {
            let mut by_counts: BTreeMap<Vec<u32>, Vec<Word>> = BTreeMap::new();
            for w in alphabet.words_of_length(length) {
                let all = w.letter_counts();
                let counts = letters.iter().map(|l| all[l.index()]).collect();
                by_counts.entry(counts).or_default().push(w);
            }
            strata.extend(by_counts.into_iter().map(|(counts, members)| Stratum {
                length,
                counts,
                members,
            }));
        }
        Ok(Universe {
            alphabet,
            max_len,
            strata,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn words_total(&self) -> usize {
        self.strata.iter().map(|s| s.members.len()).sum()
    }
}

/// Union-find over `0..n`, union by size with path halving.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Per-slot labels of the members of one stratum.
#[derive(Clone, Debug)]
pub(crate) struct Labels {
    slots: Vec<Vec<u32>>,
}

impl Labels {
    fn single(labels: Vec<u32>) -> Labels {
        Labels { slots: vec![labels] }
    }

    /// Labels of the first slot; for equivalences these are class ids.
    pub(crate) fn classes(&self) -> &[u32] {
        &self.slots[0]
    }

    pub(crate) fn related(&self, i: usize, j: usize) -> bool {
        self.slots.iter().any(|s| s[i] == s[j])
    }

    /// Number of connected components of the relation.
    pub(crate) fn class_count(&self) -> usize {
        let n = self.slots[0].len();
        if self.slots.len() == 1 {
            return distinct(&self.slots[0]);
        }
        let mut sets = DisjointSets::new(n);
        for slot in &self.slots {
            let mut first: HashMap<u32, usize> = HashMap::new();
            for (i, &l) in slot.iter().enumerate() {
                let rep = *first.entry(l).or_insert(i);
                sets.union(rep, i);
            }
        }
        sets.components()
    }
}

fn distinct(labels: &[u32]) -> usize {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Ids assigned in order of first appearance of each key.
pub(crate) fn fingerprint_labels<K, F>(members: &[Word], key: F) -> Result<Vec<u32>>
where
    K: Hash + Eq,
    F: Fn(&Word) -> Result<K>,
{
    let mut ids: HashMap<K, u32> = HashMap::new();
    members
        .iter()
        .map(|w| {
            let k = key(w)?;
            let next = ids.len() as u32;
            Ok(*ids.entry(k).or_insert(next))
        })
        .collect()
}

/// Connected components of the rewrite graph restricted to `members`.
pub(crate) fn component_labels(members: &[Word], rules: RuleSet<'_>, budget: usize) -> Result<Vec<u32>> {
    const UNSEEN: u32 = u32::MAX;
    let index: HashMap<&Word, usize> = members.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut labels = vec![UNSEEN; members.len()];
    let mut next = 0u32;
    for start in 0..members.len() {
        if labels[start] != UNSEEN {
            continue;
        }
        labels[start] = next;
        let mut size = 1usize;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for n in rules.neighbors(&members[i])? {
                let j = *index.get(&n).ok_or_else(|| {
                    Error::PreconditionViolated(format!("rewrite of {} left its stratum: {n}", members[i]))
                })?;
                if labels[j] == UNSEEN {
                    size += 1;
                    if size > budget {
                        return Err(Error::ClosureBudgetExceeded { budget });
                    }
                    labels[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    Ok(labels)
}

fn check_pattern_size(alphabet: &Alphabet) -> Result<()> {
    if alphabet.len() > MAX_PATTERN_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            size: alphabet.len(),
            max: MAX_PATTERN_ALPHABET,
        });
    }
    Ok(())
}

/// Labels `members` (one stratum over `alphabet`) under `relation`.
pub(crate) fn label_members(
    members: &[Word],
    alphabet: &Alphabet,
    relation: &RelationKind,
    budget: usize,
) -> Result<Labels> {
    Ok(match relation {
        RelationKind::Parikh => Labels::single(vec![0; members.len()]),
        RelationKind::M(o) => Labels::single(fingerprint_labels(members, |w| parikh_matrix_of(w, o))?),
        RelationKind::One(o) => Labels::single(fingerprint_labels(members, |w| one_equiv_normal_form(w, o))?),
        RelationKind::StrongM => {
            check_pattern_size(alphabet)?;
            let patterns = distinct_letter_patterns(alphabet)?;
            Labels::single(fingerprint_labels(members, |w| signature_counts(w, &patterns))?)
        }
        RelationKind::Me(o) => Labels::single(component_labels(members, RuleSet::Me(o), budget)?),
        RelationKind::Mse => Labels::single(component_labels(members, RuleSet::Mse, budget)?),
        RelationKind::Weak(sigma) => {
            check_pattern_size(sigma)?;
            let slots = sigma
                .orderings()
                .map(|o| fingerprint_labels(members, |w| parikh_matrix_of(w, &o)))
                .collect::<Result<_>>()?;
            Labels { slots }
        }
    })
}

fn check_relation_alphabet(alphabet: &Alphabet, relation: &RelationKind) -> Result<()> {
    let covering = match relation {
        RelationKind::M(o) | RelationKind::Me(o) | RelationKind::One(o) => o.underlying(),
        RelationKind::Weak(a) => *a,
        _ => return Ok(()),
    };
    match alphabet.iter().find(|l| !covering.contains(*l)) {
        Some(l) => Err(Error::LetterOutsideAlphabet(l)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthRow {
    pub length: usize,
    pub words: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    #[serde(serialize_with = "serialize_display")]
    pub alphabet: Alphabet,
    pub max_len: usize,
    pub relation: RelationKind,
    pub words_total: usize,
    pub classes_total: usize,
    pub per_length: Vec<LengthRow>,
}

fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Labels every stratum in parallel; results come back in stratum order.
fn label_universe(universe: &Universe, relation: &RelationKind, budget: usize) -> Result<Vec<Labels>> {
    check_relation_alphabet(&universe.alphabet, relation)?;
    universe
        .strata
        .par_iter()
        .map(|s| label_members(&s.members, &universe.alphabet, relation, budget))
        .collect()
}

/// Counts words and classes of `relation` among all words over `alphabet` of
/// length at most `max_len`. For the weak relation, classes are those of its
/// transitive closure.
pub fn census(alphabet: Alphabet, max_len: usize, relation: &RelationKind, budget: usize) -> Result<CensusReport> {
    let universe = Universe::new(alphabet, max_len, budget)?;
    let labels = label_universe(&universe, relation, budget)?;
    let mut per_length: Vec<LengthRow> = (0..=max_len)
        .map(|length| LengthRow {
            length,
            words: 0,
            classes: 0,
        })
        .collect();
    for (stratum, labels) in universe.strata.iter().zip(&labels) {
        let row = &mut per_length[stratum.length];
        row.words += stratum.members.len();
        row.classes += labels.class_count();
    }
    Ok(CensusReport {
        alphabet,
        max_len,
        relation: relation.clone(),
        words_total: per_length.iter().map(|r| r.words).sum(),
        classes_total: per_length.iter().map(|r| r.classes).sum(),
        per_length,
    })
}

/// A pair related by `coarse` but not by `fine`; `w` precedes `w2` in
/// shortlex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapPair {
    pub w: Word,
    pub w2: Word,
    pub coarse: RelationKind,
    pub fine: RelationKind,
}

/// Every pair over `alphabet` up to `max_len` related by `coarse` and not by
/// `fine`, sorted in shortlex order of `(w, w2)`.
pub fn find_gap(
    alphabet: Alphabet,
    max_len: usize,
    coarse: &RelationKind,
    fine: &RelationKind,
    budget: usize,
) -> Result<Vec<GapPair>> {
    let universe = Universe::new(alphabet, max_len, budget)?;
    let coarse_labels = label_universe(&universe, coarse, budget)?;
    let fine_labels = label_universe(&universe, fine, budget)?;
    let mut pairs = Vec::new();
    for ((stratum, c), f) in universe.strata.iter().zip(&coarse_labels).zip(&fine_labels) {
        let m = &stratum.members;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if c.related(i, j) && !f.related(i, j) {
                    pairs.push(GapPair {
                        w: m[i].clone(),
                        w2: m[j].clone(),
                        coarse: coarse.clone(),
                        fine: fine.clone(),
                    });
                }
            }
        }
    }
    pairs.sort_by(|a, b| (&a.w, &a.w2).cmp(&(&b.w, &b.w2)));
    Ok(pairs)
}

/// Labels of a word list under one ordering-free or ordered relation, for
/// callers that build their own strata.
pub(crate) fn labels_for(members: &[Word], relation: &RelationKind, budget: usize) -> Result<Vec<u32>> {
    let alphabet = members.iter().fold(Alphabet::empty(), |a, w| a.union(&w.support()));
    Ok(label_members(members, &alphabet, relation, budget)?.classes().to_vec())
}

/// `{a<b<c}`.
pub(crate) fn abc_order() -> OrderedAlphabet {
    "abc".parse().expect("valid ordering")
}
