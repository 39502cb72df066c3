//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's counting or rewriting code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use parikh::{OrderedAlphabet, Word};
use rand::Rng;

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn ord(s: &str) -> OrderedAlphabet {
    s.parse().unwrap()
}

pub fn chars(w: &Word) -> Vec<char> {
    w.to_string().chars().collect()
}

/// Counts embeddings of `u` in `w` by enumerating every position subset.
pub fn brute_count(w: &Word, u: &Word) -> u64 {
    let (w, u) = (chars(w), chars(u));
    assert!(w.len() < 64);
    if u.len() > w.len() {
        return 0;
    }
    let mut total = 0;
    for mask in 0u64..(1u64 << w.len()) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let picked = (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]);
        if picked.eq(u.iter().copied()) {
            total += 1;
        }
    }
    total
}

/// Every word of length `n` over `letters`, built recursively.
pub fn all_words(letters: &str, n: usize) -> Vec<Word> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|p| letters.chars().map(move |c| format!("{p}{c}")))
            .collect();
    }
    out.iter()
        .map(|s| if s.is_empty() { Word::empty() } else { w(s) })
        .collect()
}

pub fn all_words_up_to(letters: &str, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|n| all_words(letters, n)).collect()
}

/// A uniformly random word whose length is drawn from `lens`.
pub fn random_word(rng: &mut impl Rng, letters: &str, lens: std::ops::RangeInclusive<usize>) -> Word {
    let len = rng.random_range(lens);
    let l: Vec<char> = letters.chars().collect();
    let s: String = (0..len).map(|_| l[rng.random_range(0..l.len())]).collect();
    if s.is_empty() {
        Word::empty()
    } else {
        w(&s)
    }
}

pub fn shuffled(rng: &mut impl Rng, x: &Word) -> Word {
    use rand::seq::SliceRandom;
    let mut c = chars(x);
    c.shuffle(rng);
    let s: String = c.into_iter().collect();
    if s.is_empty() {
        Word::empty()
    } else {
        w(&s)
    }
}

/// Matrix entries straight from the definition: row `i`, column `j + 1`
/// holds the count of the factor `a_i .. a_j`.
pub fn matrix_by_counts(x: &Word, order: &str) -> Vec<Vec<u64>> {
    let o: Vec<char> = order.chars().collect();
    let s = o.len();
    let mut m = vec![vec![0; s + 1]; s + 1];
    for i in 0..=s {
        m[i][i] = 1;
        for j in i..s {
            let factor: String = o[i..=j].iter().collect();
            m[i][j + 1] = brute_count(x, &w(&factor));
        }
    }
    m
}

/// Words reachable from `start` by swapping adjacent letters whose positions
/// in `order` differ by at least two.
pub fn commutation_class(start: &Word, order: &str) -> BTreeSet<Vec<usize>> {
    let rank = |c: char| order.find(c).unwrap();
    let first: Vec<usize> = chars(start).into_iter().map(rank).collect();
    let mut seen = BTreeSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(r) = queue.pop_front() {
        for i in 0..r.len().saturating_sub(1) {
            if r[i].abs_diff(r[i + 1]) >= 2 {
                let mut n = r.clone();
                n.swap(i, i + 1);
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen
}

/// Least member of the commutation class, letters compared by their rank.
pub fn commutation_min(start: &Word, order: &str) -> Word {
    let o: Vec<char> = order.chars().collect();
    let min = commutation_class(start, order).into_iter().next().unwrap();
    let s: String = min.into_iter().map(|r| o[r]).collect();
    if s.is_empty() {
        Word::empty()
    } else {
        w(&s)
    }
}

/// Occurrence counts of every scattered subword of `x` with at most `max_k`
/// letters, tallied over all position subsets.
pub fn subword_tally(x: &Word, max_k: usize) -> std::collections::HashMap<String, u64> {
    fn go(c: &[char], from: usize, cur: &mut String, left: usize, out: &mut std::collections::HashMap<String, u64>) {
        *out.entry(cur.clone()).or_default() += 1;
        if left == 0 {
            return;
        }
        for i in from..c.len() {
            cur.push(c[i]);
            go(c, i + 1, cur, left - 1, out);
            cur.pop();
        }
    }
    let mut out = std::collections::HashMap::new();
    go(&chars(x), 0, &mut String::new(), max_k, &mut out);
    out
}
