//! Swap rules that preserve Parikh matrices, their closures, and the
//! normal form of the partial-commutation congruence generated by E1.
//!
//! * `E1` swaps an adjacent pair whose ranks differ by at least 2.
//! * `E2` rewrites `x·p·q·y·q·p·z` to `x·q·p·y·p·q·z` when `p, q` have
//!   consecutive ranks `k, k+1` and `y` avoids the ranks `k−1` and `k+2`.
//! * `SE` is the same paired swap for any two distinct letters, with `y`
//!   made only of those two letters. It needs no ordering.
//!
//! All rules are applied in both directions. Positions in a [`RewriteStep`]
//! are 0-based left indices of the swapped adjacent pairs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{OrderedAlphabet, Word};

/// Member cap for a single closure.
pub const DEFAULT_CLOSURE_BUDGET: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    E1,
    E2,
    SE,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::E1 => "E1",
            Rule::E2 => "E2",
            Rule::SE => "SE",
        })
    }
}

/// One rule application: the pair at `first` is swapped, and for the paired
/// rules also the pair at `second`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub rule: Rule,
    pub first: usize,
    pub second: Option<usize>,
    pub before: Word,
    pub after: Word,
}

impl RewriteStep {
    /// Applies the recorded swaps to `before`.
    pub fn replay(&self) -> Word {
        let mut w = self.before.swapped(self.first);
        if let Some(j) = self.second {
            w = w.swapped(j);
        }
        w
    }

    /// Re-checks that the rule applies at the recorded positions and
    /// produces `after`. `E1` and `E2` need the ordering.
    pub fn is_valid(&self, sigma: Option<&OrderedAlphabet>) -> bool {
        let moves = match (self.rule, sigma) {
            (Rule::E1, Some(s)) => e1_moves(&self.before, s),
            (Rule::E2, Some(s)) => e2_moves(&self.before, s),
            (Rule::SE, _) => Ok(se_moves(&self.before)),
            _ => return false,
        };
        moves.is_ok_and(|m| {
            m.iter()
                .any(|mv| mv.first == self.first && mv.second == self.second && mv.after == self.after)
        })
    }
}

impl fmt::Display for RewriteStep {
    /// `RULE @ (i,j)/(k,l): before -> after`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ ({},{})", self.rule, self.first, self.first + 1)?;
        if let Some(j) = self.second {
            write!(f, "/({},{})", j, j + 1)?;
        }
        write!(f, ": {} -> {}", self.before, self.after)
    }
}

struct Move {
    first: usize,
    second: Option<usize>,
    after: Word,
}

fn e1_moves(w: &Word, sigma: &OrderedAlphabet) -> Result<Vec<Move>> {
    let ranks = sigma.ranks_of(w)?;
    Ok(ranks
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0].abs_diff(p[1]) >= 2)
        .map(|(i, _)| Move {
            first: i,
            second: None,
            after: w.swapped(i),
        })
        .collect())
}

fn e2_moves(w: &Word, sigma: &OrderedAlphabet) -> Result<Vec<Move>> {
    let r = sigma.ranks_of(w)?;
    let n = r.len();
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let (p, q) = (r[i], r[i + 1]);
        if p.abs_diff(q) != 1 {
            continue;
        }
        let k = p.min(q);
        let excluded = |x: usize| x + 1 == k || x == k + 2;
        for j in i + 2..n {
            if j + 1 < n && r[j] == q && r[j + 1] == p {
                out.push(Move {
                    first: i,
                    second: Some(j),
                    after: w.swapped(i).swapped(j),
                });
            }
            // r[j] joins the middle segment for every later j
            if excluded(r[j]) {
                break;
            }
        }
    }
    Ok(out)
}

fn se_moves(w: &Word) -> Vec<Move> {
    let l = w.letters();
    let n = l.len();
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let (p, q) = (l[i], l[i + 1]);
        if p == q {
            continue;
        }
        for j in i + 2..n {
            if j + 1 < n && l[j] == q && l[j + 1] == p {
                out.push(Move {
                    first: i,
                    second: Some(j),
                    after: w.swapped(i).swapped(j),
                });
            }
            if l[j] != p && l[j] != q {
                break;
            }
        }
    }
    out
}

fn into_steps(rule: Rule, before: &Word, moves: Vec<Move>) -> Vec<RewriteStep> {
    moves
        .into_iter()
        .map(|m| RewriteStep {
            rule,
            first: m.first,
            second: m.second,
            before: before.clone(),
            after: m.after,
        })
        .collect()
}

pub fn e1_steps(w: &Word, sigma: &OrderedAlphabet) -> Result<Vec<RewriteStep>> {
    Ok(into_steps(Rule::E1, w, e1_moves(w, sigma)?))
}

pub fn e2_steps(w: &Word, sigma: &OrderedAlphabet) -> Result<Vec<RewriteStep>> {
    Ok(into_steps(Rule::E2, w, e2_moves(w, sigma)?))
}

pub fn se_steps(w: &Word) -> Vec<RewriteStep> {
    into_steps(Rule::SE, w, se_moves(w))
}

pub fn e1_neighbors(w: &Word, sigma: &OrderedAlphabet) -> Result<BTreeSet<Word>> {
    Ok(e1_moves(w, sigma)?.into_iter().map(|m| m.after).collect())
}

pub fn e2_neighbors(w: &Word, sigma: &OrderedAlphabet) -> Result<BTreeSet<Word>> {
    Ok(e2_moves(w, sigma)?.into_iter().map(|m| m.after).collect())
}

pub fn se_neighbors(w: &Word) -> BTreeSet<Word> {
    se_moves(w).into_iter().map(|m| m.after).collect()
}

/// `E1 ∪ E2` neighbors.
pub fn me_neighbors(w: &Word, sigma: &OrderedAlphabet) -> Result<BTreeSet<Word>> {
    let mut out = e1_neighbors(w, sigma)?;
    out.extend(e2_neighbors(w, sigma)?);
    Ok(out)
}

/// Which rule set drives a closure.
#[derive(Clone, Copy, Debug)]
pub(crate) enum RuleSet<'a> {
    One(&'a OrderedAlphabet),
    Me(&'a OrderedAlphabet),
    Mse,
}

impl RuleSet<'_> {
    fn steps(&self, w: &Word) -> Result<Vec<RewriteStep>> {
        Ok(match self {
            RuleSet::One(s) => e1_steps(w, s)?,
            RuleSet::Me(s) => {
                let mut out = e1_steps(w, s)?;
                out.extend(e2_steps(w, s)?);
                out
            }
            RuleSet::Mse => se_steps(w),
        })
    }

    pub(crate) fn neighbors(&self, w: &Word) -> Result<Vec<Word>> {
        Ok(match self {
            RuleSet::One(s) => e1_moves(w, s)?.into_iter().map(|m| m.after).collect(),
            RuleSet::Me(s) => e1_moves(w, s)?
                .into_iter()
                .chain(e2_moves(w, s)?)
                .map(|m| m.after)
                .collect(),
            RuleSet::Mse => se_moves(w).into_iter().map(|m| m.after).collect(),
        })
    }
}

/// Everything reachable from a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub class_members: BTreeSet<Word>,
    /// Words whose neighbors were generated.
    pub steps_explored: usize,
}

fn closure(seed: &Word, rules: RuleSet<'_>, budget: usize) -> Result<ClosureResult> {
    let mut seen = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    let mut explored = 0;
    while let Some(w) = queue.pop_front() {
        explored += 1;
        for next in rules.neighbors(&w)? {
            if !seen.contains(&next) {
                if seen.len() >= budget {
                    return Err(Error::ClosureBudgetExceeded { budget });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(ClosureResult {
        class_members: seen,
        steps_explored: explored,
    })
}

/// Shortest rewrite path from `from` to `to`, or `None` when unreachable.
fn path(from: &Word, to: &Word, rules: RuleSet<'_>, budget: usize) -> Result<Option<Vec<RewriteStep>>> {
    if from.len() != to.len() || from.letter_counts() != to.letter_counts() {
        return Ok(None);
    }
    let mut parent: HashMap<Word, Option<RewriteStep>> = HashMap::from([(from.clone(), None)]);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(w) = queue.pop_front() {
        if &w == to {
            let mut steps = Vec::new();
            let mut cur = w;
            while let Some(Some(step)) = parent.get(&cur) {
                let prev = step.before.clone();
                steps.push(step.clone());
                cur = prev;
            }
            steps.reverse();
            return Ok(Some(steps));
        }
        for step in rules.steps(&w)? {
            if !parent.contains_key(&step.after) {
                if parent.len() >= budget {
                    return Err(Error::ClosureBudgetExceeded { budget });
                }
                queue.push_back(step.after.clone());
                parent.insert(step.after.clone(), Some(step));
            }
        }
    }
    Ok(None)
}

fn check_pair(w: &Word, w2: &Word, sigma: &OrderedAlphabet) -> Result<()> {
    let a = sigma.underlying();
    a.check_word(w)?;
    a.check_word(w2)
}

pub fn one_closure(w: &Word, sigma: &OrderedAlphabet, budget: usize) -> Result<ClosureResult> {
    sigma.underlying().check_word(w)?;
    closure(w, RuleSet::One(sigma), budget)
}

pub fn me_closure(w: &Word, sigma: &OrderedAlphabet, budget: usize) -> Result<ClosureResult> {
    sigma.underlying().check_word(w)?;
    closure(w, RuleSet::Me(sigma), budget)
}

pub fn mse_closure(w: &Word, budget: usize) -> Result<ClosureResult> {
    closure(w, RuleSet::Mse, budget)
}

/// Rewrite certificate for ME-equivalence: `Some(steps)` leads from `w` to `w2`.
pub fn me_path(w: &Word, w2: &Word, sigma: &OrderedAlphabet, budget: usize) -> Result<Option<Vec<RewriteStep>>> {
    check_pair(w, w2, sigma)?;
    path(w, w2, RuleSet::Me(sigma), budget)
}

pub fn mse_path(w: &Word, w2: &Word, budget: usize) -> Result<Option<Vec<RewriteStep>>> {
    path(w, w2, RuleSet::Mse, budget)
}

pub fn me_equivalent_with_budget(w: &Word, w2: &Word, sigma: &OrderedAlphabet, budget: usize) -> Result<bool> {
    Ok(me_path(w, w2, sigma, budget)?.is_some())
}

pub fn me_equivalent(w: &Word, w2: &Word, sigma: &OrderedAlphabet) -> Result<bool> {
    me_equivalent_with_budget(w, w2, sigma, DEFAULT_CLOSURE_BUDGET)
}

pub fn mse_equivalent_with_budget(w: &Word, w2: &Word, budget: usize) -> Result<bool> {
    Ok(mse_path(w, w2, budget)?.is_some())
}

pub fn mse_equivalent(w: &Word, w2: &Word) -> Result<bool> {
    mse_equivalent_with_budget(w, w2, DEFAULT_CLOSURE_BUDGET)
}

/// Least word, lexicographically under `sigma`, reachable by E1 swaps alone.
///
/// E1 generates a partial commutation (letters commute iff their ranks differ
/// by at least 2), so the least representative is built greedily: repeatedly
/// take the smallest letter that can be commuted to the front of what remains.
pub fn one_equiv_normal_form(w: &Word, sigma: &OrderedAlphabet) -> Result<Word> {
    let mut rest = sigma.ranks_of(w)?;
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for (pos, &r) in rest.iter().enumerate() {
            if best.is_some_and(|(b, _)| r >= b) {
                continue;
            }
            if rest[..pos].iter().all(|&q| q.abs_diff(r) >= 2) {
                best = Some((r, pos));
            }
        }
        let (r, pos) = best.expect("the first letter is always movable");
        rest.remove(pos);
        out.push(sigma.letter(r).expect("rank from this alphabet"));
    }
    Ok(Word::from(out))
}

pub fn one_equivalent(w: &Word, w2: &Word, sigma: &OrderedAlphabet) -> Result<bool> {
    Ok(one_equiv_normal_form(w, sigma)? == one_equiv_normal_form(w2, sigma)?)
}
