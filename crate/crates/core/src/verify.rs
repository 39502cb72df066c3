//! Exhaustive checks of the Parikh-matrix identities and the equivalence
//! characterizations, each producing a [`CheckReport`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::census::{abc_order, label_members, Universe};
use crate::equivalence::{expanded_weak_witness, transposition_chain, weakly_m_related};
use crate::error::{Error, Result};
use crate::matrix::{alphabet_factor, parikh_matrix_of, permutation_transfer_holds};
use crate::relation::RelationKind;
use crate::subword::{count_subword, distinct_letter_patterns, signature_counts};
use crate::ternary::{verify_abc1_certificates, verify_m_vs_me_abc0, verify_strong_vs_mse};
use crate::word::{Alphabet, Permutation, Word};

/// Longest words any check enumerates.
pub const MAX_CHECK_LEN: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub stratum: String,
    pub checked: u64,
    pub violations: u64,
}

impl CheckRow {
    pub fn new(stratum: String) -> CheckRow {
        CheckRow {
            stratum,
            checked: 0,
            violations: 0,
        }
    }

    fn record(&mut self, ok: bool) -> bool {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
        ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub w: Word,
    pub w2: Option<Word>,
    pub detail: String,
}

/// A pair just outside a check's scope on which the coarse relation holds
/// and the fine one fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalityWitness {
    pub w: Word,
    pub w2: Word,
    pub abc_count: u64,
    pub coarse: String,
    pub fine: String,
    pub coarse_holds: bool,
    pub fine_holds: bool,
}

impl OptimalityWitness {
    pub fn confirms(&self) -> bool {
        self.coarse_holds && !self.fine_holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub max_len: usize,
    pub passed: bool,
    pub rows: Vec<CheckRow>,
    /// The first few violations found.
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<OptimalityWitness>,
}

impl CheckReport {
    pub fn new(
        check: &str,
        max_len: usize,
        rows: Vec<CheckRow>,
        violations: Vec<Violation>,
        witness: Option<OptimalityWitness>,
    ) -> CheckReport {
        let passed = rows.iter().all(|r| r.violations == 0) && witness.as_ref().is_none_or(OptimalityWitness::confirms);
        CheckReport {
            check: check.to_string(),
            max_len,
            passed,
            rows,
            violations,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn total_checked(&self) -> u64 {
        self.rows.iter().map(|r| r.checked).sum()
    }

    pub fn total_violations(&self) -> u64 {
        self.rows.iter().map(|r| r.violations).sum()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check: {}", self.check)?;
        writeln!(f, "max_len: {}", self.max_len)?;
        writeln!(f, "{:<32} {:>12} {:>10}", "stratum", "checked", "violations")?;
        for row in &self.rows {
            writeln!(f, "{:<32} {:>12} {:>10}", row.stratum, row.checked, row.violations)?;
        }
        for v in &self.violations {
            match &v.w2 {
                Some(w2) => writeln!(f, "violation: {} {} ({})", v.w.to_token(), w2.to_token(), v.detail)?,
                None => writeln!(f, "violation: {} ({})", v.w.to_token(), v.detail)?,
            }
        }
        if let Some(wit) = &self.witness {
            writeln!(
                f,
                "witness: {} {} |w|_abc={} {}={} {}={}",
                wit.w, wit.w2, wit.abc_count, wit.coarse, wit.coarse_holds, wit.fine, wit.fine_holds
            )?;
        }
        writeln!(f, "result: {}", if self.passed { "pass" } else { "fail" })
    }
}

/// The checks `verify` can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckId {
    /// Matrix entries equal factor subword counts (ternary, all orderings).
    MatrixEntries,
    /// Binary words: M-equivalent iff ME-equivalent.
    BinaryMMe,
    /// `Ψ_Σ(σw) = Ψ_{σΣ}(w)` for every permutation (ternary).
    PermutationTransfer,
    /// Signature decider agrees with the all-orderings decider (ternary).
    StrongDeciders,
    /// Strong M iff MSE when `|w|_abc ≤ 1`.
    StrongVsMse,
    /// M iff ME when `|w|_abc = 0`.
    MVsMeAbc0,
    /// The one-occurrence certificate decides M and ME.
    Abc1Certificate,
    /// Transposition chains of weakly related hops connect every Parikh class.
    TranspositionChains,
    /// Interleaved orderings witness weak relatedness.
    ExpandedWitness,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::MatrixEntries,
        CheckId::BinaryMMe,
        CheckId::PermutationTransfer,
        CheckId::StrongDeciders,
        CheckId::StrongVsMse,
        CheckId::MVsMeAbc0,
        CheckId::Abc1Certificate,
        CheckId::TranspositionChains,
        CheckId::ExpandedWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::MatrixEntries => "matrix-entries",
            CheckId::BinaryMMe => "binary-m-me",
            CheckId::PermutationTransfer => "permutation-transfer",
            CheckId::StrongDeciders => "strong-deciders",
            CheckId::StrongVsMse => "strong-vs-mse",
            CheckId::MVsMeAbc0 => "m-vs-me-abc0",
            CheckId::Abc1Certificate => "abc1-certificate",
            CheckId::TranspositionChains => "transposition-chains",
            CheckId::ExpandedWitness => "expanded-witness",
        }
    }

    /// Short numeric alias accepted on the command line.
    pub fn alias(self) -> &'static str {
        match self {
            CheckId::MatrixEntries => "2.3",
            CheckId::BinaryMMe => "2.6",
            CheckId::PermutationTransfer => "2.9",
            CheckId::StrongDeciders => "3.3",
            CheckId::StrongVsMse => "4.2",
            CheckId::MVsMeAbc0 => "4.4",
            CheckId::Abc1Certificate => "4.6",
            CheckId::TranspositionChains => "5.4",
            CheckId::ExpandedWitness => "5.5",
        }
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<CheckId, String> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s || c.alias() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_len(max_len: usize) -> Result<()> {
    if max_len > MAX_CHECK_LEN {
        return Err(Error::BudgetExceeded(format!(
            "max length {max_len} exceeds {MAX_CHECK_LEN}"
        )));
    }
    Ok(())
}

fn ternary() -> Alphabet {
    "abc".parse().expect("valid alphabet")
}

pub fn run_check(id: CheckId, max_len: usize, budget: usize) -> Result<CheckReport> {
    check_len(max_len)?;
    match id {
        CheckId::MatrixEntries => check_matrix_entries(max_len, budget),
        CheckId::BinaryMMe => check_binary_m_me(max_len, budget),
        CheckId::PermutationTransfer => check_permutation_transfer(max_len, budget),
        CheckId::StrongDeciders => check_strong_deciders(max_len, budget),
        CheckId::StrongVsMse => verify_strong_vs_mse(max_len, budget),
        CheckId::MVsMeAbc0 => verify_m_vs_me_abc0(max_len, budget),
        CheckId::Abc1Certificate => verify_abc1_certificates(max_len, budget),
        CheckId::TranspositionChains => check_transposition_chains(max_len, budget),
        CheckId::ExpandedWitness => check_expanded_witness(max_len, budget),
    }
}

fn keep(violations: &mut Vec<Violation>, w: &Word, w2: Option<&Word>, detail: impl Into<String>) {
    if violations.len() < 20 {
        violations.push(Violation {
            w: w.clone(),
            w2: w2.cloned(),
            detail: detail.into(),
        });
    }
}

fn check_matrix_entries(max_len: usize, budget: usize) -> Result<CheckReport> {
    let universe = Universe::new(ternary(), max_len, budget)?;
    let orderings: Vec<_> = ternary().orderings().collect();
    let mut rows: Vec<CheckRow> = (0..=max_len).map(|n| CheckRow::new(format!("length {n}"))).collect();
    let mut violations = Vec::new();
    for stratum in universe.strata() {
        for w in &stratum.members {
            for o in &orderings {
                let m = parikh_matrix_of(w, o)?;
                let s = o.len();
                let mut ok = m.is_unit_upper_triangular();
                for i in 0..s {
                    for j in i..s {
                        ok &= m.get(i, j + 1) == count_subword(w, &alphabet_factor(o, i, j)?)?.get();
                    }
                }
                if !rows[stratum.length].record(ok) {
                    keep(&mut violations, w, None, format!("ordering {o}"));
                }
            }
        }
    }
    Ok(CheckReport::new(
        CheckId::MatrixEntries.name(),
        max_len,
        rows,
        violations,
        None,
    ))
}

/// Compares two labelings pair by pair within each stratum.
fn compare_partitions(
    universe: &Universe,
    coarse: &RelationKind,
    fine: &RelationKind,
    budget: usize,
    rows: &mut [CheckRow],
    violations: &mut Vec<Violation>,
) -> Result<()> {
    let alphabet = universe.alphabet();
    for stratum in universe.strata() {
        let x = label_members(&stratum.members, &alphabet, coarse, budget)?;
        let y = label_members(&stratum.members, &alphabet, fine, budget)?;
        let m = &stratum.members;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if !rows[stratum.length].record(x.related(i, j) == y.related(i, j)) {
                    keep(violations, &m[i], Some(&m[j]), format!("{coarse} != {fine}"));
                }
            }
        }
    }
    Ok(())
}

fn check_binary_m_me(max_len: usize, budget: usize) -> Result<CheckReport> {
    let ab: Alphabet = "ab".parse().expect("valid alphabet");
    let order = ab.canonical_order()?;
    let universe = Universe::new(ab, max_len, budget)?;
    let mut rows: Vec<CheckRow> = (0..=max_len).map(|n| CheckRow::new(format!("length {n}"))).collect();
    let mut violations = Vec::new();
    compare_partitions(
        &universe,
        &RelationKind::M(order.clone()),
        &RelationKind::Me(order),
        budget,
        &mut rows,
        &mut violations,
    )?;
    Ok(CheckReport::new(
        CheckId::BinaryMMe.name(),
        max_len,
        rows,
        violations,
        None,
    ))
}

fn check_permutation_transfer(max_len: usize, budget: usize) -> Result<CheckReport> {
    let universe = Universe::new(ternary(), max_len, budget)?;
    let order = abc_order();
    let perms: Vec<_> = Permutation::all(3).collect();
    let mut rows: Vec<CheckRow> = (0..=max_len).map(|n| CheckRow::new(format!("length {n}"))).collect();
    let mut violations = Vec::new();
    for stratum in universe.strata() {
        for w in &stratum.members {
            for p in &perms {
                if !rows[stratum.length].record(permutation_transfer_holds(w, p, &order)?) {
                    keep(&mut violations, w, None, format!("{p:?}"));
                }
            }
        }
    }
    Ok(CheckReport::new(
        CheckId::PermutationTransfer.name(),
        max_len,
        rows,
        violations,
        None,
    ))
}

/// Pairs within each stratum: equal distinct-letter signatures iff equal
/// matrices under all six orderings. The two sides share no code path beyond
/// word enumeration.
fn check_strong_deciders(max_len: usize, budget: usize) -> Result<CheckReport> {
    let universe = Universe::new(ternary(), max_len, budget)?;
    let patterns = distinct_letter_patterns(&ternary())?;
    let orderings: Vec<_> = ternary().orderings().collect();
    let mut rows: Vec<CheckRow> = (0..=max_len).map(|n| CheckRow::new(format!("length {n}"))).collect();
    let mut violations = Vec::new();
    for stratum in universe.strata() {
        let m = &stratum.members;
        let sigs = m
            .iter()
            .map(|w| signature_counts(w, &patterns))
            .collect::<Result<Vec<_>>>()?;
        let mats = m
            .iter()
            .map(|w| {
                orderings
                    .iter()
                    .map(|o| parikh_matrix_of(w, o))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if !rows[stratum.length].record((sigs[i] == sigs[j]) == (mats[i] == mats[j])) {
                    keep(&mut violations, &m[i], Some(&m[j]), "signature != orderings");
                }
            }
        }
    }
    Ok(CheckReport::new(
        CheckId::StrongDeciders.name(),
        max_len,
        rows,
        violations,
        None,
    ))
}

/// Every word is chained to the first word of its stratum with weakly related
/// hops, and the weak relation's transitive closure has exactly one class per
/// Parikh vector.
fn check_transposition_chains(max_len: usize, budget: usize) -> Result<CheckReport> {
    let sigma = ternary();
    let universe = Universe::new(sigma, max_len, budget)?;
    let mut hops = CheckRow::new("chain hops weakly related".into());
    let mut closure = CheckRow::new("weak closure = parikh class".into());
    let mut violations = Vec::new();
    for stratum in universe.strata() {
        let m = &stratum.members;
        let first = &m[0];
        for w in m {
            let chain = transposition_chain(first, w, &sigma)?;
            let ends_ok = chain.first() == Some(first) && chain.last() == Some(w);
            if !hops.record(ends_ok) {
                keep(&mut violations, first, Some(w), "chain endpoints");
            }
            for hop in chain.windows(2) {
                let adjacent = hop[0]
                    .letters()
                    .iter()
                    .zip(hop[1].letters())
                    .filter(|(x, y)| x != y)
                    .count()
                    == 2;
                let ok = adjacent
                    && weakly_m_related(&hop[0], &hop[1], &sigma)?.is_some_and(|wit| wit.certifies(&hop[0], &hop[1]));
                if !hops.record(ok) {
                    keep(&mut violations, &hop[0], Some(&hop[1]), "hop not weakly related");
                }
            }
        }
        let classes = label_members(m, &sigma, &RelationKind::Weak(sigma), budget)?.class_count();
        if !closure.record(classes == 1) {
            keep(&mut violations, first, None, format!("{classes} weak classes"));
        }
    }
    Ok(CheckReport::new(
        CheckId::TranspositionChains.name(),
        max_len,
        vec![hops, closure],
        violations,
        None,
    ))
}

fn check_expanded_witness(max_len: usize, budget: usize) -> Result<CheckReport> {
    let universe = Universe::new(ternary(), max_len, budget)?;
    let mut row = CheckRow::new("witness certifies".into());
    let mut violations = Vec::new();
    for stratum in universe.strata() {
        let first = &stratum.members[0];
        let support = first.support();
        for w in &stratum.members {
            let witness = expanded_weak_witness(first, w)?;
            let o = &witness.ordering;
            let spread = o
                .letters()
                .windows(2)
                .all(|p| !(support.contains(p[0]) && support.contains(p[1])));
            let size_ok = support.is_empty() || o.len() == 2 * support.len() - 1;
            if !row.record(spread && size_ok && witness.certifies(first, w)) {
                keep(&mut violations, first, Some(w), format!("ordering {o}"));
            }
        }
    }
    Ok(CheckReport::new(
        CheckId::ExpandedWitness.name(),
        max_len,
        vec![row],
        violations,
        None,
    ))
}
