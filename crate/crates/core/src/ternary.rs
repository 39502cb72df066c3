//! Ternary words over `{a,b,c}` with at most one occurrence of the subword
//! `abc`: their decompositions, the certificate deciding M- and
//! ME-equivalence in the one-occurrence stratum, and exhaustive checks of the
//! stratum-wise characterizations.

use std::collections::HashMap;

use serde::Serialize;

use crate::census::{abc_order, labels_for, Universe};
use crate::equivalence::strongly_m_equivalent;
use crate::error::{Error, Result};
use crate::matrix::{m_equivalent, parikh_matrix_of};
use crate::relation::RelationKind;
use crate::rewrite::{me_equivalent, mse_equivalent, one_equiv_normal_form};
use crate::subword::count_subword;
use crate::verify::{CheckReport, CheckRow, OptimalityWitness, Violation, MAX_CHECK_LEN};
use crate::word::{Alphabet, Letter, OrderedAlphabet, Word};

const A: Letter = Letter::from_ascii(b'a');
const B: Letter = Letter::from_ascii(b'b');
const C: Letter = Letter::from_ascii(b'c');

fn ternary() -> Alphabet {
    [A, B, C].into_iter().collect()
}

fn check_ternary(w: &Word) -> Result<()> {
    ternary().check_word(w)
}

fn over(w: &[Letter], allowed: &[Letter]) -> bool {
    w.iter().all(|l| allowed.contains(l))
}

/// `|w|_abc`.
pub fn abc_count(w: &Word) -> Result<u64> {
    check_ternary(w)?;
    Ok(count_subword(w, &Word::from(vec![A, B, C]))?.get())
}

/// `w = w1·w2·w3` with `w1 ∈ {b,c}*`, `w2 ∈ {a,c}*`, `w3 ∈ {a,b}*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abc0Decomposition {
    pub w1: Word,
    pub w2: Word,
    pub w3: Word,
}

impl Abc0Decomposition {
    pub fn reconstruct(&self) -> Word {
        self.w1.concat(&self.w2).concat(&self.w3)
    }
}

/// `w = w1·a·w2·b·w3·c·w4` with `w1 ∈ {b,c}*`, `w2 ∈ c*`, `w3 ∈ a*`,
/// `w4 ∈ {a,b}*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abc1Decomposition {
    pub w1: Word,
    pub w2: Word,
    pub w3: Word,
    pub w4: Word,
}

impl Abc1Decomposition {
    pub fn reconstruct(&self) -> Word {
        let mut out = self.w1.clone();
        out.push(A);
        out = out.concat(&self.w2);
        out.push(B);
        out = out.concat(&self.w3);
        out.push(C);
        out.concat(&self.w4)
    }
}

/// Greedy split: the longest `{b,c}` prefix, then the longest `{a,c}` block;
/// the rest must be over `{a,b}`. Present iff `|w|_abc = 0`.
pub fn decompose_abc0(w: &Word) -> Result<Option<Abc0Decomposition>> {
    check_ternary(w)?;
    let l = w.letters();
    let end1 = l.iter().position(|&x| x == A).unwrap_or(l.len());
    let end2 = end1 + l[end1..].iter().position(|&x| x == B).unwrap_or(l.len() - end1);
    if !over(&l[end2..], &[A, B]) {
        return Ok(None);
    }
    Ok(Some(Abc0Decomposition {
        w1: Word::from(l[..end1].to_vec()),
        w2: Word::from(l[end1..end2].to_vec()),
        w3: Word::from(l[end2..].to_vec()),
    }))
}

/// Present iff `|w|_abc = 1`. The fields are read off between the positions
/// of the single `abc` occurrence.
pub fn decompose_abc1(w: &Word) -> Result<Option<Abc1Decomposition>> {
    if abc_count(w)? != 1 {
        return Ok(None);
    }
    let l = w.letters();
    let n = l.len();
    let (i, j, k) = (0..n)
        .filter(|&i| l[i] == A)
        .flat_map(|i| (i + 1..n).filter(move |&j| l[j] == B).map(move |j| (i, j)))
        .flat_map(|(i, j)| (j + 1..n).filter(move |&k| l[k] == C).map(move |k| (i, j, k)))
        .next()
        .expect("exactly one occurrence");
    let d = Abc1Decomposition {
        w1: Word::from(l[..i].to_vec()),
        w2: Word::from(l[i + 1..j].to_vec()),
        w3: Word::from(l[j + 1..k].to_vec()),
        w4: Word::from(l[k + 1..].to_vec()),
    };
    debug_assert!(
        over(d.w1.letters(), &[B, C])
            && over(d.w2.letters(), &[C])
            && over(d.w3.letters(), &[A])
            && over(d.w4.letters(), &[A, B])
    );
    Ok(Some(d))
}

/// `w ≡_1 w1·abc·w2` with `w1 ∈ {b,c}*`, `w2 ∈ {a,b}*`, read off the E1
/// normal form under `{a<b<c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abc1Shape {
    pub w1: Word,
    pub w2: Word,
}

pub fn abc1_shape(w: &Word) -> Result<Abc1Shape> {
    let order = abc_order();
    let normal = one_equiv_normal_form(w, &order)?;
    let d = decompose_abc1(&normal)?
        .ok_or_else(|| Error::PreconditionViolated(format!("{w} does not contain abc exactly once")))?;
    let shape = Abc1Shape {
        w1: d.w1.concat(&d.w2),
        w2: d.w3.concat(&d.w4),
    };
    let rebuilt = shape.w1.concat(&Word::from(vec![A, B, C])).concat(&shape.w2);
    if one_equiv_normal_form(&rebuilt, &order)? != normal {
        return Err(Error::PreconditionViolated(format!(
            "{rebuilt} is not 1-equivalent to {w}"
        )));
    }
    Ok(shape)
}

pub type SignedMatrix3 = [[i64; 3]; 3];

fn matrix3(w: &Word, order: &OrderedAlphabet) -> Result<SignedMatrix3> {
    let m = parikh_matrix_of(w, order)?;
    let mut out = [[0i64; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = i64::try_from(m.get(i, j)).map_err(|_| Error::ArithmeticOverflow)?;
        }
    }
    Ok(out)
}

fn difference(x: &SignedMatrix3, y: &SignedMatrix3) -> SignedMatrix3 {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = x[i][j] - y[i][j];
        }
    }
    out
}

/// The per-word part of a certificate.
#[derive(Clone, Debug)]
pub(crate) struct Abc1Profile {
    shape: Abc1Shape,
    b_in_w1: i64,
    /// `Ψ_{b<c}(w1·bc)`
    bc_matrix: SignedMatrix3,
    /// `Ψ_{a<b}(ab·w2)`
    ab_matrix: SignedMatrix3,
}

impl Abc1Profile {
    pub(crate) fn of(w: &Word) -> Result<Abc1Profile> {
        let shape = abc1_shape(w)?;
        let bc: OrderedAlphabet = "bc".parse().expect("valid ordering");
        let ab: OrderedAlphabet = "ab".parse().expect("valid ordering");
        let bc_matrix = matrix3(&shape.w1.concat(&Word::from(vec![B, C])), &bc)?;
        let ab_matrix = matrix3(&Word::from(vec![A, B]).concat(&shape.w2), &ab)?;
        Ok(Abc1Profile {
            b_in_w1: shape.w1.count_letter(B) as i64,
            shape,
            bc_matrix,
            ab_matrix,
        })
    }
}

/// Decides M- and ME-equivalence under `{a<b<c}` for two words that each
/// contain `abc` exactly once.
///
/// With `w ≡_1 w1·abc·w2` and `w' ≡_1 w1'·abc·w2'`, the words are
/// M-equivalent iff `Ψ_{b<c}(w1·bc) − Ψ_{b<c}(w1'·bc)` is zero except `α` at
/// `(0,1)` and `Ψ_{a<b}(ab·w2) − Ψ_{a<b}(ab·w2')` is zero except `−α` at
/// `(1,2)`, where `α = |w1|_b − |w1'|_b`. They are ME-equivalent iff in
/// addition `α = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abc1Certificate {
    pub shape: Abc1Shape,
    pub shape_prime: Abc1Shape,
    pub alpha: i64,
    pub matrix_delta_bc: SignedMatrix3,
    pub matrix_delta_ab: SignedMatrix3,
}

impl Abc1Certificate {
    fn from_profiles(p: &Abc1Profile, q: &Abc1Profile) -> Abc1Certificate {
        Abc1Certificate {
            shape: p.shape.clone(),
            shape_prime: q.shape.clone(),
            alpha: p.b_in_w1 - q.b_in_w1,
            matrix_delta_bc: difference(&p.bc_matrix, &q.bc_matrix),
            matrix_delta_ab: difference(&p.ab_matrix, &q.ab_matrix),
        }
    }

    pub fn predicts_m_equivalent(&self) -> bool {
        let mut bc = [[0i64; 3]; 3];
        bc[0][1] = self.alpha;
        let mut ab = [[0i64; 3]; 3];
        ab[1][2] = -self.alpha;
        self.matrix_delta_bc == bc && self.matrix_delta_ab == ab
    }

    pub fn predicts_me_equivalent(&self) -> bool {
        self.predicts_m_equivalent() && self.alpha == 0
    }
}

pub fn abc1_certificate(w: &Word, w2: &Word) -> Result<Abc1Certificate> {
    Ok(Abc1Certificate::from_profiles(
        &Abc1Profile::of(w)?,
        &Abc1Profile::of(w2)?,
    ))
}

fn check_len(max_len: usize) -> Result<()> {
    if max_len > MAX_CHECK_LEN {
        return Err(Error::BudgetExceeded(format!(
            "max length {max_len} exceeds {MAX_CHECK_LEN}"
        )));
    }
    Ok(())
}

/// Counts pairs `i < j` on which the two labelings disagree about equality,
/// and collects up to `keep` of them.
fn disagreements(members: &[Word], x: &[u32], y: &[u32], keep: usize, out: &mut Vec<Violation>, detail: &str) -> u64 {
    let pairs = |labels: &[u32]| -> u64 {
        let mut sizes: HashMap<u32, u64> = HashMap::new();
        for &l in labels {
            *sizes.entry(l).or_default() += 1;
        }
        sizes.values().map(|&k| k * (k - 1) / 2).sum()
    };
    let both: Vec<u32> = {
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        x.iter()
            .zip(y)
            .map(|(&a, &b)| {
                let next = ids.len() as u32;
                *ids.entry((a, b)).or_insert(next)
            })
            .collect()
    };
    let count = pairs(x) + pairs(y) - 2 * pairs(&both);
    if count > 0 {
        'scan: for i in 0..members.len() {
            for j in i + 1..members.len() {
                if out.len() >= keep {
                    break 'scan;
                }
                if (x[i] == x[j]) != (y[i] == y[j]) {
                    out.push(Violation {
                        w: members[i].clone(),
                        w2: Some(members[j].clone()),
                        detail: detail.to_string(),
                    });
                }
            }
        }
    }
    count
}

const KEEP_VIOLATIONS: usize = 20;

/// Splits each stratum of the ternary universe by `|w|_abc`, keeping the
/// counts accepted by `keep`.
fn abc_groups(max_len: usize, budget: usize, keep: impl Fn(u64) -> bool) -> Result<Vec<(u64, Vec<Word>)>> {
    let universe = Universe::new(ternary(), max_len, budget)?;
    let mut groups = Vec::new();
    for stratum in universe.strata() {
        let mut by_count: std::collections::BTreeMap<u64, Vec<Word>> = Default::default();
        for w in &stratum.members {
            let k = abc_count(w)?;
            if keep(k) {
                by_count.entry(k).or_default().push(w.clone());
            }
        }
        groups.extend(by_count);
    }
    Ok(groups)
}

fn pair_count(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

/// Within `|w|_abc ≤ 1` over `{a,b,c}`: strongly M-equivalent iff
/// MSE-equivalent. The known pair with `|w|_abc = 2` is reported as a
/// witness that the bound cannot be raised.
pub fn verify_strong_vs_mse(max_len: usize, budget: usize) -> Result<CheckReport> {
    check_len(max_len)?;
    let mut rows = [0, 1].map(|k| CheckRow::new(format!("|w|_abc={k}")));
    let mut violations = Vec::new();
    for (k, members) in abc_groups(max_len, budget, |k| k <= 1)? {
        let strong = labels_for(&members, &RelationKind::StrongM, budget)?;
        let mse = labels_for(&members, &RelationKind::Mse, budget)?;
        let row = &mut rows[k as usize];
        row.checked += pair_count(members.len());
        row.violations += disagreements(
            &members,
            &strong,
            &mse,
            KEEP_VIOLATIONS,
            &mut violations,
            "strong != mse",
        );
    }
    let (w, w2): (Word, Word) = ("bccaabcba".parse()?, "cbabccaab".parse()?);
    let witness = OptimalityWitness {
        abc_count: abc_count(&w)?,
        coarse: "strong".into(),
        fine: "mse".into(),
        coarse_holds: strongly_m_equivalent(&w, &w2)?.equivalent,
        fine_holds: mse_equivalent(&w, &w2)?,
        w,
        w2,
    };
    Ok(CheckReport::new(
        "strong-vs-mse",
        max_len,
        rows.to_vec(),
        violations,
        Some(witness),
    ))
}

/// Within `|w|_abc = 0` over `{a<b<c}`: M-equivalent iff ME-equivalent. The
/// known pair with `|w|_abc = 1` is reported as a witness that the bound
/// cannot be raised.
pub fn verify_m_vs_me_abc0(max_len: usize, budget: usize) -> Result<CheckReport> {
    check_len(max_len)?;
    let order = abc_order();
    let mut row = CheckRow::new("|w|_abc=0".into());
    let mut violations = Vec::new();
    for (_, members) in abc_groups(max_len, budget, |k| k == 0)? {
        let m = labels_for(&members, &RelationKind::M(order.clone()), budget)?;
        let me = labels_for(&members, &RelationKind::Me(order.clone()), budget)?;
        row.checked += pair_count(members.len());
        row.violations += disagreements(&members, &m, &me, KEEP_VIOLATIONS, &mut violations, "m != me");
    }
    let (w, w2): (Word, Word) = ("cbbabcab".parse()?, "bcabcbba".parse()?);
    let witness = OptimalityWitness {
        abc_count: abc_count(&w)?,
        coarse: "m".into(),
        fine: "me".into(),
        coarse_holds: m_equivalent(&w, &w2, &order)?,
        fine_holds: me_equivalent(&w, &w2, &order)?,
        w,
        w2,
    };
    Ok(CheckReport::new(
        "m-vs-me-abc0",
        max_len,
        vec![row],
        violations,
        Some(witness),
    ))
}

/// Every pair with `|w|_abc = |w'|_abc = 1` up to `max_len`: the certificate
/// agrees with M-equivalence, and its ME prediction agrees with
/// ME-equivalence.
pub fn verify_abc1_certificates(max_len: usize, budget: usize) -> Result<CheckReport> {
    check_len(max_len)?;
    let order = abc_order();
    let mut words = Vec::new();
    let mut me_class = Vec::new();
    for (stratum, (_, members)) in abc_groups(max_len, budget, |k| k == 1)?.into_iter().enumerate() {
        let labels = labels_for(&members, &RelationKind::Me(order.clone()), budget)?;
        me_class.extend(labels.into_iter().map(|l| (stratum, l)));
        words.extend(members);
    }
    let profiles = words.iter().map(Abc1Profile::of).collect::<Result<Vec<_>>>()?;
    let matrices = words
        .iter()
        .map(|w| parikh_matrix_of(w, &order))
        .collect::<Result<Vec<_>>>()?;

    let mut m_row = CheckRow::new("certificate vs m".into());
    let mut me_row = CheckRow::new("certificate vs me".into());
    let mut alpha_row = CheckRow::new("alpha=0 vs me among m-pairs".into());
    let mut violations = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let cert = Abc1Certificate::from_profiles(&profiles[i], &profiles[j]);
            let m = matrices[i] == matrices[j];
            let me = me_class[i] == me_class[j];
            let mut flag = |row: &mut CheckRow, ok: bool, detail: &str| {
                row.checked += 1;
                if !ok {
                    row.violations += 1;
                    if violations.len() < KEEP_VIOLATIONS {
                        violations.push(Violation {
                            w: words[i].clone(),
                            w2: Some(words[j].clone()),
                            detail: detail.to_string(),
                        });
                    }
                }
            };
            flag(&mut m_row, cert.predicts_m_equivalent() == m, "certificate != m");
            flag(&mut me_row, cert.predicts_me_equivalent() == me, "certificate != me");
            if m {
                flag(&mut alpha_row, (cert.alpha == 0) == me, "alpha=0 != me");
            }
        }
    }
    Ok(CheckReport::new(
        "abc1-certificate",
        max_len,
        vec![m_row, me_row, alpha_row],
        violations,
        None,
    ))
}
