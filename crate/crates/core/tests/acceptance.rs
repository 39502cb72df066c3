//! Acceptance gate: each criterion runs in turn and prints one PASS/FAIL line.
//! The process exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{all_words_up_to, brute_count, ord, random_word, shuffled, subword_tally, w};
use parikh::census::{census, find_gap};
use parikh::equivalence::{
    expanded_weak_witness, strongly_m_equivalent, strongly_m_equivalent_by_orderings, transposition_chain,
    weakly_m_related,
};
use parikh::matrix::m_equivalent;
use parikh::rewrite::{e1_neighbors, e2_neighbors, me_neighbors, mse_equivalent, se_neighbors};
use parikh::verify::{run_check, CheckId, CheckReport};
use parikh::word::{apply_permutation, parikh_vector};
use parikh::{count_subword, parikh_matrix_of, Alphabet, Permutation, RelationKind, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BUDGET: usize = 10_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn passed(report: &CheckReport) -> Result<(), String> {
    ensure(
        report.passed(),
        format!(
            "{} violations of {} checks\n{report}",
            report.total_violations(),
            report.total_checked()
        ),
    )
}

fn matrix_of_babcc() -> Outcome {
    let o = Command::new(env!("CARGO_BIN_EXE_parikh"))
        .args(["matrix", "babcc", "--order", "abc"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&o.stdout);
    ensure(o.status.code() == Some(0), "nonzero exit")?;
    ensure(text == "1 1 1 2\n0 1 2 4\n0 0 1 2\n0 0 0 1\n", format!("got {text:?}"))?;
    let (word, abc) = (w("babcc"), ord("abc"));
    let start = Instant::now();
    let m = parikh_matrix_of(&word, &abc).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(
        m.to_rows() == [[1, 1, 1, 2], [0, 1, 2, 4], [0, 0, 1, 2], [0, 0, 0, 1]],
        "library matrix",
    )?;
    ensure(t < Duration::from_millis(1), format!("took {t:?}"))?;
    Ok(format!("exact rows, computed in {t:?}"))
}

fn subword_counts() -> Outcome {
    let start = Instant::now();
    let count = |x: &str, u: &str| count_subword(&w(x), &w(u)).unwrap().get();
    ensure(count("aabab", "ab") == 5, "|aabab|_ab")?;
    ensure(count("baacbc", "abc") == 2, "|baacbc|_abc")?;
    ensure(count("abcab", "-") == 1 && count("-", "-") == 1, "empty pattern")?;
    let patterns = all_words_up_to("abc", 3);
    let words = all_words_up_to("abc", 8);
    let mut compared = 0u64;
    for x in &words {
        let tally = subword_tally(x, 3);
        for u in &patterns {
            let expected = tally.get(&u.to_string()).copied().unwrap_or(0);
            let got = count_subword(x, u).unwrap().get();
            ensure(got == expected, format!("{x:?} {u:?}: {got} != {expected}"))?;
            compared += 1;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{compared} word/pattern pairs agree with the subset oracle"))
}

fn length_eight_census() -> Outcome {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let abc: Alphabet = "abc".parse().unwrap();
    let (m, me) = pool.install(|| {
        (
            census(abc, 8, &RelationKind::M(ord("abc")), BUDGET),
            census(abc, 8, &RelationKind::Me(ord("abc")), BUDGET),
        )
    });
    let (m, me) = (m.map_err(|e| e.to_string())?, me.map_err(|e| e.to_string())?);
    ensure(m.words_total == 9841 && me.words_total == 9841, "word total")?;
    ensure(m.classes_total == 2729, format!("m classes {}", m.classes_total))?;
    ensure(me.classes_total == 2732, format!("me classes {}", me.classes_total))?;
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "9841 words, 2729 m classes, 2732 me classes, single thread in {:.2?}",
        start.elapsed()
    ))
}

fn shortest_gap() -> Outcome {
    let abc = ord("abc");
    let (m, me) = (RelationKind::M(abc.clone()), RelationKind::Me(abc));
    let seven = find_gap("abc".parse().unwrap(), 7, &m, &me, BUDGET).map_err(|e| e.to_string())?;
    ensure(seven.is_empty(), format!("{} pairs at length 7", seven.len()))?;
    let eight = find_gap("abc".parse().unwrap(), 8, &m, &me, BUDGET).map_err(|e| e.to_string())?;
    let (x, y) = (w("bcabcbba"), w("cbbabcab"));
    ensure(
        eight.iter().any(|g| g.w == x && g.w2 == y),
        "pair bcabcbba/cbbabcab missing",
    )?;
    Ok(format!("none up to length 7, {} pairs at length 8", eight.len()))
}

fn strong_but_not_mse() -> Outcome {
    let (x, y) = (w("bccaabcba"), w("cbabccaab"));
    let abc: Alphabet = "abc".parse().unwrap();
    let v = strongly_m_equivalent(&x, &y).map_err(|e| e.to_string())?;
    ensure(v.equivalent, "signature decider")?;
    ensure(
        strongly_m_equivalent_by_orderings(&x, &y, &abc).unwrap(),
        "orderings decider",
    )?;
    ensure(
        se_neighbors(&x).is_empty() && se_neighbors(&y).is_empty(),
        "SE neighbors",
    )?;
    ensure(!mse_equivalent(&x, &y).unwrap(), "mse")?;
    Ok("strongly equivalent by both deciders, no SE moves, not mse-equivalent".into())
}

fn length_fifteen_pair() -> Outcome {
    let (x, y) = (w("babcbabcbabcbab"), w("bbacabbcabbcbba"));
    let abc = ord("abc");
    ensure(m_equivalent(&x, &y, &abc).unwrap(), "not m-equivalent")?;
    ensure(e1_neighbors(&x, &abc).unwrap().is_empty(), "E1 neighbors")?;
    ensure(e2_neighbors(&x, &abc).unwrap().is_empty(), "E2 neighbors")?;
    ensure(x != y, "distinct")?;
    Ok("m-equivalent, first word admits no E1 or E2 move".into())
}

fn binary_m_vs_me() -> Outcome {
    let start = Instant::now();
    let report = run_check(CheckId::BinaryMMe, 12, BUDGET).map_err(|e| e.to_string())?;
    passed(&report)?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} pairs, 0 violations", report.total_checked()))
}

fn strong_deciders_agree() -> Outcome {
    let report = run_check(CheckId::StrongDeciders, 7, BUDGET).map_err(|e| e.to_string())?;
    passed(&report)?;
    let abcd: Alphabet = "abcd".parse().unwrap();
    let mut rng = StdRng::seed_from_u64(33);
    let mut equivalent = 0;
    for i in 0..10_000 {
        let x = random_word(&mut rng, "abcd", 0..=8);
        // half the pairs share letter counts, so equal signatures occur
        let y = if i % 2 == 0 {
            shuffled(&mut rng, &x)
        } else {
            random_word(&mut rng, "abcd", 0..=8)
        };
        let by_signature = strongly_m_equivalent(&x, &y).unwrap().equivalent;
        let by_orderings = strongly_m_equivalent_by_orderings(&x, &y, &abcd).unwrap();
        ensure(by_signature == by_orderings, format!("disagree on {x:?} {y:?}"))?;
        equivalent += usize::from(by_signature);
    }
    Ok(format!(
        "{} ternary pairs exhaustive, 10000 sampled 4-letter pairs ({equivalent} equivalent)",
        report.total_checked()
    ))
}

fn abc_strata_verifiers() -> Outcome {
    let mut notes = Vec::new();
    for id in [CheckId::StrongVsMse, CheckId::MVsMeAbc0] {
        let start = Instant::now();
        let report = run_check(id, 9, BUDGET).map_err(|e| e.to_string())?;
        passed(&report)?;
        within(start, Duration::from_secs(300))?;
        notes.push(format!(
            "{id}: {} pairs in {:.2?}",
            report.total_checked(),
            start.elapsed()
        ));
    }
    Ok(notes.join(", "))
}

fn abc1_certificate() -> Outcome {
    let report = run_check(CheckId::Abc1Certificate, 8, BUDGET).map_err(|e| e.to_string())?;
    passed(&report)?;
    Ok(report
        .rows
        .iter()
        .map(|r| format!("{}: {}", r.stratum, r.checked))
        .collect::<Vec<_>>()
        .join(", "))
}

fn binary_strong_is_m() -> Outcome {
    let ab: Alphabet = "ab".parse().unwrap();
    let (strong, m) = (RelationKind::StrongM, RelationKind::M(ord("ab")));
    let one_way = find_gap(ab, 10, &m, &strong, BUDGET).map_err(|e| e.to_string())?;
    let other = find_gap(ab, 10, &strong, &m, BUDGET).map_err(|e| e.to_string())?;
    ensure(one_way.is_empty() && other.is_empty(), "relations differ")?;
    let words = all_words_up_to("ab", 10);
    let mut pairs = 0u64;
    for x in &words {
        for y in words.iter().filter(|y| y.len() == x.len()) {
            let a = strongly_m_equivalent(x, y).unwrap().equivalent;
            ensure(a == m_equivalent(x, y, &ord("ab")).unwrap(), format!("{x:?} {y:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs agree"))
}

fn permutation_transfer() -> Outcome {
    let start = Instant::now();
    let report = run_check(CheckId::PermutationTransfer, 5, BUDGET).map_err(|e| e.to_string())?;
    passed(&report)?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} word/permutation pairs", report.total_checked()))
}

fn weak_relation_suite() -> Outcome {
    let abc: Alphabet = "abc".parse().unwrap();
    let related = |x: &str, y: &str| weakly_m_related(&w(x), &w(y), &abc).unwrap().is_some();
    ensure(related("acb", "cab"), "acb~cab")?;
    ensure(related("cab", "cba"), "cab~cba")?;
    ensure(!related("acb", "cba"), "acb~cba must fail")?;

    let mut rng = StdRng::seed_from_u64(55);
    for _ in 0..100 {
        let x = random_word(&mut rng, "abc", 0..=10);
        let y = shuffled(&mut rng, &x);
        let chain = transposition_chain(&x, &y, &abc).map_err(|e| e.to_string())?;
        ensure(chain.first() == Some(&x) && chain.last() == Some(&y), "chain endpoints")?;
        for hop in chain.windows(2) {
            let wit = weakly_m_related(&hop[0], &hop[1], &abc).unwrap();
            ensure(
                wit.is_some_and(|o| m_equivalent(&hop[0], &hop[1], &o.ordering).unwrap()),
                format!("hop {:?} {:?}", hop[0], hop[1]),
            )?;
        }
    }

    let mut done = 0;
    while done < 100 {
        let letters = if done % 2 == 0 { "ab" } else { "abc" };
        let x = random_word(&mut rng, letters, 2..=10);
        if x.support().len() != letters.len() {
            continue;
        }
        let y = shuffled(&mut rng, &x);
        let wit = expanded_weak_witness(&x, &y).map_err(|e| e.to_string())?;
        ensure(wit.ordering.len() == 2 * letters.len() - 1, "witness size")?;
        ensure(m_equivalent(&x, &y, &wit.ordering).unwrap(), format!("{x:?} {y:?}"))?;
        done += 1;
    }
    Ok("non-transitive triple, 100 chains, 100 expanded witnesses".into())
}

/// Sampled and exhaustive laws: morphisms, invariance, permutation and
/// projection stability, involutive rules, letter-count preservation.
fn property_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(77);
    let abcd = ord("abcd");
    let abc_o = ord("abc");
    let abc: Alphabet = "abc".parse().unwrap();
    let mut checks = 0u64;
    for _ in 0..2000 {
        let v = random_word(&mut rng, "abcd", 0..=10);
        let x = random_word(&mut rng, "abcd", 0..=10);
        let g: Alphabet = ["a", "bc", "ad", "abcd", "-"][rng.random_range(0..5)].parse().unwrap();
        let vx = v.concat(&x);
        ensure(
            vx.project(&g) == v.project(&g).concat(&x.project(&g)),
            "projection morphism",
        )?;
        let pv = |y: &Word| parikh_vector(y, &abcd).unwrap().counts().to_vec();
        let sum: Vec<u64> = pv(&v).iter().zip(pv(&x)).map(|(a, b)| a + b).collect();
        ensure(pv(&vx) == sum, "parikh vector additive")?;
        let m = parikh_matrix_of(&vx, &abcd).unwrap();
        let product = parikh_matrix_of(&v, &abcd)
            .unwrap()
            .multiply(&parikh_matrix_of(&x, &abcd).unwrap())
            .unwrap();
        ensure(m == product, format!("matrix morphism on {v:?} {x:?}"))?;
        let perm = Permutation::all(4).nth(rng.random_range(0..24)).unwrap();
        let image = |y: &Word| apply_permutation(&perm, y, &abcd).unwrap();
        ensure(image(&vx) == image(&v).concat(&image(&x)), "permutation morphism")?;
        for n in me_neighbors(&vx, &abcd).unwrap() {
            ensure(me_neighbors(&n, &abcd).unwrap().contains(&vx), "me involutive")?;
            ensure(n.letter_counts() == vx.letter_counts(), "me letter counts")?;
        }
        for n in se_neighbors(&vx) {
            ensure(se_neighbors(&n).contains(&vx), "se involutive")?;
            ensure(n.letter_counts() == vx.letter_counts(), "se letter counts")?;
        }
        checks += 1;
    }
    // strongly equivalent pairs stay so under padding, permutation and projection
    let perms: Vec<_> = Permutation::all(3).collect();
    let subsets: Vec<Alphabet> = ["-", "a", "b", "c", "ab", "ac", "bc", "abc"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let patterns = parikh::subword::distinct_letter_patterns(&abc).unwrap();
    for n in 0..=7 {
        let mut classes = std::collections::HashMap::<Vec<u64>, Vec<Word>>::new();
        for x in common::all_words("abc", n) {
            let key = patterns.iter().map(|p| brute_count(&x, p)).collect();
            classes.entry(key).or_default().push(x);
        }
        for class in classes.values().filter(|c| c.len() > 1) {
            let x = &class[0];
            for y in &class[1..] {
                let pad = random_word(&mut rng, "abc", 3..=3);
                let strong = |p: &Word, q: &Word| strongly_m_equivalent(p, q).unwrap().equivalent;
                ensure(strong(x, y), "signature classes")?;
                ensure(
                    strong(&pad.concat(x), &pad.concat(y)) && strong(&x.concat(&pad), &y.concat(&pad)),
                    "invariance",
                )?;
                for p in &perms {
                    let (px, py) = (
                        apply_permutation(p, x, &abc_o).unwrap(),
                        apply_permutation(p, y, &abc_o).unwrap(),
                    );
                    ensure(strong(&px, &py), format!("permuted {x:?} {y:?}"))?;
                }
                for g in &subsets {
                    ensure(strong(&x.project(g), &y.project(g)), format!("projected {x:?} {y:?}"))?;
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} sampled and exhaustive cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("matrix of babcc under a<b<c", matrix_of_babcc),
        ("subword counts and brute-force agreement", subword_counts),
        ("ternary census up to length 8", length_eight_census),
        ("shortest m/me gap has length 8", shortest_gap),
        ("strongly equivalent pair that is not mse", strong_but_not_mse),
        ("length-15 m-equivalent pair without rule moves", length_fifteen_pair),
        ("binary m iff me up to length 12", binary_m_vs_me),
        ("signature and all-orderings deciders agree", strong_deciders_agree),
        ("abc-count strata 0 and 1 up to length 9", abc_strata_verifiers),
        ("one-occurrence certificate up to length 8", abc1_certificate),
        ("binary strong-m iff m up to length 10", binary_strong_is_m),
        ("permutation transfer up to length 5", permutation_transfer),
        ("weak relation: triple, chains, witnesses", weak_relation_suite),
        ("property suite", property_suite),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
