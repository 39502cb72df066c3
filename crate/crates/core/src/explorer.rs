//! Command-line driver. Every command renders either a text report or a JSON
//! envelope `{command, inputs, result, certificate?}`.
//!
//! Exit codes: 0 computed, 1 verification failed, 2 usage error, 3 budget
//! exceeded.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::census::{census, find_gap};
use crate::equivalence::{
    expanded_weak_witness, strongly_m_equivalent, strongly_m_equivalent_by_orderings, transposition_chain,
    weakly_m_related,
};
use crate::error::{Error, Result};
use crate::matrix::parikh_matrix_of;
use crate::relation::{RelationKind, RELATION_NAMES};
use crate::rewrite::{me_path, mse_path, one_equiv_normal_form, RewriteStep, DEFAULT_CLOSURE_BUDGET};
use crate::subword::count_subword;
use crate::verify::{run_check, CheckId};
use crate::word::{parikh_vector, Alphabet, OrderedAlphabet, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "parikh",
    version,
    about = "Parikh matrices, subword counts and word equivalences"
)]
pub struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on closure sizes and on the number of enumerated words.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BUDGET)]
    pub budget: usize,
    /// Worker threads for census, gap search and verification.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Parikh matrix of a word ("-" is the empty word).
    Matrix {
        word: Word,
        /// Ordering such as "cab" for c<a<b.
        #[arg(long)]
        order: OrderedAlphabet,
    },
    /// Count occurrences of a scattered subword.
    Count { word: Word, pattern: Word },
    /// Decide a relation between two words.
    Equiv {
        w: Word,
        w2: Word,
        /// One of m, me, one, mse, strong, weak, parikh.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        order: Option<OrderedAlphabet>,
        #[arg(long)]
        alphabet: Option<Alphabet>,
        /// Print a rewrite path for me/mse when equivalent.
        #[arg(long)]
        trace: bool,
        /// For strong: also decide by comparing matrices under all orderings.
        #[arg(long)]
        by_orderings: bool,
    },
    /// Count classes of a relation among all words up to a length.
    Census {
        #[arg(long, default_value = "abc")]
        alphabet: Alphabet,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value = "m")]
        relation: String,
        /// Defaults to the alphabet in letter order.
        #[arg(long)]
        order: Option<OrderedAlphabet>,
    },
    /// List pairs related by the coarse relation but not by the fine one.
    FindGap {
        #[arg(long, default_value = "abc")]
        alphabet: Alphabet,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        coarse: String,
        #[arg(long)]
        fine: String,
        #[arg(long)]
        order: Option<OrderedAlphabet>,
    },
    /// Run an exhaustive check by name or numeric id.
    Verify {
        #[arg(long)]
        theorem: CheckId,
        #[arg(long)]
        max_len: usize,
    },
    /// Chain of weakly related words joining two words with equal letter counts.
    Chain {
        w: Word,
        w2: Word,
        /// Defaults to the letters of both words.
        #[arg(long)]
        alphabet: Option<Alphabet>,
    },
    /// Ordering under which two words with equal support are M-equivalent.
    Witness { w: Word, w2: Word },
}

/// Output of one command before rendering.
struct Outcome {
    command: &'static str,
    inputs: Map<String, Value>,
    result: Value,
    certificate: Option<Value>,
    text: String,
    exit: i32,
}

impl Outcome {
    fn new(command: &'static str, inputs: Map<String, Value>, result: Value, text: String) -> Outcome {
        Outcome {
            command,
            inputs,
            result,
            certificate: None,
            text,
            exit: EXIT_OK,
        }
    }

    fn with_certificate(mut self, certificate: Option<Value>) -> Outcome {
        self.certificate = certificate;
        self
    }

    fn envelope(&self) -> Value {
        let mut env = Map::new();
        env.insert("command".into(), json!(self.command));
        env.insert("inputs".into(), Value::Object(self.inputs.clone()));
        env.insert("result".into(), self.result.clone());
        if let Some(c) = &self.certificate {
            env.insert("certificate".into(), c.clone());
        }
        Value::Object(env)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ClosureBudgetExceeded { .. } | Error::BudgetExceeded(_) | Error::ArithmeticOverflow => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Runs a parsed command, writing the report to `out` and errors to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&outcome.envelope()).expect("json value")
                )
            } else {
                write!(out, "{}", outcome.text)
            };
            if written.is_err() {
                return EXIT_FAILED;
            }
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn token(w: &Word) -> Value {
    json!(w.to_token())
}

fn opt_str<T: ToString>(v: &Option<T>) -> Value {
    v.as_ref().map_or(Value::Null, |x| json!(x.to_string()))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget;
    match &cli.command {
        Command::Matrix { word, order } => {
            let m = parikh_matrix_of(word, order)?;
            Ok(Outcome::new(
                "matrix",
                inputs(&[("word", token(word)), ("order", json!(order.to_string()))]),
                json!(m.to_rows()),
                m.to_string(),
            ))
        }
        Command::Count { word, pattern } => {
            let n = count_subword(word, pattern)?.get();
            Ok(Outcome::new(
                "count",
                inputs(&[("word", token(word)), ("pattern", token(pattern))]),
                json!(n),
                format!("{n}\n"),
            ))
        }
        Command::Equiv {
            w,
            w2,
            relation,
            order,
            alphabet,
            trace,
            by_orderings,
        } => equiv(
            w,
            w2,
            relation,
            order.as_ref(),
            alphabet.as_ref(),
            *trace,
            *by_orderings,
            budget,
        ),
        Command::Census {
            alphabet,
            max_len,
            relation,
            order,
        } => {
            let relation = census_relation(relation, *alphabet, order.as_ref())?;
            let report = census(*alphabet, *max_len, &relation, budget)?;
            let mut text = format!(
                "alphabet: {}\nrelation: {}\nmax_len: {}\n",
                report.alphabet, report.relation, report.max_len
            );
            text.push_str(&format!("{:>6} {:>10} {:>10}\n", "length", "words", "classes"));
            for row in &report.per_length {
                text.push_str(&format!("{:>6} {:>10} {:>10}\n", row.length, row.words, row.classes));
            }
            text.push_str(&format!(
                "words_total: {}\nclasses_total: {}\n",
                report.words_total, report.classes_total
            ));
            Ok(Outcome::new(
                "census",
                inputs(&[
                    ("alphabet", json!(alphabet.to_string())),
                    ("max_len", json!(max_len)),
                    ("relation", json!(relation.to_string())),
                ]),
                serde_json::to_value(&report).expect("serializable"),
                text,
            ))
        }
        Command::FindGap {
            alphabet,
            max_len,
            coarse,
            fine,
            order,
        } => {
            let coarse = census_relation(coarse, *alphabet, order.as_ref())?;
            let fine = census_relation(fine, *alphabet, order.as_ref())?;
            let pairs = find_gap(*alphabet, *max_len, &coarse, &fine, budget)?;
            let mut text = format!("coarse: {coarse}\nfine: {fine}\nmax_len: {max_len}\n");
            for p in &pairs {
                text.push_str(&format!("{} {}\n", p.w.to_token(), p.w2.to_token()));
            }
            text.push_str(&format!("pairs: {}\n", pairs.len()));
            let result: Vec<Value> = pairs.iter().map(|p| json!([p.w.to_token(), p.w2.to_token()])).collect();
            Ok(Outcome::new(
                "find-gap",
                inputs(&[
                    ("alphabet", json!(alphabet.to_string())),
                    ("max_len", json!(max_len)),
                    ("coarse", json!(coarse.to_string())),
                    ("fine", json!(fine.to_string())),
                ]),
                json!(result),
                text,
            ))
        }
        Command::Verify { theorem, max_len } => {
            let report = run_check(*theorem, *max_len, budget)?;
            let mut outcome = Outcome::new(
                "verify",
                inputs(&[("theorem", json!(theorem.name())), ("max_len", json!(max_len))]),
                serde_json::to_value(&report).expect("serializable"),
                report.to_string(),
            );
            if !report.passed() {
                outcome.exit = EXIT_FAILED;
            }
            Ok(outcome)
        }
        Command::Chain { w, w2, alphabet } => {
            let sigma = alphabet.unwrap_or_else(|| w.support().union(&w2.support()));
            let chain = transposition_chain(w, w2, &sigma)?;
            let mut orderings = Vec::new();
            for hop in chain.windows(2) {
                let witness = weakly_m_related(&hop[0], &hop[1], &sigma)?.ok_or_else(|| {
                    Error::PreconditionViolated(format!("hop {} {} is not weakly related", hop[0], hop[1]))
                })?;
                orderings.push(witness.ordering.to_string());
            }
            let mut text = format!("{}\n", chain[0].to_token());
            for (word, o) in chain[1..].iter().zip(&orderings) {
                text.push_str(&format!("{}  [{o}]\n", word.to_token()));
            }
            Ok(Outcome::new(
                "chain",
                inputs(&[
                    ("w", token(w)),
                    ("w2", token(w2)),
                    ("alphabet", json!(sigma.to_string())),
                ]),
                json!(chain.iter().map(Word::to_token).collect::<Vec<_>>()),
                text,
            )
            .with_certificate(Some(json!({ "orderings": orderings }))))
        }
        Command::Witness { w, w2 } => {
            let witness = expanded_weak_witness(w, w2)?;
            let m = parikh_matrix_of(w, &witness.ordering)?;
            Ok(Outcome::new(
                "witness",
                inputs(&[("w", token(w)), ("w2", token(w2))]),
                json!(witness.ordering.to_string()),
                format!("ordering: {}\n{m}", witness.ordering),
            )
            .with_certificate(Some(json!({ "matrix": m.to_rows() }))))
        }
    }
}

/// Relation for census and gap search: orderings default to the alphabet in
/// letter order and the weak relation ranges over the alphabet.
fn census_relation(name: &str, alphabet: Alphabet, order: Option<&OrderedAlphabet>) -> Result<RelationKind> {
    if !RELATION_NAMES.contains(&name) {
        return Err(Error::UnknownRelation(name.to_string()));
    }
    let order = match order {
        Some(o) => Some(o.clone()),
        None if matches!(name, "m" | "me" | "one") => Some(alphabet.canonical_order()?),
        None => None,
    };
    RelationKind::parse(name, order.as_ref(), Some(&alphabet))
}

fn trace_value(steps: &[RewriteStep]) -> Value {
    json!(steps.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

#[allow(clippy::too_many_arguments)]
fn equiv(
    w: &Word,
    w2: &Word,
    name: &str,
    order: Option<&OrderedAlphabet>,
    alphabet: Option<&Alphabet>,
    trace: bool,
    by_orderings: bool,
    budget: usize,
) -> Result<Outcome> {
    let relation = RelationKind::parse(name, order, alphabet)?;
    let mut lines = Vec::new();
    let (holds, certificate) = match &relation {
        RelationKind::M(o) => {
            let (m, m2) = (parikh_matrix_of(w, o)?, parikh_matrix_of(w2, o)?);
            (
                m == m2,
                Some(json!({ "matrix_w": m.to_rows(), "matrix_w2": m2.to_rows() })),
            )
        }
        RelationKind::Me(_) | RelationKind::Mse if trace => {
            let path = match &relation {
                RelationKind::Me(o) => me_path(w, w2, o, budget)?,
                _ => mse_path(w, w2, budget)?,
            };
            if let Some(steps) = &path {
                lines.extend(steps.iter().map(|s| format!("step: {s}")));
            }
            (
                path.is_some(),
                path.map(|steps| json!({ "steps": trace_value(&steps) })),
            )
        }
        RelationKind::One(o) => {
            let (n, n2) = (one_equiv_normal_form(w, o)?, one_equiv_normal_form(w2, o)?);
            lines.push(format!("normal forms: {} {}", n.to_token(), n2.to_token()));
            (
                n == n2,
                Some(json!({ "normal_form_w": n.to_token(), "normal_form_w2": n2.to_token() })),
            )
        }
        RelationKind::StrongM => {
            let verdict = strongly_m_equivalent(w, w2)?;
            let mut cert = Map::new();
            if let Some(p) = &verdict.separating_pattern {
                lines.push(format!("separating pattern: {}", p.to_token()));
                cert.insert("separating_pattern".into(), token(p));
            }
            if by_orderings {
                let sigma = w.support().union(&w2.support());
                let agree = strongly_m_equivalent_by_orderings(w, w2, &sigma)?;
                lines.push(format!("by orderings: {}", verdict_word(&relation, agree)));
                cert.insert("by_orderings".into(), json!(agree));
            }
            (verdict.equivalent, (!cert.is_empty()).then_some(Value::Object(cert)))
        }
        RelationKind::Weak(sigma) => {
            let witness = weakly_m_related(w, w2, sigma)?;
            if let Some(wit) = &witness {
                lines.push(format!("witness ordering: {}", wit.ordering));
            }
            (
                witness.is_some(),
                witness.map(|wit| json!({ "ordering": wit.ordering.to_string() })),
            )
        }
        RelationKind::Parikh => {
            let sigma = w.support().union(&w2.support());
            if !sigma.is_empty() {
                let o = sigma.canonical_order()?;
                lines.push(format!(
                    "parikh vectors: {} {}",
                    parikh_vector(w, &o)?,
                    parikh_vector(w2, &o)?
                ));
            }
            (relation.holds(w, w2, budget)?, None)
        }
        _ => (relation.holds(w, w2, budget)?, None),
    };
    let mut text = format!(
        "relation: {relation}\nw: {}\nw': {}\nverdict: {}\n",
        w.to_token(),
        w2.to_token(),
        verdict_word(&relation, holds)
    );
    for l in lines {
        text.push_str(&l);
        text.push('\n');
    }
    Ok(Outcome::new(
        "equiv",
        inputs(&[
            ("w", token(w)),
            ("w2", token(w2)),
            ("relation", json!(relation.to_string())),
            ("order", opt_str(&order.cloned())),
            ("alphabet", opt_str(&alphabet.copied())),
        ]),
        json!({ "holds": holds, "verdict": verdict_word(&relation, holds) }),
        text,
    )
    .with_certificate(certificate))
}

fn verdict_word(relation: &RelationKind, holds: bool) -> &'static str {
    match (relation.is_transitive(), holds) {
        (true, true) => "equivalent",
        (true, false) => "not equivalent",
        (false, true) => "related",
        (false, false) => "not related",
    }
}
