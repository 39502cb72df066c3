use std::fmt;

use crate::equivalence::{parikh_equivalent, strongly_m_equivalent, weakly_m_related};
use crate::error::{Error, Result};
use crate::matrix::m_equivalent;
use crate::rewrite::{me_equivalent_with_budget, mse_equivalent_with_budget, one_equivalent};
use crate::word::{Alphabet, OrderedAlphabet, Word};

/// The relations the explorer can decide, group and compare.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// Equal Parikh matrices under one ordering.
    M(OrderedAlphabet),
    /// Reachable by E1 and E2.
    Me(OrderedAlphabet),
    /// Reachable by E1 alone.
    One(OrderedAlphabet),
    /// Reachable by SE.
    Mse,
    /// Equal Parikh matrices under every ordering.
    StrongM,
    /// Equal Parikh matrices under some ordering of the alphabet. Not
    /// transitive.
    Weak(Alphabet),
    Parikh,
}

/// Relation names accepted on the command line.
pub const RELATION_NAMES: [&str; 7] = ["m", "me", "one", "mse", "strong", "weak", "parikh"];

impl RelationKind {
    /// Builds a relation from its command-line name. Ordered relations need
    /// `order`; `weak` needs `alphabet`.
    pub fn parse(name: &str, order: Option<&OrderedAlphabet>, alphabet: Option<&Alphabet>) -> Result<RelationKind> {
        let need_order = || {
            order
                .cloned()
                .ok_or_else(|| Error::PreconditionViolated(format!("relation {name} needs an ordering")))
        };
        Ok(match name {
            "m" => RelationKind::M(need_order()?),
            "me" => RelationKind::Me(need_order()?),
            "one" => RelationKind::One(need_order()?),
            "mse" => RelationKind::Mse,
            "strong" => RelationKind::StrongM,
            "weak" => RelationKind::Weak(
                *alphabet.ok_or_else(|| Error::PreconditionViolated("relation weak needs an alphabet".into()))?,
            ),
            "parikh" => RelationKind::Parikh,
            other => return Err(Error::UnknownRelation(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            RelationKind::M(_) => "m",
            RelationKind::Me(_) => "me",
            RelationKind::One(_) => "one",
            RelationKind::Mse => "mse",
            RelationKind::StrongM => "strong",
            RelationKind::Weak(_) => "weak",
            RelationKind::Parikh => "parikh",
        }
    }

    pub fn ordering(&self) -> Option<&OrderedAlphabet> {
        match self {
            RelationKind::M(o) | RelationKind::Me(o) | RelationKind::One(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_transitive(&self) -> bool {
        !matches!(self, RelationKind::Weak(_))
    }

    /// Decides the relation for one pair. `budget` caps rewrite closures.
    pub fn holds(&self, w: &Word, w2: &Word, budget: usize) -> Result<bool> {
        match self {
            RelationKind::M(o) => m_equivalent(w, w2, o),
            RelationKind::Me(o) => me_equivalent_with_budget(w, w2, o, budget),
            RelationKind::One(o) => one_equivalent(w, w2, o),
            RelationKind::Mse => mse_equivalent_with_budget(w, w2, budget),
            RelationKind::StrongM => Ok(strongly_m_equivalent(w, w2)?.equivalent),
            RelationKind::Weak(a) => Ok(weakly_m_related(w, w2, a)?.is_some()),
            RelationKind::Parikh => Ok(parikh_equivalent(w, w2)),
        }
    }
}

impl fmt::Display for RelationKind {
    /// `m[cab]` for ordered relations, `weak{abc}` for the weak relation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::M(o) | RelationKind::Me(o) | RelationKind::One(o) => write!(f, "{}[{o}]", self.name()),
            RelationKind::Weak(a) => write!(f, "weak{{{a}}}"),
            _ => f.write_str(self.name()),
        }
    }
}

impl serde::Serialize for RelationKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
