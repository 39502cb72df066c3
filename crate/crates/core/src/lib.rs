//! Parikh matrices, scattered-subword counts and the equivalence relations
//! built on them.

pub mod census;
pub mod equivalence;
pub mod error;
pub mod explorer;
pub mod matrix;
pub mod relation;
pub mod rewrite;
pub mod subword;
pub mod ternary;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use matrix::{parikh_matrix_of, ParikhMatrix};
pub use relation::RelationKind;
pub use subword::{count_subword, SubwordCount};
pub use word::{Alphabet, Letter, OrderedAlphabet, ParikhVector, Permutation, Word};
