use thiserror::Error;

use crate::word::Letter;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0:?}: letters are the characters 'a'..='z'")]
    InvalidLetter(char),

    #[error("letter '{0}' occurs twice")]
    DuplicateLetter(Letter),

    #[error("an ordered alphabet needs at least one letter")]
    EmptyOrdering,

    #[error("letter '{0}' is outside the alphabet")]
    LetterOutsideAlphabet(Letter),

    #[error("alphabet of size {size} exceeds the limit of {max}")]
    AlphabetTooLarge { size: usize, max: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a unit-diagonal upper-triangular matrix: {0}")]
    InvalidMatrix(String),

    #[error("arithmetic overflow")]
    ArithmeticOverflow,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("closure exceeded the budget of {budget} members")]
    ClosureBudgetExceeded { budget: usize },

    #[error("search space exceeds the budget: {0}")]
    BudgetExceeded(String),

    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
}
