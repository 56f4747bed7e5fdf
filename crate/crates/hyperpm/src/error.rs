use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid letter token {0:?}: tokens are non-empty and contain no whitespace or comma")]
    InvalidToken(String),
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(String),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("state id {0} out of range")]
    StateOutOfRange(usize),
    #[error("letter id {0} out of range")]
    LetterOutOfRange(usize),
    #[error("direction {direction} out of range (automaton has {k} directions)")]
    UnknownDirection { direction: usize, k: usize },
    #[error("an automaton needs at least one direction")]
    NoDirections,
    #[error("expected a tuple of {expected} words, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("empty pattern language")]
    EmptyPatternLanguage,
    #[error("dfa is not complete: no successor for state {state} on letter {letter}")]
    IncompleteDfa { state: usize, letter: usize },
    #[error("subset construction exceeded {limit} subsets")]
    SubsetLimit { limit: u128 },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error("deadline exceeded")]
    Timeout,
    #[error("worker pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
