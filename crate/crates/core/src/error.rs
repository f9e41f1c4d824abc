use std::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid symbol token {0:?}")]
    InvalidSymbol(String),

    #[error("alphabet contains duplicate symbol {0:?}")]
    DuplicateSymbol(String),

    #[error("symbol {0:?} is not part of the alphabet")]
    UnknownSymbol(String),

    #[error("automata or words are over different alphabets")]
    AlphabetMismatch,

    #[error("state {state} is out of range (automaton has {count} states)")]
    InvalidState { state: usize, count: usize },

    #[error("state budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("enumerating words up to length {max_len} needs {needed} entries, budget is {budget}")]
    EnumerationBudget {
        max_len: usize,
        needed: u128,
        budget: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("the empty word is not allowed here")]
    EmptyWord,

    #[error("{u} and {v} commute; no clopen partition separates them")]
    Commute { u: String, v: String },

    #[error("{u} is a power of {v}; every open language containing {u} contains {v}")]
    Power { u: String, v: String },

    #[error("the two words are equal")]
    EqualWords,

    #[error("the language is not closed")]
    NotClosed,

    #[error("closure kinds differ")]
    KindMismatch,

    #[error("unknown law suite {0:?}")]
    UnknownSuite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: message.to_string(),
        }
    }

    pub(crate) fn syntax(offset: usize, message: impl fmt::Display) -> Self {
        Error::Syntax {
            offset,
            message: message.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
