//! Finite automata and the regular-language operations built on them.

mod dfa;
mod format;
mod nfa;

pub use dfa::{BoolOp, Dfa};
pub use format::{parse_automaton, ParsedAutomaton};
pub use nfa::Nfa;

use crate::error::Result;
use crate::word::{Alphabet, Word};

pub type StateId = usize;

/// Default cap on the number of subset states built by determinization.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// Which closure operator is meant: L⁺ or L*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosureKind {
    Positive,
    Kleene,
}

impl std::str::FromStr for ClosureKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "pos" | "plus" => Ok(ClosureKind::Positive),
            "kleene" | "star" => Ok(ClosureKind::Kleene),
            other => Err(crate::Error::InvalidArgument(format!("unknown closure kind `{other}`"))),
        }
    }
}

impl std::fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClosureKind::Positive => "positive",
            ClosureKind::Kleene => "kleene",
        })
    }
}

/// Operations shared by DFAs and NFAs.
pub trait Automaton {
    fn alphabet(&self) -> &Alphabet;
    fn state_count(&self) -> usize;
    /// Membership; fails on symbols outside the alphabet.
    fn accepts(&self, word: &Word) -> Result<bool>;
    /// Minimum-length accepted word, lexicographically least among those.
    fn shortest_accepted(&self) -> Option<Word>;
}
