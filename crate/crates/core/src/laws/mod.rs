//! The lattice of closed languages, compact elements, and randomized checks
//! of the algebraic laws about closed and open languages.

mod report;
mod suites;

use crate::automata::{ClosureKind, Dfa};
use crate::closure::is_closed;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

pub use report::{LawReport, Violation};
pub use suites::{run_law_suite, Bounds, Instance, Suite};

/// L·R, minimized.
pub fn concat(l: &Dfa, r: &Dfa, budget: usize) -> Result<Dfa> {
    Ok(l.to_nfa().concatenate(&r.to_nfa())?.determinize(budget)?.minimize())
}

/// L⁺ or L*, minimized.
pub fn closure_of(l: &Dfa, kind: ClosureKind, budget: usize) -> Result<Dfa> {
    Ok(l.to_nfa().closure(kind).determinize(budget)?.minimize())
}

/// L^k for k ≥ 1.
pub fn power(l: &Dfa, k: usize, budget: usize) -> Result<Dfa> {
    if k == 0 {
        return Err(Error::InvalidArgument("power needs k >= 1".into()));
    }
    let mut acc = l.clone();
    for _ in 1..k {
        acc = concat(&acc, l, budget)?;
    }
    Ok(acc)
}

/// L ∧ R = L ∩ R.
pub fn meet(l: &Dfa, r: &Dfa) -> Result<Dfa> {
    Ok(l.intersection(r)?.minimize())
}

/// L ∨ R = (L ∪ R)^□.
pub fn join(l: &Dfa, r: &Dfa, kind: ClosureKind, budget: usize) -> Result<Dfa> {
    closure_of(&l.union(r)?, kind, budget)
}

/// Σ^{≤m}.
pub fn length_at_most(alphabet: &Alphabet, m: usize) -> Dfa {
    let dead = m + 1;
    let table = (0..=dead)
        .map(|i| vec![if i < dead { i + 1 } else { dead }; alphabet.len()])
        .collect();
    Dfa::from_table(alphabet.clone(), 0, 0..=m, table).expect("well-formed table")
}

/// The closure of a finite basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactLang {
    alphabet: Alphabet,
    basis: Vec<Word>,
    kind: ClosureKind,
}

impl CompactLang {
    /// Basis words are deduplicated and kept in shortlex order.
    pub fn new(alphabet: Alphabet, basis: impl IntoIterator<Item = Word>, kind: ClosureKind) -> Result<Self> {
        let mut basis: Vec<Word> = basis.into_iter().collect();
        for w in &basis {
            alphabet.encode(w)?;
        }
        basis.sort_by(|a, b| alphabet.cmp_shortlex(a, b));
        basis.dedup();
        Ok(CompactLang { alphabet, basis, kind })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn kind(&self) -> ClosureKind {
        self.kind
    }

    pub fn to_dfa(&self, budget: usize) -> Result<Dfa> {
        closure_of(&Dfa::from_words(self.alphabet.clone(), &self.basis)?, self.kind, budget)
    }
}

/// (L ∪ M)^□ as the closure of the union of the bases.
pub fn compact_union(c1: &CompactLang, c2: &CompactLang) -> Result<CompactLang> {
    if c1.kind != c2.kind {
        return Err(Error::KindMismatch);
    }
    if c1.alphabet != c2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    CompactLang::new(c1.alphabet.clone(), c1.basis.iter().chain(&c2.basis).cloned(), c1.kind)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compactness {
    /// K = (K ∩ Σ^{≤m})^□.
    Yes { basis: CompactLang, m: usize },
    /// No basis of words of length ≤ m_max generates K. Not a disproof.
    Unknown { m_max: usize },
}

/// Searches m = 1..=m_max for K = (K ∩ Σ^{≤m})^□.
pub fn is_compact(k: &Dfa, kind: ClosureKind, m_max: usize, budget: usize) -> Result<Compactness> {
    if !is_closed(k, kind) {
        return Err(Error::NotClosed);
    }
    let alphabet = k.alphabet();
    for m in 1..=m_max {
        let part = k.intersection(&length_at_most(alphabet, m))?;
        if closure_of(&part, kind, budget)?.equivalent(k)? {
            let words = alphabet
                .words_up_to(m)
                .into_iter()
                .filter(|w| k.run_indices(&alphabet.encode(w).expect("own alphabet")));
            let basis = CompactLang::new(alphabet.clone(), words, kind)?;
            return Ok(Compactness::Yes { basis, m });
        }
    }
    Ok(Compactness::Unknown { m_max })
}
