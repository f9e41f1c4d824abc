use std::collections::{HashMap, VecDeque};

use super::{Automaton, Nfa, StateId};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Binary operation for [`Dfa::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    /// Left minus right.
    Diff,
    Xor,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Diff => a && !b,
            BoolOp::Xor => a != b,
        }
    }
}

/// A total deterministic finite automaton.
///
/// The transition table is stored row-major: `delta[state * k + symbol]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: StateId,
    finals: Vec<bool>,
    delta: Vec<StateId>,
}

pub(crate) fn default_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("q{i}")).collect()
}

impl Dfa {
    /// Builds a DFA from one row of targets per state.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        table: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let count = table.len();
        if names.len() != count {
            return Err(Error::InvalidArgument(format!(
                "{} state names for {count} states",
                names.len()
            )));
        }
        let check = |s: StateId| {
            if s < count {
                Ok(s)
            } else {
                Err(Error::InvalidState { state: s, count })
            }
        };
        check(initial)?;
        let mut final_flags = vec![false; count];
        for f in finals {
            final_flags[check(f)?] = true;
        }
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(count * k);
        for row in &table {
            if row.len() != k {
                return Err(Error::InvalidArgument(format!(
                    "transition row has {} entries, alphabet has {k}",
                    row.len()
                )));
            }
            for &t in row {
                delta.push(check(t)?);
            }
        }
        Ok(Dfa {
            alphabet,
            names,
            initial,
            finals: final_flags,
            delta,
        })
    }

    /// Like [`Dfa::new`] with generated state names `q0, q1, ...`.
    pub fn from_table(
        alphabet: Alphabet,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        table: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let names = default_names(table.len());
        Dfa::new(alphabet, names, initial, finals, table)
    }

    pub(crate) fn from_parts(alphabet: Alphabet, initial: StateId, finals: Vec<bool>, delta: Vec<StateId>) -> Self {
        let names = default_names(finals.len());
        Dfa {
            alphabet,
            names,
            initial,
            finals,
            delta,
        }
    }

    /// One non-accepting state.
    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(alphabet, 0, vec![false], vec![0; k])
    }

    /// One accepting state: Σ*.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(alphabet, 0, vec![true], vec![0; k])
    }

    /// Trie automaton for a finite set of words, completed with a sink.
    pub fn from_words(alphabet: Alphabet, words: &[Word]) -> Result<Self> {
        let k = alphabet.len();
        // state 0 is the sink, state 1 the root
        let mut delta = vec![0; 2 * k];
        let mut finals = vec![false, false];
        for w in words {
            let mut s = 1;
            for i in alphabet.encode(w)? {
                let next = delta[s * k + i];
                s = if next == 0 {
                    let fresh = finals.len();
                    finals.push(false);
                    delta.extend(std::iter::repeat_n(0, k));
                    delta[s * k + i] = fresh;
                    fresh
                } else {
                    next
                };
            }
            finals[s] = true;
        }
        Ok(Dfa::from_parts(alphabet, 1, finals, delta))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals.iter().enumerate().filter_map(|(i, &f)| f.then_some(i))
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.names[state]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    /// Index of the state named `name`.
    pub fn state_named(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn next(&self, state: StateId, symbol: usize) -> StateId {
        self.delta[state * self.alphabet.len() + symbol]
    }

    /// State reached from `state` on a word of symbol indices.
    pub fn walk(&self, state: StateId, word: &[usize]) -> StateId {
        word.iter().fold(state, |s, &a| self.next(s, a))
    }

    pub fn run_indices(&self, word: &[usize]) -> bool {
        self.finals[self.walk(self.initial, word)]
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.run_indices(&self.alphabet.encode(word)?))
    }

    fn same_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Σ* minus the language; state names are kept.
    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for f in &mut out.finals {
            *f = !*f;
        }
        out
    }

    /// Product automaton over the pairs reachable from the initial pair.
    pub fn combine(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let n2 = other.state_count();
        let mut ids = vec![usize::MAX; self.state_count() * n2];
        let mut pairs = vec![(self.initial, other.initial)];
        ids[self.initial * n2 + other.initial] = 0;
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let (np, nq) = (self.next(p, a), other.next(q, a));
                let slot = &mut ids[np * n2 + nq];
                if *slot == usize::MAX {
                    *slot = pairs.len();
                    pairs.push((np, nq));
                }
                delta.push(*slot);
            }
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| op.apply(self.finals[p], other.finals[q]))
            .collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, finals, delta))
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::And)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::Or)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::Diff)
    }

    fn reachable(&self) -> Vec<StateId> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for a in 0..k {
                let t = self.next(s, a);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    pub fn is_empty(&self) -> bool {
        !self.reachable().into_iter().any(|s| self.finals[s])
    }

    pub fn is_universal(&self) -> bool {
        self.reachable().into_iter().all(|s| self.finals[s])
    }

    /// Language equality via emptiness of the symmetric difference.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let n2 = other.state_count();
        let mut seen = vec![false; self.state_count() * n2];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        seen[self.initial * n2 + other.initial] = true;
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                return Ok(false);
            }
            for a in 0..k {
                let (np, nq) = (self.next(p, a), other.next(q, a));
                if !std::mem::replace(&mut seen[np * n2 + nq], true) {
                    queue.push_back((np, nq));
                }
            }
        }
        Ok(true)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Minimal equivalent DFA, states numbered in breadth-first order from
    /// the initial state with symbols taken in alphabet order.
    ///
    /// Uses Moore-style partition refinement on the reachable part.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let mut local = vec![usize::MAX; self.state_count()];
        for (i, &s) in reach.iter().enumerate() {
            local[s] = i;
        }
        let m = reach.len();
        let mut class: Vec<usize> = reach.iter().map(|&s| self.finals[s] as usize).collect();
        let mut classes = {
            let mut c = class.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = Vec::with_capacity(m);
            for (i, &s) in reach.iter().enumerate() {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[i]);
                for a in 0..k {
                    sig.push(class[local[self.next(s, a)]]);
                }
                let fresh = sigs.len();
                next.push(*sigs.entry(sig).or_insert(fresh));
            }
            let count = sigs.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        // canonical renumbering
        let mut rep = vec![usize::MAX; classes];
        for (i, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = reach[i];
            }
        }
        let mut number = vec![usize::MAX; classes];
        let start = class[local[self.initial]];
        number[start] = 0;
        let mut order = vec![start];
        let mut i = 0;
        let mut delta = Vec::with_capacity(classes * k);
        while i < order.len() {
            let s = rep[order[i]];
            for a in 0..k {
                let c = class[local[self.next(s, a)]];
                if number[c] == usize::MAX {
                    number[c] = order.len();
                    order.push(c);
                }
                delta.push(number[c]);
            }
            i += 1;
        }
        let finals = order.iter().map(|&c| self.finals[rep[c]]).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, delta)
    }

    /// Shortest accepted word; ties go to the lexicographically least.
    pub fn shortest_accepted(&self) -> Option<Word> {
        let k = self.alphabet.len();
        let n = self.state_count();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for s in 0..n {
            for a in 0..k {
                preds[self.next(s, a)].push(s);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue: VecDeque<StateId> = self.finals().collect();
        for &f in &queue {
            dist[f] = 0;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &preds[s] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[s] + 1;
                    queue.push_back(p);
                }
            }
        }
        let mut s = self.initial;
        if dist[s] == usize::MAX {
            return None;
        }
        let mut word = Vec::with_capacity(dist[s]);
        while dist[s] > 0 {
            let a = (0..k)
                .find(|&a| dist[self.next(s, a)] == dist[s] - 1)
                .expect("distance decreases along some edge");
            word.push(a);
            s = self.next(s, a);
        }
        Some(self.alphabet.decode(&word))
    }

    /// The same automaton viewed as an NFA.
    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let mut nfa = Nfa::new(self.alphabet.clone());
        for (s, name) in self.names.iter().enumerate() {
            let id = nfa.add_named_state(name.clone());
            nfa.set_final(id, self.finals[s]);
        }
        for s in 0..self.state_count() {
            for a in 0..k {
                nfa.add_move(s, Some(a), self.next(s, a));
            }
        }
        nfa.add_initial(self.initial);
        nfa
    }

    /// Renames states; `names` must have one entry per state.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Dfa> {
        if names.len() != self.state_count() {
            return Err(Error::InvalidArgument("wrong number of state names".into()));
        }
        self.names = names;
        Ok(self)
    }
}

impl Automaton for Dfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn state_count(&self) -> usize {
        self.finals.len()
    }

    fn accepts(&self, word: &Word) -> Result<bool> {
        Dfa::accepts(self, word)
    }

    fn shortest_accepted(&self) -> Option<Word> {
        Dfa::shortest_accepted(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_letters("ab")
    }

    /// {a}⁺ over {a, b}.
    fn a_plus() -> Dfa {
        Dfa::from_table(ab(), 0, [1], vec![vec![1, 2], vec![1, 2], vec![2, 2]]).unwrap()
    }

    #[test]
    fn run_basics() {
        let all = Dfa::universal(Alphabet::from_letters("a"));
        assert!(all.accepts(&Word::from_letters("aaa")).unwrap());
        let d = a_plus();
        assert!(!d.accepts(&Word::epsilon()).unwrap());
        assert!(d.accepts(&Word::from_letters("aa")).unwrap());
        assert!(!d.accepts(&Word::from_letters("ab")).unwrap());
        assert_eq!(
            d.accepts(&Word::from_letters("c")),
            Err(Error::UnknownSymbol("c".into()))
        );
    }

    #[test]
    fn boolean_identities() {
        let d = a_plus();
        assert!(d.intersection(&Dfa::empty(ab())).unwrap().is_empty());
        assert!(d.combine(&d, BoolOp::Xor).unwrap().is_empty());
        assert!(d.complement().complement().equivalent(&d).unwrap());
        assert!(Dfa::universal(ab()).complement().is_empty());
        assert_eq!(
            d.union(&Dfa::empty(Alphabet::from_letters("a"))),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn equivalence_detects_difference() {
        assert!(!Dfa::universal(ab()).equivalent(&Dfa::empty(ab())).unwrap());
        assert!(a_plus().equivalent(&a_plus()).unwrap());
    }

    #[test]
    fn minimize_collapses_redundant_states() {
        let redundant = Dfa::from_table(ab(), 0, [0, 1, 2], vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let m = redundant.minimize();
        assert_eq!(m.state_count(), 1);
        let d = a_plus().minimize();
        assert_eq!(d.minimize().state_count(), d.state_count());
        assert!(d.equivalent(&a_plus()).unwrap());
    }

    #[test]
    fn shortest_accepted_prefers_lexicographic() {
        let words = ["ba", "ab", "bbb"].map(Word::from_letters);
        let d = Dfa::from_words(ab(), &words).unwrap();
        assert_eq!(d.shortest_accepted(), Some(Word::from_letters("ab")));
        assert_eq!(Dfa::empty(ab()).shortest_accepted(), None);
        assert_eq!(Dfa::universal(ab()).shortest_accepted(), Some(Word::epsilon()));
    }
}
