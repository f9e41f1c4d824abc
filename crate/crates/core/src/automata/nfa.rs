use std::collections::{HashMap, VecDeque};

use super::dfa::Dfa;
use super::{Automaton, ClosureKind, StateId};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// A nondeterministic finite automaton with ε-moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    initials: Vec<StateId>,
    finals: Vec<bool>,
    /// `moves[state][symbol]`
    moves: Vec<Vec<Vec<StateId>>>,
    eps: Vec<Vec<StateId>>,
}

impl Nfa {
    /// An automaton with no states (the empty language).
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            names: Vec::new(),
            initials: Vec::new(),
            finals: Vec::new(),
            moves: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn add_state(&mut self) -> StateId {
        let name = format!("q{}", self.names.len());
        self.add_named_state(name)
    }

    pub fn add_named_state(&mut self, name: String) -> StateId {
        let id = self.names.len();
        self.names.push(name);
        self.finals.push(false);
        self.moves.push(vec![Vec::new(); self.alphabet.len()]);
        self.eps.push(Vec::new());
        id
    }

    /// Adds a move; `symbol == None` is an ε-move.
    pub fn add_move(&mut self, from: StateId, symbol: Option<usize>, to: StateId) {
        let targets = match symbol {
            Some(a) => &mut self.moves[from][a],
            None => &mut self.eps[from],
        };
        if !targets.contains(&to) {
            targets.push(to);
        }
    }

    pub fn add_initial(&mut self, state: StateId) {
        if !self.initials.contains(&state) {
            self.initials.push(state);
            self.initials.sort_unstable();
        }
    }

    pub fn set_final(&mut self, state: StateId, accepting: bool) {
        self.finals[state] = accepting;
    }

    /// Accepts exactly {ε}.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        let mut nfa = Nfa::new(alphabet);
        let s = nfa.add_state();
        nfa.add_initial(s);
        nfa.set_final(s, true);
        nfa
    }

    /// One chain of states per word, all starting at a shared initial state.
    pub fn from_words(alphabet: Alphabet, words: &[Word]) -> Result<Self> {
        let mut nfa = Nfa::new(alphabet);
        let start = nfa.add_state();
        nfa.add_initial(start);
        for w in words {
            let mut s = start;
            for a in nfa.alphabet.encode(w)? {
                let t = nfa.add_state();
                nfa.add_move(s, Some(a), t);
                s = t;
            }
            nfa.set_final(s, true);
        }
        Ok(nfa)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn initials(&self) -> &[StateId] {
        &self.initials
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state]
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.names[state]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn targets(&self, state: StateId, symbol: usize) -> &[StateId] {
        &self.moves[state][symbol]
    }

    pub fn epsilon_targets(&self, state: StateId) -> &[StateId] {
        &self.eps[state]
    }

    pub fn has_epsilon_moves(&self) -> bool {
        self.eps.iter().any(|e| !e.is_empty())
    }

    /// Sorted ε-closure of `states`.
    pub fn epsilon_closure(&self, states: &[StateId]) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<StateId> = Vec::with_capacity(states.len());
        for &s in states {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            out.push(s);
            for &t in &self.eps[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// ε-closure of the symbol successors of an (already closed) set.
    pub fn step(&self, states: &[StateId], symbol: usize) -> Vec<StateId> {
        let mut next: Vec<StateId> = states
            .iter()
            .flat_map(|&s| self.moves[s][symbol].iter().copied())
            .collect();
        next.sort_unstable();
        next.dedup();
        self.epsilon_closure(&next)
    }

    pub fn initial_set(&self) -> Vec<StateId> {
        self.epsilon_closure(&self.initials)
    }

    pub fn any_final(&self, states: &[StateId]) -> bool {
        states.iter().any(|&s| self.finals[s])
    }

    pub fn run_indices(&self, word: &[usize]) -> bool {
        let set = word.iter().fold(self.initial_set(), |set, &a| self.step(&set, a));
        self.any_final(&set)
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.run_indices(&self.alphabet.encode(word)?))
    }

    /// Copies `other` into `self`, returning the offset of its states.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let offset = self.state_count();
        for (s, name) in other.names.iter().enumerate() {
            let id = self.add_named_state(name.clone());
            self.finals[id] = other.finals[s];
        }
        for s in 0..other.state_count() {
            for a in 0..self.alphabet.len() {
                for &t in &other.moves[s][a] {
                    self.add_move(s + offset, Some(a), t + offset);
                }
            }
            for &t in &other.eps[s] {
                self.add_move(s + offset, None, t + offset);
            }
        }
        offset
    }

    fn same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// L(self)·L(other) via ε-moves from the finals of `self` to the
    /// initials of `other`.
    pub fn concatenate(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.absorb(other);
        for s in 0..self.state_count() {
            if self.finals[s] {
                out.finals[s] = false;
                for &i in &other.initials {
                    out.add_move(s, None, i + offset);
                }
            }
        }
        Ok(out)
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.absorb(other);
        for &i in &other.initials {
            out.add_initial(i + offset);
        }
        Ok(out)
    }

    /// L⁺ adds ε-moves from finals back to initials; L* additionally gets a
    /// fresh accepting initial state.
    pub fn closure(&self, kind: ClosureKind) -> Nfa {
        let mut out = self.clone();
        for s in 0..self.state_count() {
            if self.finals[s] {
                for &i in &self.initials {
                    out.add_move(s, None, i);
                }
            }
        }
        if kind == ClosureKind::Kleene {
            let fresh = out.add_named_state(format!("q{}", out.state_count()));
            out.set_final(fresh, true);
            for &i in &self.initials {
                out.add_move(fresh, None, i);
            }
            out.initials = vec![fresh];
        }
        out
    }

    /// Subset construction over ε-closures, completed with the empty set as
    /// sink. Fails once more than `budget` subsets are reachable.
    pub fn determinize(&self, budget: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let start = self.initial_set();
        let mut ids: HashMap<Vec<StateId>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for a in 0..k {
                let next = self.step(&sets[i], a);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        if id >= budget {
                            return Err(Error::BudgetExceeded { budget });
                        }
                        ids.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let finals = sets.iter().map(|s| self.any_final(s)).collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, finals, delta))
    }

    /// Shortest accepted word, ties broken lexicographically; ε-moves cost 0.
    ///
    /// Backward 0-1 BFS computes each state's distance to acceptance, then
    /// the word is built greedily over the set of states reached so far.
    pub fn shortest_accepted(&self) -> Option<Word> {
        let n = self.state_count();
        let k = self.alphabet.len();
        let mut rev: Vec<Vec<(StateId, usize)>> = vec![Vec::new(); n];
        for s in 0..n {
            for a in 0..k {
                for &t in &self.moves[s][a] {
                    rev[t].push((s, 1));
                }
            }
            for &t in &self.eps[s] {
                rev[t].push((s, 0));
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut deque = VecDeque::new();
        for (s, _) in self.finals.iter().enumerate().filter(|(_, &f)| f) {
            dist[s] = 0;
            deque.push_back(s);
        }
        while let Some(s) = deque.pop_front() {
            for &(p, w) in &rev[s] {
                let d = dist[s] + w;
                if d < dist[p] {
                    dist[p] = d;
                    if w == 0 {
                        deque.push_front(p);
                    } else {
                        deque.push_back(p);
                    }
                }
            }
        }
        let best = |set: &[StateId]| set.iter().map(|&s| dist[s]).min().unwrap_or(usize::MAX);
        let mut set = self.initial_set();
        let mut remaining = best(&set);
        if remaining == usize::MAX {
            return None;
        }
        let mut word = Vec::with_capacity(remaining);
        while remaining > 0 {
            let (a, next) = (0..k)
                .map(|a| (a, self.step(&set, a)))
                .find(|(_, next)| best(next) == remaining - 1)
                .expect("distance decreases along some symbol");
            word.push(a);
            set = next;
            remaining -= 1;
        }
        Some(self.alphabet.decode(&word))
    }

    /// True when there are no ε-moves, one initial state and at most one
    /// target per (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        !self.has_epsilon_moves() && self.initials.len() == 1 && self.moves.iter().flatten().all(|t| t.len() <= 1)
    }
}

impl Automaton for Nfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn state_count(&self) -> usize {
        self.names.len()
    }

    fn accepts(&self, word: &Word) -> Result<bool> {
        Nfa::accepts(self, word)
    }

    fn shortest_accepted(&self) -> Option<Word> {
        Nfa::shortest_accepted(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_letters("ab")
    }

    fn letter_plus(letter: usize) -> Nfa {
        let mut nfa = Nfa::new(ab());
        let (s, t) = (nfa.add_state(), nfa.add_state());
        nfa.add_initial(s);
        nfa.add_move(s, Some(letter), t);
        nfa.add_move(t, Some(letter), t);
        nfa.set_final(t, true);
        nfa
    }

    fn w(s: &str) -> Word {
        Word::from_letters(s)
    }

    #[test]
    fn concatenation_of_letter_pluses() {
        let c = letter_plus(0).concatenate(&letter_plus(1)).unwrap();
        assert!(c.accepts(&w("ab")).unwrap());
        assert!(c.accepts(&w("aabbb")).unwrap());
        assert!(!c.accepts(&w("abab")).unwrap());
        let eps = Nfa::epsilon(ab());
        let l = letter_plus(0);
        assert!(l
            .concatenate(&eps)
            .unwrap()
            .determinize(64)
            .unwrap()
            .equivalent(&l.determinize(64).unwrap())
            .unwrap());
        assert!(Nfa::new(ab())
            .concatenate(&l)
            .unwrap()
            .determinize(64)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn closures() {
        let abw = Nfa::from_words(ab(), &[w("ab")]).unwrap();
        let plus = abw.closure(ClosureKind::Positive);
        assert!(plus.accepts(&w("abab")).unwrap());
        assert!(!plus.accepts(&Word::epsilon()).unwrap());
        let star = Nfa::new(ab()).closure(ClosureKind::Kleene);
        let d = star.determinize(8).unwrap();
        assert!(d.accepts(&Word::epsilon()).unwrap());
        assert!(!d.accepts(&w("a")).unwrap());
        let letters = Nfa::from_words(ab(), &[w("a"), w("b")]).unwrap();
        let sigma_plus = letters.closure(ClosureKind::Positive).determinize(16).unwrap();
        assert!(sigma_plus
            .equivalent(
                &Dfa::universal(ab())
                    .difference(&Dfa::from_words(ab(), &[Word::epsilon()]).unwrap())
                    .unwrap()
            )
            .unwrap());
    }

    #[test]
    fn determinize_respects_budget() {
        let c = letter_plus(0).concatenate(&letter_plus(1)).unwrap();
        let d = c.determinize(1 << 20).unwrap();
        assert!(d.state_count() <= 5);
        assert!(d.accepts(&w("aab")).unwrap());
        assert!(!d.accepts(&w("aba")).unwrap());
        assert_eq!(c.determinize(2), Err(Error::BudgetExceeded { budget: 2 }));
    }

    #[test]
    fn shortest_with_epsilon_moves() {
        let plus = Nfa::from_words(ab(), &[w("ab")])
            .unwrap()
            .closure(ClosureKind::Positive);
        assert_eq!(plus.shortest_accepted(), Some(w("ab")));
        assert_eq!(Nfa::new(ab()).shortest_accepted(), None);
        let both = Nfa::from_words(ab(), &[w("bb"), w("ba")]).unwrap();
        assert_eq!(both.shortest_accepted(), Some(w("ba")));
    }
}
