//! Deciding whether a regular language is closed, open or clopen.
//!
//! A language L is positive-closed iff uv ∈ L for all u, v ∈ L. The
//! counterexample automaton for a DFA on states Q lives on Q ∪ Q×Q: it runs
//! the DFA on u, may jump by ε from a final state p to the pair [p, q₀], then
//! runs both components on v. It accepts on pairs in (Q − F) × F, i.e.
//! exactly the words uv with u, v ∈ L and uv ∉ L. The language is closed iff
//! that automaton accepts nothing, which a search decides in O(n²·|Σ|).
//!
//! Open properties run the same search on the complement. Kleene variants add
//! the ε-membership condition.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::automata::{ClosureKind, Dfa, Nfa, StateId};
use crate::error::{Error, Result};
use crate::word::Word;

/// The closure properties a DFA can be checked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    PositiveClosed,
    KleeneClosed,
    PositiveOpen,
    KleeneOpen,
    ClopenPositive,
    ClopenKleene,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::PositiveClosed,
        Property::KleeneClosed,
        Property::PositiveOpen,
        Property::KleeneOpen,
        Property::ClopenPositive,
        Property::ClopenKleene,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::PositiveClosed => "pos-closed",
            Property::KleeneClosed => "kleene-closed",
            Property::PositiveOpen => "pos-open",
            Property::KleeneOpen => "kleene-open",
            Property::ClopenPositive => "clopen-pos",
            Property::ClopenKleene => "clopen-kleene",
        }
    }

    pub fn closed(kind: ClosureKind) -> Property {
        match kind {
            ClosureKind::Positive => Property::PositiveClosed,
            ClosureKind::Kleene => Property::KleeneClosed,
        }
    }

    pub fn open(kind: ClosureKind) -> Property {
        match kind {
            ClosureKind::Positive => Property::PositiveOpen,
            ClosureKind::Kleene => Property::KleeneOpen,
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pos-closed" | "positive-closed" => Property::PositiveClosed,
            "kleene-closed" => Property::KleeneClosed,
            "pos-open" | "positive-open" => Property::PositiveOpen,
            "kleene-open" => Property::KleeneOpen,
            "clopen-pos" | "clopen-positive" | "clopen" => Property::ClopenPositive,
            "clopen-kleene" => Property::ClopenKleene,
            other => return Err(Error::InvalidArgument(format!("unknown property `{other}`"))),
        })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Words u, v of the analyzed language whose concatenation is not in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub u: Word,
    pub v: Word,
}

impl Counterexample {
    pub fn uv(&self) -> Word {
        self.u.concat(&self.v)
    }

    /// Three membership runs: u ∈ L, v ∈ L, uv ∉ L.
    pub fn verifies(&self, d: &Dfa) -> bool {
        matches!(
            (d.accepts(&self.u), d.accepts(&self.v), d.accepts(&self.uv())),
            (Ok(true), Ok(true), Ok(false))
        )
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} v={} uv={}", self.u, self.v, self.uv())
    }
}

/// Why a check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// The closedness condition fails for the language.
    NotClosed,
    /// The closedness condition fails for the complement; the certificate
    /// holds u, v ∉ L with uv ∈ L.
    NotOpen,
    /// Kleene-closed fails only because ε ∉ L.
    EpsilonMissing,
    /// Kleene-open fails only because ε ∈ L (the complement lacks ε).
    EpsilonPresent,
}

impl FailureReason {
    pub fn name(self) -> &'static str {
        match self {
            FailureReason::NotClosed => "not-closed",
            FailureReason::NotOpen => "not-open",
            FailureReason::EpsilonMissing => "epsilon-missing",
            FailureReason::EpsilonPresent => "epsilon-present",
        }
    }
}

/// Outcome of [`check_property`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    pub certificate: Option<Counterexample>,
    pub reason: Option<FailureReason>,
}

impl Verdict {
    fn holds(property: Property) -> Self {
        Verdict {
            property,
            holds: true,
            certificate: None,
            reason: None,
        }
    }

    fn fails(property: Property, reason: FailureReason, certificate: Option<Counterexample>) -> Self {
        Verdict {
            property,
            holds: false,
            certificate,
            reason: Some(reason),
        }
    }

    /// Re-checks the certificate against `d` by direct membership runs.
    ///
    /// For open failures the roles flip: u, v ∉ L(d) and uv ∈ L(d).
    pub fn verify(&self, d: &Dfa) -> bool {
        match (&self.certificate, self.reason) {
            (None, _) => true,
            (Some(c), Some(FailureReason::NotOpen)) => c.verifies(&d.complement()),
            (Some(c), _) => c.verifies(d),
        }
    }
}

/// The counterexample automaton together with its state layout.
///
/// States `0..n` mirror the DFA ("flat" states, reading u); state
/// `n + p·n + q` is the pair [p, q] reached after the ε-split.
#[derive(Debug, Clone)]
pub struct CounterexampleNfa {
    pub nfa: Nfa,
    dfa_states: usize,
}

impl CounterexampleNfa {
    pub fn dfa_states(&self) -> usize {
        self.dfa_states
    }

    /// `Some((p, q))` for pair states, `None` for flat states.
    pub fn pair(&self, state: StateId) -> Option<(StateId, StateId)> {
        let n = self.dfa_states;
        (state >= n).then(|| ((state - n) / n, (state - n) % n))
    }

    /// Recovers (u, v) from a state path of the automaton: the position of
    /// the flat-to-pair step is the boundary.
    pub fn split_path(&self, path: &[StateId], word: &Word) -> Option<Counterexample> {
        // path[i] is the state after reading i symbols (ε-steps appear as
        // repeated positions); find the first pair state.
        let consumed = path
            .windows(2)
            .position(|w| self.pair(w[0]).is_none() && self.pair(w[1]).is_some())?;
        Some(Counterexample {
            u: word.prefix(consumed),
            v: word.suffix_from(consumed),
        })
    }
}

/// Builds the NFA-ε on Q ∪ Q×Q accepting {uv : u, v ∈ L, uv ∉ L}.
pub fn build_counterexample_nfa(d: &Dfa) -> CounterexampleNfa {
    let n = d.state_count();
    let k = d.alphabet().len();
    let mut nfa = Nfa::new(d.alphabet().clone());
    for s in 0..n {
        nfa.add_named_state(d.state_name(s).to_string());
    }
    for p in 0..n {
        for q in 0..n {
            let id = nfa.add_named_state(format!("[{},{}]", d.state_name(p), d.state_name(q)));
            nfa.set_final(id, !d.is_final(p) && d.is_final(q));
        }
    }
    let pair = |p: StateId, q: StateId| n + p * n + q;
    nfa.add_initial(d.initial());
    for p in 0..n {
        for a in 0..k {
            nfa.add_move(p, Some(a), d.next(p, a));
        }
        if d.is_final(p) {
            nfa.add_move(p, None, pair(p, d.initial()));
        }
        for q in 0..n {
            for a in 0..k {
                nfa.add_move(pair(p, q), Some(a), pair(d.next(p, a), d.next(q, a)));
            }
        }
    }
    CounterexampleNfa { nfa, dfa_states: n }
}

const NO_PARENT: u32 = u32::MAX;
const EPS_EDGE: u32 = u32::MAX;

/// Shortest counterexample: minimal |uv|, then lexicographically least uv
/// (alphabet order), then minimal |u|.
///
/// Searches the counterexample automaton implicitly, level by level. Nodes
/// discovered by the same word form a group ordered by split position, with
/// the flat node last; expanding groups in order, symbol by symbol, discovers
/// every node first under its least (word, split) key. The first accepting
/// pair discovered is therefore the answer, and the search stays within
/// O(n²·|Σ|) work. Any returned |uv| is at most n² + n − 1.
pub fn shortest_counterexample(d: &Dfa) -> Option<Counterexample> {
    let n = d.state_count();
    let k = d.alphabet().len();
    let q0 = d.initial();
    let total = n + n * n;
    let mut parent = vec![NO_PARENT; total];
    let mut via = vec![NO_PARENT; total];
    let mut seen = vec![false; total];
    let pair = |p: usize, q: usize| n + p * n + q;
    let accepting = |node: usize| {
        let (p, q) = ((node - n) / n, (node - n) % n);
        !d.is_final(p) && d.is_final(q)
    };

    let mut level: Vec<Vec<usize>> = Vec::new();
    {
        let mut group = Vec::new();
        seen[q0] = true;
        if d.is_final(q0) {
            let start = pair(q0, q0);
            seen[start] = true;
            parent[start] = q0 as u32;
            via[start] = EPS_EDGE;
            group.push(start);
        }
        group.push(q0);
        level.push(group);
    }

    let mut found = None;
    'search: while !level.is_empty() {
        let mut next_level = Vec::new();
        for group in &level {
            for a in 0..k {
                let mut child = Vec::new();
                for &node in group {
                    if node < n {
                        let p = d.next(node, a);
                        if seen[p] {
                            continue;
                        }
                        seen[p] = true;
                        parent[p] = node as u32;
                        via[p] = a as u32;
                        if d.is_final(p) {
                            let split = pair(p, q0);
                            if !seen[split] {
                                seen[split] = true;
                                parent[split] = p as u32;
                                via[split] = EPS_EDGE;
                                child.push(split);
                                // (p, q0) with p final is never accepting
                            }
                        }
                        child.push(p);
                    } else {
                        let (p, q) = ((node - n) / n, (node - n) % n);
                        let next = pair(d.next(p, a), d.next(q, a));
                        if seen[next] {
                            continue;
                        }
                        seen[next] = true;
                        parent[next] = node as u32;
                        via[next] = a as u32;
                        if accepting(next) {
                            found = Some(next);
                            break 'search;
                        }
                        child.push(next);
                    }
                }
                if !child.is_empty() {
                    next_level.push(child);
                }
            }
        }
        level = next_level;
    }

    let mut node = found?;
    let mut v = Vec::new();
    let mut u = Vec::new();
    let mut after_split = true;
    while parent[node] != NO_PARENT {
        if via[node] == EPS_EDGE {
            after_split = false;
        } else if after_split {
            v.push(via[node] as usize);
        } else {
            u.push(via[node] as usize);
        }
        node = parent[node] as usize;
    }
    u.reverse();
    v.reverse();
    Some(Counterexample {
        u: d.alphabet().decode(&u),
        v: d.alphabet().decode(&v),
    })
}

fn closed_check(d: &Dfa, kind: ClosureKind, property: Property, reason: FailureReason) -> Verdict {
    if let Some(c) = shortest_counterexample(d) {
        return Verdict::fails(property, reason, Some(c));
    }
    if kind == ClosureKind::Kleene && !d.is_final(d.initial()) {
        let eps_reason = if reason == FailureReason::NotOpen {
            FailureReason::EpsilonPresent
        } else {
            FailureReason::EpsilonMissing
        };
        return Verdict::fails(property, eps_reason, None);
    }
    Verdict::holds(property)
}

/// Decides `property` for L(d), with a certificate when closedness fails.
pub fn check_property(d: &Dfa, property: Property) -> Verdict {
    use ClosureKind::*;
    let closed = |kind| closed_check(d, kind, property, FailureReason::NotClosed);
    let open = |kind| closed_check(&d.complement(), kind, property, FailureReason::NotOpen);
    match property {
        Property::PositiveClosed => closed(Positive),
        Property::KleeneClosed => closed(Kleene),
        Property::PositiveOpen => open(Positive),
        Property::KleeneOpen => open(Kleene),
        Property::ClopenPositive | Property::ClopenKleene => {
            let kind = if property == Property::ClopenPositive {
                Positive
            } else {
                Kleene
            };
            let c = closed(kind);
            if c.holds {
                open(kind)
            } else {
                c
            }
        }
    }
}

pub fn is_closed(d: &Dfa, kind: ClosureKind) -> bool {
    check_property(d, Property::closed(kind)).holds
}

pub fn is_open(d: &Dfa, kind: ClosureKind) -> bool {
    check_property(d, Property::open(kind)).holds
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Config {
    /// States reached while reading u.
    Prefix(Vec<StateId>),
    /// (from the initial states, from the prefix set) while reading v.
    Split(Vec<StateId>, Vec<StateId>),
}

/// Positive-closedness of an NFA language by exploring configurations.
///
/// A configuration is either the state set S reached on u, or after a split
/// at an accepting S the pair (T, U) of sets reached on v from the initial
/// states and from S. A pair with T accepting and U not witnesses u, v ∈ L
/// and uv ∉ L. The exploration is breadth-first with a visited set, so it
/// terminates without the 2²ⁿ + 2ⁿ − 1 length counter a guessing procedure
/// needs; the budget caps the number of configurations.
pub fn check_nfa_closed(a: &Nfa, budget: usize) -> Result<Verdict> {
    let property = Property::PositiveClosed;
    let k = a.alphabet().len();
    let start = a.initial_set();
    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut configs: Vec<Config> = Vec::new();
    // (parent, symbol or None for the split)
    let mut parents: Vec<Option<(usize, Option<usize>)>> = Vec::new();

    let mut insert = |config: Config,
                      from: Option<(usize, Option<usize>)>,
                      configs: &mut Vec<Config>,
                      parents: &mut Vec<Option<(usize, Option<usize>)>>|
     -> Result<Option<usize>> {
        if ids.contains_key(&config) {
            return Ok(None);
        }
        if configs.len() >= budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let id = configs.len();
        ids.insert(config.clone(), id);
        configs.push(config);
        parents.push(from);
        Ok(Some(id))
    };

    insert(Config::Prefix(start.clone()), None, &mut configs, &mut parents)?;
    let mut i = 0;
    let mut found = None;
    'search: while i < configs.len() {
        let current = configs[i].clone();
        match current {
            Config::Prefix(s) => {
                if a.any_final(&s) {
                    let split = Config::Split(start.clone(), s.clone());
                    if let Some(id) = insert(split, Some((i, None)), &mut configs, &mut parents)? {
                        if is_witness(a, &configs[id]) {
                            found = Some(id);
                            break 'search;
                        }
                    }
                }
                for sym in 0..k {
                    let next = Config::Prefix(a.step(&s, sym));
                    insert(next, Some((i, Some(sym))), &mut configs, &mut parents)?;
                }
            }
            Config::Split(t, u) => {
                for sym in 0..k {
                    let next = Config::Split(a.step(&t, sym), a.step(&u, sym));
                    if let Some(id) = insert(next, Some((i, Some(sym))), &mut configs, &mut parents)? {
                        if is_witness(a, &configs[id]) {
                            found = Some(id);
                            break 'search;
                        }
                    }
                }
            }
        }
        i += 1;
    }

    let Some(mut node) = found else {
        return Ok(Verdict::holds(property));
    };
    let (mut u, mut v) = (Vec::new(), Vec::new());
    let mut after_split = true;
    while let Some((p, sym)) = parents[node] {
        match sym {
            None => after_split = false,
            Some(s) if after_split => v.push(s),
            Some(s) => u.push(s),
        }
        node = p;
    }
    u.reverse();
    v.reverse();
    let cert = Counterexample {
        u: a.alphabet().decode(&u),
        v: a.alphabet().decode(&v),
    };
    Ok(Verdict::fails(property, FailureReason::NotClosed, Some(cert)))
}

fn is_witness(a: &Nfa, config: &Config) -> bool {
    match config {
        Config::Split(t, u) => a.any_final(t) && !a.any_final(u),
        Config::Prefix(_) => false,
    }
}

/// Opening of L: complement ∘ closure ∘ complement.
pub fn interior(d: &Dfa, kind: ClosureKind, budget: usize) -> Result<Dfa> {
    let closed = d.complement().to_nfa().closure(kind).determinize(budget)?;
    Ok(closed.complement().minimize())
}
