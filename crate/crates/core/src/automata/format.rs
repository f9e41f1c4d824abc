//! The line-oriented `.aut` automaton format.
//!
//! ```text
//! alphabet: 0 1
//! states: q0 q1 r d
//! initial: q0          # NFAs may list several
//! finals: q0 q1
//! q0 0 q1
//! q1 eps r             # ε-move, NFA only
//! ```
//!
//! A file with ε lines, several initial states or repeated `(state, symbol)`
//! pairs describes an NFA. DFA tables may be partial; missing transitions go
//! to an added sink state.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Dfa, Nfa, StateId};
use crate::error::{Error, Result};
use crate::word::{Alphabet, EPSILON};

/// Either kind of automaton, as read from a file.
#[derive(Debug, Clone)]
pub enum ParsedAutomaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl ParsedAutomaton {
    pub fn into_nfa(self) -> Nfa {
        match self {
            ParsedAutomaton::Dfa(d) => d.to_nfa(),
            ParsedAutomaton::Nfa(n) => n,
        }
    }
}

struct Raw {
    alphabet: Alphabet,
    states: Vec<String>,
    initials: Vec<StateId>,
    finals: Vec<StateId>,
    /// (line, from, symbol or ε, to)
    moves: Vec<(usize, StateId, Option<usize>, StateId)>,
}

fn read(text: &str) -> Result<Raw> {
    let mut alphabet = None;
    let mut states: Option<Vec<String>> = None;
    let mut initials = None;
    let mut finals = None;
    let mut lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, rest)) = line.split_once(':') {
            let slot = match key.trim() {
                "alphabet" => {
                    let a = Alphabet::parse(rest).map_err(|e| Error::parse(line_no, e))?;
                    if a.index_of_str(EPSILON).is_some() {
                        return Err(Error::parse(line_no, "`eps` is reserved"));
                    }
                    if alphabet.replace(a).is_some() {
                        return Err(Error::parse(line_no, "duplicate `alphabet:` line"));
                    }
                    continue;
                }
                "states" => &mut states,
                "initial" => &mut initials,
                "finals" => &mut finals,
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            };
            let items: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if slot.replace(items).is_some() {
                return Err(Error::parse(line_no, format!("duplicate `{}:` line", key.trim())));
            }
        } else {
            lines.push((line_no, line));
        }
    }

    let missing = |what: &str| Error::parse(0, format!("missing `{what}:` line"));
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let states = states.ok_or_else(|| missing("states"))?;
    let initial_names = initials.ok_or_else(|| missing("initial"))?;
    let final_names = finals.ok_or_else(|| missing("finals"))?;

    let mut index = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(Error::parse(0, format!("duplicate state `{s}`")));
        }
    }
    let lookup = |line: usize, name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("unknown state `{name}`")))
    };
    let initials = initial_names.iter().map(|n| lookup(0, n)).collect::<Result<Vec<_>>>()?;
    if initials.is_empty() {
        return Err(Error::parse(0, "no initial state"));
    }
    let finals = final_names.iter().map(|n| lookup(0, n)).collect::<Result<Vec<_>>>()?;

    let mut moves = Vec::with_capacity(lines.len());
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [from, sym, to] = parts[..] else {
            return Err(Error::parse(line_no, "expected `state symbol state`"));
        };
        let symbol = if sym == EPSILON {
            None
        } else {
            Some(
                alphabet
                    .index_of_str(sym)
                    .ok_or_else(|| Error::parse(line_no, format!("unknown symbol `{sym}`")))?,
            )
        };
        moves.push((line_no, lookup(line_no, from)?, symbol, lookup(line_no, to)?));
    }
    Ok(Raw {
        alphabet,
        states,
        initials,
        finals,
        moves,
    })
}

fn is_nfa(raw: &Raw) -> bool {
    let mut seen = std::collections::HashSet::new();
    raw.initials.len() > 1
        || raw
            .moves
            .iter()
            .any(|&(_, from, sym, _)| sym.is_none() || !seen.insert((from, sym)))
}

fn to_nfa(raw: Raw) -> Nfa {
    let mut nfa = Nfa::new(raw.alphabet);
    for name in raw.states {
        nfa.add_named_state(name);
    }
    for i in raw.initials {
        nfa.add_initial(i);
    }
    for f in raw.finals {
        nfa.set_final(f, true);
    }
    for (_, from, sym, to) in raw.moves {
        nfa.add_move(from, sym, to);
    }
    nfa
}

fn to_dfa(raw: Raw) -> Result<Dfa> {
    let k = raw.alphabet.len();
    let mut names = raw.states;
    let mut table: Vec<Vec<Option<StateId>>> = vec![vec![None; k]; names.len()];
    for (line, from, sym, to) in raw.moves {
        let Some(a) = sym else {
            return Err(Error::parse(line, "ε-move in a DFA"));
        };
        if table[from][a].replace(to).is_some() {
            return Err(Error::parse(line, "nondeterministic transition in a DFA"));
        }
    }
    if raw.initials.len() != 1 {
        return Err(Error::parse(0, "a DFA has exactly one initial state"));
    }
    let partial = table.iter().flatten().any(Option::is_none);
    let table: Vec<Vec<StateId>> = if partial {
        let sink = names.len();
        let mut name = "sink".to_string();
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
        table
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .chain(std::iter::once(vec![sink; k]))
            .collect()
    } else {
        table
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap).collect())
            .collect()
    };
    Dfa::new(raw.alphabet, names, raw.initials[0], raw.finals, table)
}

/// Reads a file as a DFA when it is deterministic, otherwise as an NFA.
pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let raw = read(text)?;
    Ok(if is_nfa(&raw) {
        ParsedAutomaton::Nfa(to_nfa(raw))
    } else {
        ParsedAutomaton::Dfa(to_dfa(raw)?)
    })
}

impl Dfa {
    /// Parses a `.aut` text, rejecting ε-moves and nondeterminism.
    pub fn from_aut(text: &str) -> Result<Dfa> {
        to_dfa(read(text)?)
    }

    /// Serializes every transition, states and symbols in declared order.
    pub fn to_aut(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alphabet: {}", self.alphabet());
        let _ = writeln!(out, "states: {}", self.state_names().join(" "));
        let _ = writeln!(out, "initial: {}", self.state_name(self.initial()));
        let finals: Vec<&str> = self.finals().map(|f| self.state_name(f)).collect();
        let _ = writeln!(out, "finals: {}", finals.join(" "));
        for s in 0..self.state_count() {
            for (a, sym) in self.alphabet().symbols().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{} {} {}",
                    self.state_name(s),
                    sym,
                    self.state_name(self.next(s, a))
                );
            }
        }
        fix_empty_list(out)
    }
}

impl Nfa {
    /// Parses any `.aut` text.
    pub fn from_aut(text: &str) -> Result<Nfa> {
        Ok(to_nfa(read(text)?))
    }

    pub fn to_aut(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alphabet: {}", self.alphabet());
        let _ = writeln!(out, "states: {}", self.state_names().join(" "));
        let initials: Vec<&str> = self.initials().iter().map(|&i| self.state_name(i)).collect();
        let _ = writeln!(out, "initial: {}", initials.join(" "));
        let finals: Vec<&str> = (0..self.state_count())
            .filter(|&s| self.is_final(s))
            .map(|s| self.state_name(s))
            .collect();
        let _ = writeln!(out, "finals: {}", finals.join(" "));
        for s in 0..self.state_count() {
            for (a, sym) in self.alphabet().symbols().iter().enumerate() {
                for &t in self.targets(s, a) {
                    let _ = writeln!(out, "{} {} {}", self.state_name(s), sym, self.state_name(t));
                }
            }
            for &t in self.epsilon_targets(s) {
                let _ = writeln!(out, "{} {EPSILON} {}", self.state_name(s), self.state_name(t));
            }
        }
        fix_empty_list(out)
    }
}

/// `finals: ` with nothing after it is written without the trailing space.
fn fix_empty_list(out: String) -> String {
    out.replace("finals: \n", "finals:\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    const SAMPLE: &str = "\
# example
alphabet: 0 1
states: q0 q1 r d
initial: q0
finals: q0 q1
q0 0 q1
q0 1 d
q1 0 r   # comment
q1 1 q1
r 0 d
r 1 d
d 0 d
d 1 d
";

    #[test]
    fn parses_dfa_and_round_trips() {
        let d = Dfa::from_aut(SAMPLE).unwrap();
        assert_eq!(d.state_count(), 4);
        assert!(d.accepts(&Word::parse("0.1.1").unwrap()).unwrap());
        let text = d.to_aut();
        assert_eq!(Dfa::from_aut(&text).unwrap().to_aut(), text);
    }

    #[test]
    fn completes_partial_tables() {
        let d = Dfa::from_aut("alphabet: a b\nstates: s\ninitial: s\nfinals: s\ns a s\n").unwrap();
        assert_eq!(d.state_count(), 2);
        assert_eq!(d.state_name(1), "sink");
        assert!(!d.accepts(&Word::from_letters("ab")).unwrap());
    }

    #[test]
    fn classifies_nfa_files() {
        let text = "alphabet: a\nstates: s t\ninitial: s\nfinals: t\ns a s\ns a t\n";
        assert!(matches!(parse_automaton(text).unwrap(), ParsedAutomaton::Nfa(_)));
        assert!(Dfa::from_aut(text).is_err());
        let eps = "alphabet: a\nstates: s t\ninitial: s\nfinals: t\ns eps t\n";
        assert!(Dfa::from_aut(eps).is_err());
        let nfa = Nfa::from_aut(eps).unwrap();
        assert!(nfa.accepts(&Word::epsilon()).unwrap());
        assert_eq!(Nfa::from_aut(&nfa.to_aut()).unwrap(), nfa);
    }

    #[test]
    fn reports_line_numbers() {
        let err = Dfa::from_aut("alphabet: a\nstates: s\ninitial: s\nfinals:\ns a t\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 5,
                message: "unknown state `t`".into()
            }
        );
        assert!(Dfa::from_aut("states: s\n").is_err());
    }
}
