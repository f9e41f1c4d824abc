//! The witness family with quadratic shortest counterexamples, and seeded
//! random instances.
//!
//! All randomness comes from [`SplitMix64`], so every instance is a pure
//! function of its parameters and seed and can be regenerated elsewhere.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Steele, Lea and Flood's SplitMix64.
///
/// ```text
/// state += 0x9E3779B97F4A7C15
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// return z ^ (z >> 31)
/// ```
///
/// Arithmetic wraps mod 2⁶⁴. `below(n)` is `next() % n`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish in `0..n`; the modulo bias is below 2⁻⁵⁰ for the small
    /// ranges used here.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        (self.next_u64() % n as u64) as usize
    }

    /// Inclusive range.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `p`, drawn as `below(denom) < numer`.
    pub fn chance(&mut self, p: Ratio<u64>) -> bool {
        (self.next_u64() % p.denom()) < *p.numer()
    }
}

/// Seed for trial `index` of a run seeded with `seed`: the first output of
/// SplitMix64 started at `seed + index·0x9E3779B97F4A7C15`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::new(seed.wrapping_add(index.wrapping_mul(GOLDEN))).next_u64()
}

/// M_n or M′_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// The DFA whose shortest counterexample has length n² + 2n + 2.
    M,
    /// Its complement, given directly by the transition table.
    MPrime,
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" | "M" => Ok(WitnessKind::M),
            "mprime" | "m'" | "M'" => Ok(WitnessKind::MPrime),
            other => Err(Error::InvalidArgument(format!("unknown witness `{other}`"))),
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::M => "m",
            WitnessKind::MPrime => "mprime",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessSpec {
    pub n: usize,
    pub which: WitnessKind,
}

/// The 2n + 5 state witness over {0, 1}.
///
/// States are `q0..qn r p0..pn s d` in that order. M′_n accepts in the q's,
/// the p's and s; on 0 the q₁..qₙ cycle and the p's cycle, on 1 the chain
/// q₀ → q₁, qₙ → r → p₀, pₙ → s, q₁..qₙ₋₁ → s. Everything else goes to d.
pub fn witness_automaton(spec: WitnessSpec) -> Result<Dfa> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("witness needs n >= 2, got {n}")));
    }
    let q = |i: usize| i;
    let r = n + 1;
    let p = |i: usize| n + 2 + i;
    let s = 2 * n + 3;
    let d = 2 * n + 4;

    let mut names: Vec<String> = (0..=n).map(|i| format!("q{i}")).collect();
    names.push("r".into());
    names.extend((0..=n).map(|i| format!("p{i}")));
    names.push("s".into());
    names.push("d".into());

    let mut table = vec![vec![d, d]; 2 * n + 5];
    table[q(0)][1] = q(1);
    for i in 1..n {
        table[q(i)] = vec![q(i + 1), s];
    }
    table[q(n)] = vec![q(1), r];
    table[r][1] = p(0);
    for i in 0..n {
        table[p(i)][0] = p(i + 1);
    }
    table[p(n)] = vec![p(0), s];

    let mut finals: Vec<usize> = (0..=n).map(q).chain((0..=n).map(p)).collect();
    finals.push(s);
    let m_prime = Dfa::new(Alphabet::from_letters("01"), names, q(0), finals, table)?;
    Ok(match spec.which {
        WitnessKind::MPrime => m_prime,
        WitnessKind::M => m_prime.complement(),
    })
}

/// A uniformly random total DFA with initial state 0.
///
/// Draw order: for each state in turn, its accepting flag (`chance`), then
/// one target per symbol in alphabet order (`below(states)`).
pub fn random_dfa(states: usize, alphabet: &Alphabet, accept_prob: Ratio<u64>, seed: u64) -> Result<Dfa> {
    if states == 0 {
        return Err(Error::InvalidArgument("a DFA needs at least one state".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut finals = Vec::new();
    let mut table = Vec::with_capacity(states);
    for s in 0..states {
        if rng.chance(accept_prob) {
            finals.push(s);
        }
        table.push((0..alphabet.len()).map(|_| rng.below(states)).collect());
    }
    Dfa::from_table(alphabet.clone(), 0, finals, table)
}

/// Probabilities for [`random_nfa`].
#[derive(Debug, Clone, Copy)]
pub struct NfaShape {
    pub states: usize,
    pub move_prob: Ratio<u64>,
    pub epsilon_prob: Ratio<u64>,
    pub accept_prob: Ratio<u64>,
}

/// A random NFA with initial state 0.
///
/// Draw order per state s: accepting flag, then for each symbol and target
/// t a move s→t, then for each t ≠ s an ε-move.
pub fn random_nfa(shape: NfaShape, alphabet: &Alphabet, seed: u64) -> Result<Nfa> {
    if shape.states == 0 {
        return Err(Error::InvalidArgument("an NFA needs at least one state".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut nfa = Nfa::new(alphabet.clone());
    for _ in 0..shape.states {
        nfa.add_state();
    }
    nfa.add_initial(0);
    for s in 0..shape.states {
        let accepting = rng.chance(shape.accept_prob);
        nfa.set_final(s, accepting);
        for a in 0..alphabet.len() {
            for t in 0..shape.states {
                if rng.chance(shape.move_prob) {
                    nfa.add_move(s, Some(a), t);
                }
            }
        }
        for t in 0..shape.states {
            if t != s && rng.chance(shape.epsilon_prob) {
                nfa.add_move(s, None, t);
            }
        }
    }
    Ok(nfa)
}

/// `count` distinct non-empty words of length ≤ `max_len`, in shortlex order.
///
/// Each draw picks a length with `between(1, max_len)`, then its symbols
/// with `below(k)`; repeats are redrawn.
pub fn random_finite_language(max_len: usize, count: usize, alphabet: &Alphabet, seed: u64) -> Result<Vec<Word>> {
    if max_len == 0 || alphabet.is_empty() {
        return Err(Error::InvalidArgument(
            "need max_len >= 1 and a non-empty alphabet".into(),
        ));
    }
    let k = alphabet.len() as u128;
    let available: u128 = (1..=max_len as u32)
        .map(|l| k.saturating_pow(l))
        .fold(0, u128::saturating_add);
    if count as u128 > available {
        return Err(Error::InvalidArgument(format!(
            "{count} distinct words requested, only {available} exist"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut chosen: BTreeSet<Vec<usize>> = BTreeSet::new();
    while chosen.len() < count {
        let len = rng.between(1, max_len);
        chosen.insert((0..len).map(|_| rng.below(alphabet.len())).collect());
    }
    let mut out: Vec<Word> = chosen.iter().map(|w| alphabet.decode(w)).collect();
    out.sort_by(|a, b| alphabet.cmp_shortlex(a, b));
    Ok(out)
}

/// {ε} ∪ the non-empty prefixes of `w`, shortest first.
pub fn prefix_language(w: &Word) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok((0..=w.len()).map(|i| w.prefix(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{check_property, shortest_counterexample, Property};

    fn bits(s: &str) -> Word {
        Word::from_letters(s)
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0, as published with the algorithm
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn witness_shape() {
        let m5 = witness_automaton(WitnessSpec {
            n: 5,
            which: WitnessKind::MPrime,
        })
        .unwrap();
        assert_eq!(m5.state_count(), 15);
        for n in 2..=6 {
            let d = witness_automaton(WitnessSpec {
                n,
                which: WitnessKind::MPrime,
            })
            .unwrap();
            let (qn, r) = (d.state_named(&format!("q{n}")).unwrap(), d.state_named("r").unwrap());
            assert_eq!(d.next(qn, 1), r);
            assert_eq!(d.state_name(d.next(r, 0)), "d");
            let text = d.to_aut();
            assert_eq!(Dfa::from_aut(&text).unwrap().to_aut(), text);
        }
        assert!(!m5.accepts(&bits("100001")).unwrap());
        assert_eq!(m5.shortest_accepted(), Some(Word::epsilon()));
        assert!(witness_automaton(WitnessSpec {
            n: 1,
            which: WitnessKind::M
        })
        .is_err());
    }

    #[test]
    fn witness_m2_counterexample() {
        let m2 = witness_automaton(WitnessSpec {
            n: 2,
            which: WitnessKind::M,
        })
        .unwrap();
        let c = shortest_counterexample(&m2).unwrap();
        assert_eq!(
            (c.u.to_string(), c.v.to_string()),
            ("1.0.1".into(), "1.0.0.0.0.0.1".into())
        );
        assert!(!check_property(&m2, Property::PositiveClosed).holds);
    }

    #[test]
    fn random_dfa_extremes() {
        let ab = Alphabet::from_letters("ab");
        let a = random_dfa(4, &ab, Ratio::new(1, 2), 9).unwrap();
        assert_eq!(a.to_aut(), random_dfa(4, &ab, Ratio::new(1, 2), 9).unwrap().to_aut());
        assert!(random_dfa(4, &ab, Ratio::from_integer(1), 3).unwrap().is_universal());
        assert!(random_dfa(4, &ab, Ratio::from_integer(0), 3).unwrap().is_empty());
    }

    #[test]
    fn random_finite_languages() {
        let ab = Alphabet::from_letters("ab");
        let l = random_finite_language(1, 2, &ab, 5).unwrap();
        assert_eq!(l, vec![bits("a"), bits("b")]);
        let l = random_finite_language(3, 6, &ab, 11).unwrap();
        assert_eq!(l, random_finite_language(3, 6, &ab, 11).unwrap());
        assert!(l.iter().all(|w| (1..=3).contains(&w.len())));
        assert!(random_finite_language(1, 3, &ab, 0).is_err());
    }

    #[test]
    fn prefixes() {
        let p = prefix_language(&bits("ab")).unwrap();
        assert_eq!(p, vec![Word::epsilon(), bits("a"), bits("ab")]);
        assert_eq!(prefix_language(&bits("a")).unwrap().len(), 2);
        assert!(prefix_language(&Word::epsilon()).is_err());
    }
}
