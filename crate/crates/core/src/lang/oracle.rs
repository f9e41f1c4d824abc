//! Bounded brute-force closedness and openness checks.
//!
//! Membership of every word up to `max_len` is tabulated once, then the
//! defining conditions are checked directly: closed means u, v ∈ L implies
//! uv ∈ L, open means every factorization uv of a member has u or v in L
//! (u, v non-empty in both). A passing check is evidence up to the bound.

use std::fmt;

use rayon::prelude::*;

use super::LangExpr;
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Default cap on tabulated words.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 1 << 24;

/// Which bounded condition to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleProperty {
    Closed,
    Open,
}

impl std::str::FromStr for OracleProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(OracleProperty::Closed),
            "open" => Ok(OracleProperty::Open),
            other => Err(Error::InvalidArgument(format!("unknown oracle check `{other}`"))),
        }
    }
}

/// A language to tabulate.
pub enum Source<'a> {
    Expr(&'a LangExpr, &'a Alphabet),
    Dfa(&'a Dfa),
    Predicate(&'a Alphabet, &'a (dyn Fn(&[Symbol]) -> bool + Sync)),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleViolation {
    /// u, v ∈ L but uv ∉ L.
    Closed { u: Word, v: Word },
    /// w ∈ L, and neither w[..split] nor w[split..] is in L.
    Open { w: Word, split: usize },
}

impl fmt::Display for OracleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleViolation::Closed { u, v } => write!(f, "u={u} v={v} uv={}", u.concat(v)),
            OracleViolation::Open { w, split } => write!(
                f,
                "w={w} split={split} u={} v={}",
                w.prefix(*split),
                w.suffix_from(*split)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedVerdict {
    pub property: OracleProperty,
    pub max_len: usize,
    pub violation: Option<OracleViolation>,
}

impl BoundedVerdict {
    /// No violation up to `max_len`.
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "OK(bounded {})", self.max_len),
            Some(v) => write!(f, "FAIL(bounded {}) {v}", self.max_len),
        }
    }
}

/// Membership bits for all words of length ≤ `max_len`.
///
/// A word of length `l` whose symbol indices read as a base-k number `c`
/// sits at `offsets[l] + c`, so numeric order within a length is
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct MembershipTable {
    alphabet: Alphabet,
    max_len: usize,
    offsets: Vec<usize>,
    bits: Vec<bool>,
}

fn layout(k: usize, max_len: usize, budget: usize) -> Result<Vec<usize>> {
    let mut offsets = Vec::with_capacity(max_len + 2);
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        offsets.push(total as usize);
        total += layer;
        if total > budget as u128 {
            let needed = (0..=max_len as u32).map(|l| (k as u128).saturating_pow(l)).sum();
            return Err(Error::EnumerationBudget {
                max_len,
                needed,
                budget,
            });
        }
        layer *= k as u128;
    }
    offsets.push(total as usize);
    Ok(offsets)
}

impl MembershipTable {
    pub fn build(source: &Source<'_>, max_len: usize, budget: usize) -> Result<Self> {
        match source {
            Source::Dfa(d) => Self::from_dfa(d, max_len, budget),
            Source::Expr(e, a) => {
                e.validate(a)?;
                Self::from_predicate(a, max_len, budget, &|w| e.member(w))
            }
            Source::Predicate(a, p) => Self::from_predicate(a, max_len, budget, p),
        }
    }

    pub fn from_predicate(
        alphabet: &Alphabet,
        max_len: usize,
        budget: usize,
        member: &(dyn Fn(&[Symbol]) -> bool + Sync),
    ) -> Result<Self> {
        let k = alphabet.len();
        let offsets = layout(k, max_len, budget)?;
        let mut bits = vec![false; offsets[max_len + 1]];
        for len in 0..=max_len {
            let (lo, hi) = (offsets[len], offsets[len + 1]);
            bits[lo..hi].par_iter_mut().enumerate().for_each_init(
                || Vec::with_capacity(len),
                |buf, (code, bit)| {
                    buf.clear();
                    let mut c = code;
                    for _ in 0..len {
                        buf.push(alphabet.symbol(c % k).clone());
                        c /= k;
                    }
                    buf.reverse();
                    *bit = member(buf);
                },
            );
        }
        Ok(MembershipTable {
            alphabet: alphabet.clone(),
            max_len,
            offsets,
            bits,
        })
    }

    /// Tabulates by extending the run of each word's parent, one step per word.
    pub fn from_dfa(d: &Dfa, max_len: usize, budget: usize) -> Result<Self> {
        let k = d.alphabet().len();
        let offsets = layout(k, max_len, budget)?;
        let mut states = vec![d.initial()];
        let mut bits = Vec::with_capacity(offsets[max_len + 1]);
        bits.push(d.is_final(d.initial()));
        for _ in 1..=max_len {
            let next: Vec<usize> = states.iter().flat_map(|&s| (0..k).map(move |a| d.next(s, a))).collect();
            bits.extend(next.iter().map(|&s| d.is_final(s)));
            states = next;
        }
        Ok(MembershipTable {
            alphabet: d.alphabet().clone(),
            max_len,
            offsets,
            bits,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Pointwise complement.
    pub fn complement(&self) -> Self {
        MembershipTable {
            bits: self.bits.iter().map(|b| !b).collect(),
            ..self.clone()
        }
    }

    fn at(&self, len: usize, code: usize) -> bool {
        self.bits[self.offsets[len] + code]
    }

    pub fn contains(&self, w: &Word) -> Result<Option<bool>> {
        if w.len() > self.max_len {
            return Ok(None);
        }
        let code = self
            .alphabet
            .encode(w)?
            .into_iter()
            .fold(0, |c, a| c * self.alphabet.len() + a);
        Ok(Some(self.at(w.len(), code)))
    }

    fn decode(&self, len: usize, mut code: usize) -> Word {
        let k = self.alphabet.len();
        let mut idx = vec![0; len];
        for slot in idx.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        self.alphabet.decode(&idx)
    }

    /// First split of the word (`len`, `code`) violating `property`, if any.
    fn violating_split(&self, property: OracleProperty, len: usize, code: usize) -> Option<usize> {
        let member = self.at(len, code);
        let want_member = property == OracleProperty::Open;
        if member != want_member {
            return None;
        }
        let k = self.alphabet.len();
        let mut pow = 1usize;
        // split i: prefix of length len - j, suffix of length j, j = 1..len-1
        let mut splits = Vec::with_capacity(len.saturating_sub(1));
        for j in 1..len {
            pow *= k;
            splits.push((len - j, j, code / pow, code % pow));
        }
        splits.reverse();
        splits.into_iter().find_map(|(i, j, pre, suf)| {
            let (u, v) = (self.at(i, pre), self.at(j, suf));
            let bad = match property {
                OracleProperty::Closed => u && v,
                OracleProperty::Open => !u && !v,
            };
            bad.then_some(i)
        })
    }

    /// First violation in (length, lexicographic, split) order.
    pub fn check(&self, property: OracleProperty) -> BoundedVerdict {
        let mut violation = None;
        for len in 2..=self.max_len {
            let count = self.offsets[len + 1] - self.offsets[len];
            let found = (0..count)
                .into_par_iter()
                .find_map_first(|code| self.violating_split(property, len, code).map(|i| (code, i)));
            if let Some((code, split)) = found {
                let w = self.decode(len, code);
                violation = Some(match property {
                    OracleProperty::Closed => OracleViolation::Closed {
                        u: w.prefix(split),
                        v: w.suffix_from(split),
                    },
                    OracleProperty::Open => OracleViolation::Open { w, split },
                });
                break;
            }
        }
        BoundedVerdict {
            property,
            max_len: self.max_len,
            violation,
        }
    }
}

/// Checks `property` for all words of length ≤ `max_len`.
pub fn oracle_check(source: &Source<'_>, property: OracleProperty, max_len: usize) -> Result<BoundedVerdict> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    Ok(MembershipTable::build(source, max_len, DEFAULT_ENUMERATION_BUDGET)?.check(property))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_expr;

    fn ab() -> Alphabet {
        Alphabet::from_letters("ab")
    }

    #[test]
    fn expression_and_dfa_tables_agree() {
        let a = ab();
        let e = parse_expr("(freq a < 1/2)").unwrap();
        let t = MembershipTable::build(&Source::Expr(&e, &a), 6, 1000).unwrap();
        for w in a.words_up_to(6) {
            assert_eq!(t.contains(&w).unwrap(), Some(e.contains(&w)));
        }
        let words = [Word::from_letters("ab"), Word::from_letters("b")];
        let d = Dfa::from_words(a.clone(), &words).unwrap();
        let t = MembershipTable::from_dfa(&d, 4, 1000).unwrap();
        for w in a.words_up_to(4) {
            assert_eq!(t.contains(&w).unwrap(), Some(d.accepts(&w).unwrap()));
        }
    }

    #[test]
    fn equal_frequency_is_closed_not_open() {
        let a = ab();
        let e = parse_expr("(freq a = 1/2)").unwrap();
        let src = Source::Expr(&e, &a);
        assert!(oracle_check(&src, OracleProperty::Closed, 8).unwrap().holds());
        let open = oracle_check(&src, OracleProperty::Open, 4).unwrap();
        assert_eq!(
            open.violation,
            Some(OracleViolation::Open {
                w: Word::from_letters("ab"),
                split: 1
            })
        );
        assert_eq!(open.to_string(), "FAIL(bounded 4) w=a.b split=1 u=a v=b");
    }

    #[test]
    fn budget_is_enforced() {
        let a = ab();
        let e = parse_expr("(sig+ a)").unwrap();
        let err = MembershipTable::build(&Source::Expr(&e, &a), 10, 100).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudget { needed: 2047, .. }));
        assert!(oracle_check(&Source::Expr(&e, &a), OracleProperty::Closed, 0).is_err());
    }

    #[test]
    fn predicate_source() {
        let a = ab();
        let even = |w: &[Symbol]| w.len().is_multiple_of(2);
        let v = oracle_check(&Source::Predicate(&a, &even), OracleProperty::Closed, 6).unwrap();
        assert_eq!(v.to_string(), "OK(bounded 6)");
        let odd = |w: &[Symbol]| w.len() % 2 == 1;
        let v = oracle_check(&Source::Predicate(&a, &odd), OracleProperty::Closed, 6).unwrap();
        assert_eq!(v.to_string(), "FAIL(bounded 6) u=a v=a uv=a.a");
    }
}
