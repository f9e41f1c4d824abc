//! Separating words by clopen and open languages.
//!
//! [`separate_clopen`] follows the inductive construction for non-commuting
//! words: disjoint symbol sets give a sub-alphabet plus language, different
//! relative frequencies of a common symbol give a frequency language, and
//! equal frequencies λ = m/n descend to words over length-n blocks.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::combinatorics::{commutes, power_exponent};
use crate::error::{Error, Result};
use crate::lang::{Cmp, Frequency, LangExpr};
use crate::word::{Alphabet, Symbol, Word};

/// One level of the recursive construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationStep {
    /// Σ_u ∩ Σ_v = ∅; the level's answer is Σ_u⁺.
    DisjointAlphabets {
        u: Word,
        v: Word,
        symbols: BTreeSet<Symbol>,
    },
    /// λ_u ≠ λ_v for `symbol`; the answer is {w : |w|_a ≥ λ_u|w|} or ≤.
    FreqSplit {
        u: Word,
        v: Word,
        symbol: Symbol,
        lambda_u: Frequency,
        lambda_v: Frequency,
    },
    /// λ_u = λ_v = λ with denominator n; continue on length-n blocks.
    BlockDescent {
        u: Word,
        v: Word,
        symbol: Symbol,
        lambda: Frequency,
        n: usize,
    },
}

/// The steps taken, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeparationTrace {
    pub steps: Vec<SeparationStep>,
}

impl SeparationTrace {
    /// Rebuilds the separator from the steps alone.
    pub fn replay(&self) -> Result<LangExpr> {
        let bad = || Error::InvalidArgument("malformed separation trace".into());
        let (last, descents) = self.steps.split_last().ok_or_else(bad)?;
        let mut expr = match last {
            SeparationStep::DisjointAlphabets { symbols, .. } => LangExpr::sigma_plus(symbols.iter().cloned())?,
            SeparationStep::FreqSplit {
                symbol,
                lambda_u,
                lambda_v,
                ..
            } => {
                let cmp = if lambda_u > lambda_v { Cmp::Ge } else { Cmp::Le };
                LangExpr::freq(symbol.clone(), cmp, *lambda_u)?
            }
            SeparationStep::BlockDescent { .. } => return Err(bad()),
        };
        for step in descents.iter().rev() {
            let SeparationStep::BlockDescent { symbol, lambda, n, .. } = step else {
                return Err(bad());
            };
            expr = descent_expr(expr, symbol, *lambda, *n)?;
        }
        Ok(expr)
    }
}

impl fmt::Display for SeparationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (depth, step) in self.steps.iter().enumerate() {
            let pad = "  ".repeat(depth);
            match step {
                SeparationStep::DisjointAlphabets { u, v, symbols } => {
                    let syms: Vec<String> = symbols.iter().map(Symbol::to_string).collect();
                    writeln!(f, "{pad}disjoint-alphabets u={u} v={v} gamma={{{}}}", syms.join(","))?
                }
                SeparationStep::FreqSplit {
                    u,
                    v,
                    symbol,
                    lambda_u,
                    lambda_v,
                } => writeln!(
                    f,
                    "{pad}freq-split u={u} v={v} symbol={symbol} lambda_u={lambda_u} lambda_v={lambda_v}"
                )?,
                SeparationStep::BlockDescent {
                    u,
                    v,
                    symbol,
                    lambda,
                    n,
                } => writeln!(
                    f,
                    "{pad}block-descent u={u} v={v} symbol={symbol} lambda={lambda} n={n}"
                )?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub expr: LangExpr,
    pub trace: SeparationTrace,
}

/// (φ(L) ∩ A^=) ∪ A^<
fn descent_expr(inner: LangExpr, symbol: &Symbol, lambda: Frequency, n: usize) -> Result<LangExpr> {
    Ok(LangExpr::union(
        LangExpr::intersect(
            LangExpr::image(n, inner)?,
            LangExpr::freq(symbol.clone(), Cmp::Eq, lambda)?,
        ),
        LangExpr::freq(symbol.clone(), Cmp::Lt, lambda)?,
    ))
}

fn check_words(u: &Word, v: &Word, alphabet: &Alphabet) -> Result<()> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    alphabet.encode(u)?;
    alphabet.encode(v)?;
    Ok(())
}

fn frequency(w: &Word, a: &Symbol) -> Frequency {
    Ratio::new(w.count(a) as u64, w.len() as u64)
}

/// A clopen language containing `u` but not `v`.
///
/// Among common symbols the one with the largest |λ_u − λ_v| is used, ties
/// going to the earlier symbol in `alphabet`. Block alphabets are ordered by
/// the lexicographic order of the blocks' spellings.
pub fn separate_clopen(u: &Word, v: &Word, alphabet: &Alphabet) -> Result<Separation> {
    check_words(u, v, alphabet)?;
    if commutes(u, v) {
        return Err(Error::Commute {
            u: u.to_string(),
            v: v.to_string(),
        });
    }
    let mut trace = SeparationTrace::default();
    let expr = separate_level(u, v, alphabet.symbols(), &mut trace)?;
    Ok(Separation { expr, trace })
}

fn separate_level(u: &Word, v: &Word, order: &[Symbol], trace: &mut SeparationTrace) -> Result<LangExpr> {
    let in_u: BTreeSet<&Symbol> = u.symbols().iter().collect();
    let in_v: BTreeSet<&Symbol> = v.symbols().iter().collect();
    let common: Vec<&Symbol> = order.iter().filter(|s| in_u.contains(s) && in_v.contains(s)).collect();

    if common.is_empty() {
        let symbols: BTreeSet<Symbol> = in_u.into_iter().cloned().collect();
        trace.steps.push(SeparationStep::DisjointAlphabets {
            u: u.clone(),
            v: v.clone(),
            symbols: symbols.clone(),
        });
        return LangExpr::sigma_plus(symbols);
    }

    let gap = |a: &Symbol| {
        let (lu, lv) = (frequency(u, a), frequency(v, a));
        if lu > lv {
            lu - lv
        } else {
            lv - lu
        }
    };
    let mut best = common[0];
    for &a in &common[1..] {
        if gap(a) > gap(best) {
            best = a;
        }
    }
    let (lu, lv) = (frequency(u, best), frequency(v, best));
    if lu != lv {
        trace.steps.push(SeparationStep::FreqSplit {
            u: u.clone(),
            v: v.clone(),
            symbol: best.clone(),
            lambda_u: lu,
            lambda_v: lv,
        });
        let cmp = if lu > lv { Cmp::Ge } else { Cmp::Le };
        return LangExpr::freq(best.clone(), cmp, lu);
    }

    // λ = 1 would make both words powers of `best`, and they do not commute.
    let n = *lu.denom() as usize;
    debug_assert!(n >= 2);
    trace.steps.push(SeparationStep::BlockDescent {
        u: u.clone(),
        v: v.clone(),
        symbol: best.clone(),
        lambda: lu,
        n,
    });
    let blocks = |w: &Word| -> Word { w.symbols().chunks(n).map(Symbol::block).collect() };
    let (p, q) = (blocks(u), blocks(v));

    let rank: std::collections::HashMap<&Symbol, usize> = order.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut block_order: Vec<(Vec<usize>, Symbol)> = p
        .symbols()
        .iter()
        .chain(q.symbols())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|b| {
            let key = b.block_parts().unwrap_or_default().iter().map(|s| rank[s]).collect();
            (key, b.clone())
        })
        .collect();
    block_order.sort();
    let block_order: Vec<Symbol> = block_order.into_iter().map(|(_, s)| s).collect();

    let inner = separate_level(&p, &q, &block_order, trace)?;
    descent_expr(inner, best, lu, n)
}

/// A finite open language containing `u` and disjoint from {v}⁺:
/// {x ∈ Σ⁺ : |x| ≤ |u|, x ∉ {v}⁺}, in shortlex order.
pub fn separate_open(u: &Word, v: &Word, alphabet: &Alphabet) -> Result<Vec<Word>> {
    check_words(u, v, alphabet)?;
    if power_exponent(u, v)?.is_some() {
        return Err(Error::Power {
            u: u.to_string(),
            v: v.to_string(),
        });
    }
    let mut out = Vec::new();
    for len in 1..=u.len() {
        for x in alphabet.words_of_len(len) {
            if power_exponent(&x, v)?.is_none() {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Which input a distinguishing language contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contains {
    U,
    V,
}

/// Pref(w) for the shorter of `u`, `v`, or the lexicographically smaller
/// when lengths are equal. Returned prefixes run from ε to w.
pub fn distinguish_open(u: &Word, v: &Word, alphabet: &Alphabet) -> Result<(Vec<Word>, Contains)> {
    check_words(u, v, alphabet)?;
    if u == v {
        return Err(Error::EqualWords);
    }
    let pick_u = match u.len().cmp(&v.len()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => alphabet.cmp_lex(u, v).is_lt(),
    };
    let (w, which) = if pick_u { (u, Contains::U) } else { (v, Contains::V) };
    Ok(((0..=w.len()).map(|i| w.prefix(i)).collect(), which))
}

/// Disjoint finite open languages L ∋ u and M ∋ v cut from the clopen
/// separator K: the non-empty words of K up to |u| and of Kᶜ up to |v|.
pub fn separate_open_pair(u: &Word, v: &Word, alphabet: &Alphabet) -> Result<(Vec<Word>, Vec<Word>)> {
    let k = separate_clopen(u, v, alphabet)?.expr;
    let pick = |max: usize, want: bool| -> Vec<Word> {
        (1..=max)
            .flat_map(|len| alphabet.words_of_len(len))
            .filter(|w| k.contains(w) == want)
            .collect()
    };
    Ok((pick(u.len(), true), pick(v.len(), false)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(s)
    }

    fn ab() -> Alphabet {
        Alphabet::from_letters("ab")
    }

    fn shown(ws: &[Word]) -> Vec<String> {
        ws.iter().map(Word::to_string).collect()
    }

    #[test]
    fn clopen_examples() {
        let s = separate_clopen(&w("a"), &w("b"), &ab()).unwrap();
        assert_eq!(s.expr.to_string(), "(sig+ a)");
        let s = separate_clopen(&w("aab"), &w("ab"), &ab()).unwrap();
        assert_eq!(s.expr.to_string(), "(freq a >= 2/3)");
        let s = separate_clopen(&w("ab"), &w("ba"), &ab()).unwrap();
        assert_eq!(
            s.expr.to_string(),
            "(union (inter (image 2 (sig+ <a.b>)) (freq a = 1/2)) (freq a < 1/2))"
        );
        assert_eq!(s.trace.replay().unwrap(), s.expr);
        assert_eq!(
            s.trace.to_string(),
            "block-descent u=a.b v=b.a symbol=a lambda=1/2 n=2\n  disjoint-alphabets u=<a.b> v=<b.a> gamma={<a.b>}\n"
        );
        assert!(matches!(
            separate_clopen(&w("ab"), &w("abab"), &ab()),
            Err(Error::Commute { .. })
        ));
        assert_eq!(separate_clopen(&Word::epsilon(), &w("a"), &ab()), Err(Error::EmptyWord));
    }

    #[test]
    fn nested_descent() {
        // equal frequencies at two levels
        let (u, v) = (w("abbaabba"), w("abbabaab"));
        let s = separate_clopen(&u, &v, &ab()).unwrap();
        assert!(s.expr.contains(&u) && !s.expr.contains(&v));
        assert_eq!(s.trace.replay().unwrap(), s.expr);
    }

    #[test]
    fn open_examples() {
        assert_eq!(
            shown(&separate_open(&w("ab"), &w("a"), &ab()).unwrap()),
            ["b", "a.b", "b.a", "b.b"]
        );
        assert_eq!(shown(&separate_open(&w("b"), &w("a"), &ab()).unwrap()), ["b"]);
        assert!(matches!(
            separate_open(&w("aa"), &w("a"), &ab()),
            Err(Error::Power { .. })
        ));
    }

    #[test]
    fn distinguish_examples() {
        let (l, c) = distinguish_open(&w("ab"), &w("abb"), &ab()).unwrap();
        assert_eq!(
            (shown(&l), c),
            (vec!["eps".into(), "a".into(), "a.b".into()], Contains::U)
        );
        let (l, c) = distinguish_open(&w("aab"), &w("ab"), &ab()).unwrap();
        assert_eq!(
            (shown(&l), c),
            (vec!["eps".into(), "a".into(), "a.b".into()], Contains::V)
        );
        let (l, c) = distinguish_open(&w("ba"), &w("ab"), &ab()).unwrap();
        assert_eq!((l.last().unwrap().clone(), c), (w("ab"), Contains::V));
        assert_eq!(distinguish_open(&w("ab"), &w("ab"), &ab()), Err(Error::EqualWords));
    }

    #[test]
    fn open_pair_examples() {
        let (l, m) = separate_open_pair(&w("a"), &w("b"), &ab()).unwrap();
        assert_eq!((shown(&l), shown(&m)), (vec!["a".to_string()], vec!["b".to_string()]));
        let (l, m) = separate_open_pair(&w("ab"), &w("ba"), &ab()).unwrap();
        assert_eq!(shown(&l), ["b", "a.b", "b.b"]);
        assert_eq!(shown(&m), ["a", "a.a", "b.a"]);
        assert!(matches!(
            separate_open_pair(&w("ab"), &w("abab"), &ab()),
            Err(Error::Commute { .. })
        ));
    }
}
