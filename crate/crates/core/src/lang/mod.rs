//! Symbolic languages with decidable membership, possibly non-regular.
//!
//! Frequency languages {w : |w|_a cmp λ|w|} and block-morphism images are
//! the building blocks of clopen separators; [`oracle`] checks closedness and
//! openness of any membership predicate up to a length bound.

pub mod oracle;
mod sexpr;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

pub use sexpr::parse_expr;

/// Comparison used by frequency languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Cmp {
    pub fn as_str(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }

    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Cmp::Lt => ord == Ordering::Less,
            Cmp::Le => ord != Ordering::Greater,
            Cmp::Eq => ord == Ordering::Equal,
            Cmp::Ge => ord != Ordering::Less,
            Cmp::Gt => ord == Ordering::Greater,
        }
    }
}

impl FromStr for Cmp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "<" => Cmp::Lt,
            "<=" => Cmp::Le,
            "=" => Cmp::Eq,
            ">=" => Cmp::Ge,
            ">" => Cmp::Gt,
            other => return Err(Error::InvalidArgument(format!("unknown comparison `{other}`"))),
        })
    }
}

/// An exact rational in [0, 1], kept in lowest terms.
pub type Frequency = Ratio<u64>;

/// A language expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LangExpr {
    /// Γ⁺ for a non-empty symbol set Γ.
    SubalphabetPlus(BTreeSet<Symbol>),
    /// {w : |w|_a cmp λ·|w|}.
    FreqCmp {
        symbol: Symbol,
        cmp: Cmp,
        ratio: Frequency,
    },
    Finite(BTreeSet<Word>),
    Union(Box<LangExpr>, Box<LangExpr>),
    Intersect(Box<LangExpr>, Box<LangExpr>),
    /// φ(L): words whose length-`block_len` blocks, read as block tokens,
    /// spell a word of the inner language.
    Image {
        block_len: usize,
        inner: Box<LangExpr>,
    },
}

impl LangExpr {
    pub fn sigma_plus<I: IntoIterator<Item = Symbol>>(symbols: I) -> Result<Self> {
        let set: BTreeSet<Symbol> = symbols.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidArgument("sig+ needs at least one symbol".into()));
        }
        Ok(LangExpr::SubalphabetPlus(set))
    }

    pub fn freq(symbol: Symbol, cmp: Cmp, ratio: Frequency) -> Result<Self> {
        if ratio > Ratio::from_integer(1) {
            return Err(Error::InvalidArgument(format!("frequency {ratio} outside [0, 1]")));
        }
        Ok(LangExpr::FreqCmp { symbol, cmp, ratio })
    }

    pub fn finite<I: IntoIterator<Item = Word>>(words: I) -> Self {
        LangExpr::Finite(words.into_iter().collect())
    }

    pub fn union(l: LangExpr, r: LangExpr) -> Self {
        LangExpr::Union(Box::new(l), Box::new(r))
    }

    pub fn intersect(l: LangExpr, r: LangExpr) -> Self {
        LangExpr::Intersect(Box::new(l), Box::new(r))
    }

    pub fn image(block_len: usize, inner: LangExpr) -> Result<Self> {
        if block_len < 2 {
            return Err(Error::InvalidArgument("image block length must be at least 2".into()));
        }
        Ok(LangExpr::Image {
            block_len,
            inner: Box::new(inner),
        })
    }

    /// Membership by structural recursion. Each image level shortens the
    /// word by its block factor, so evaluation always terminates.
    pub fn member(&self, w: &[Symbol]) -> bool {
        match self {
            LangExpr::SubalphabetPlus(set) => !w.is_empty() && w.iter().all(|s| set.contains(s)),
            LangExpr::FreqCmp { symbol, cmp, ratio } => {
                let count = w.iter().filter(|s| *s == symbol).count() as u128;
                let lhs = count * *ratio.denom() as u128;
                let rhs = w.len() as u128 * *ratio.numer() as u128;
                cmp.holds(lhs.cmp(&rhs))
            }
            LangExpr::Finite(words) => words.iter().any(|x| x.symbols() == w),
            LangExpr::Union(l, r) => l.member(w) || r.member(w),
            LangExpr::Intersect(l, r) => l.member(w) && r.member(w),
            LangExpr::Image { block_len, inner } => {
                if !w.len().is_multiple_of(*block_len) {
                    return false;
                }
                let blocks: Vec<Symbol> = w.chunks(*block_len).map(Symbol::block).collect();
                inner.member(&blocks)
            }
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.member(w.symbols())
    }

    /// Membership that first checks `w` is over `alphabet`.
    pub fn member_in(&self, alphabet: &Alphabet, w: &Word) -> Result<bool> {
        alphabet.encode(w)?;
        Ok(self.contains(w))
    }

    /// Checks every symbol is in `alphabet`, with image inner symbols being
    /// block tokens of the right length over the enclosing level.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        self.validate_level(&|s: &Symbol| {
            if alphabet.contains(s) {
                Ok(())
            } else {
                Err(Error::UnknownSymbol(s.to_string()))
            }
        })
    }

    fn validate_level(&self, check: &dyn Fn(&Symbol) -> Result<()>) -> Result<()> {
        match self {
            LangExpr::SubalphabetPlus(set) => set.iter().try_for_each(check),
            LangExpr::FreqCmp { symbol, .. } => check(symbol),
            LangExpr::Finite(words) => words.iter().flat_map(Word::symbols).try_for_each(check),
            LangExpr::Union(l, r) | LangExpr::Intersect(l, r) => {
                l.validate_level(check)?;
                r.validate_level(check)
            }
            LangExpr::Image { block_len, inner } => {
                let n = *block_len;
                inner.validate_level(&|s: &Symbol| match s.block_parts() {
                    Some(parts) if parts.len() == n => parts.iter().try_for_each(check),
                    _ => Err(Error::UnknownSymbol(s.to_string())),
                })
            }
        }
    }

    /// Base-level symbols mentioned anywhere, block tokens unfolded.
    pub fn base_symbols(&self) -> BTreeSet<Symbol> {
        fn unfold(s: &Symbol, depth: usize, out: &mut BTreeSet<Symbol>) {
            if depth == 0 {
                out.insert(s.clone());
            } else if let Some(parts) = s.block_parts() {
                for p in &parts {
                    unfold(p, depth - 1, out);
                }
            }
        }
        fn walk(e: &LangExpr, depth: usize, out: &mut BTreeSet<Symbol>) {
            match e {
                LangExpr::SubalphabetPlus(set) => set.iter().for_each(|s| unfold(s, depth, out)),
                LangExpr::FreqCmp { symbol, .. } => unfold(symbol, depth, out),
                LangExpr::Finite(words) => words.iter().flat_map(Word::symbols).for_each(|s| unfold(s, depth, out)),
                LangExpr::Union(l, r) | LangExpr::Intersect(l, r) => {
                    walk(l, depth, out);
                    walk(r, depth, out);
                }
                LangExpr::Image { inner, .. } => walk(inner, depth + 1, out),
            }
        }
        let mut out = BTreeSet::new();
        walk(self, 0, &mut out);
        out
    }
}

impl fmt::Display for LangExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LangExpr::SubalphabetPlus(set) => {
                f.write_str("(sig+")?;
                for s in set {
                    write!(f, " {s}")?;
                }
                f.write_str(")")
            }
            LangExpr::FreqCmp { symbol, cmp, ratio } => {
                write!(f, "(freq {symbol} {} {ratio})", cmp.as_str())
            }
            LangExpr::Finite(words) => {
                f.write_str("(finite")?;
                for w in words {
                    write!(f, " {w}")?;
                }
                f.write_str(")")
            }
            LangExpr::Union(l, r) => write!(f, "(union {l} {r})"),
            LangExpr::Intersect(l, r) => write!(f, "(inter {l} {r})"),
            LangExpr::Image { block_len, inner } => write!(f, "(image {block_len} {inner})"),
        }
    }
}

impl FromStr for LangExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_letters(s)
    }

    fn half() -> Frequency {
        Ratio::new(1, 2)
    }

    #[test]
    fn subalphabet_plus_excludes_epsilon() {
        let e = LangExpr::sigma_plus([sym("a")]).unwrap();
        assert!(e.contains(&w("aaa")));
        assert!(!e.contains(&Word::epsilon()));
        assert!(!e.contains(&w("ab")));
    }

    #[test]
    fn frequency_counts_exactly() {
        let e = LangExpr::freq(sym("a"), Cmp::Eq, half()).unwrap();
        assert!(e.contains(&w("ab")));
        assert!(!e.contains(&w("aab")));
        assert!(e.contains(&Word::epsilon()));
        let lt = LangExpr::freq(sym("a"), Cmp::Lt, half()).unwrap();
        assert!(!lt.contains(&Word::epsilon()));
        assert!(LangExpr::freq(sym("a"), Cmp::Lt, Ratio::new(3, 2)).is_err());
    }

    #[test]
    fn majority_union() {
        let e = LangExpr::union(
            LangExpr::finite([Word::epsilon()]),
            LangExpr::freq(sym("a"), Cmp::Lt, half()).unwrap(),
        );
        assert!(e.contains(&w("abb")));
        assert!(e.contains(&Word::epsilon()));
        assert!(!e.contains(&w("ab")));
    }

    #[test]
    fn image_reads_blocks() {
        let e = LangExpr::image(2, LangExpr::sigma_plus([sym("<a.b>")]).unwrap()).unwrap();
        assert!(e.contains(&w("abab")));
        assert!(!e.contains(&w("abba")));
        assert!(!e.contains(&w("aba")));
        let eps_inner = LangExpr::image(2, LangExpr::finite([Word::epsilon()])).unwrap();
        assert!(eps_inner.contains(&Word::epsilon()));
        assert!(LangExpr::image(1, eps_inner).is_err());
    }

    #[test]
    fn validation_checks_block_levels() {
        let ab = Alphabet::from_letters("ab");
        let good = LangExpr::image(2, LangExpr::sigma_plus([sym("<a.b>")]).unwrap()).unwrap();
        assert!(good.validate(&ab).is_ok());
        let short = LangExpr::image(2, LangExpr::sigma_plus([sym("<a>")]).unwrap()).unwrap();
        assert!(short.validate(&ab).is_err());
        let foreign = LangExpr::sigma_plus([sym("c")]).unwrap();
        assert_eq!(foreign.validate(&ab), Err(Error::UnknownSymbol("c".into())));
        assert_eq!(
            good.base_symbols().into_iter().collect::<Vec<_>>(),
            vec![sym("a"), sym("b")]
        );
        assert!(good.member_in(&ab, &w("ac")).is_err());
    }
}
