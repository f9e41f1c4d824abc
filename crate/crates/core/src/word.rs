//! Symbols, words and ordered alphabets.
//!
//! Symbols are opaque text tokens rather than single characters so that block
//! alphabets can name their letters after the words they stand for: the block
//! for the word `a.b` is the token `<a.b>`. Words are written with `.` between
//! tokens; the bare token `eps` denotes the empty word.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Spelling of the empty word in every text format.
pub const EPSILON: &str = "eps";

/// An opaque symbol token.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// Validates and interns a token.
    ///
    /// A token is non-empty, has no whitespace, parentheses or `#`, is not
    /// `eps`, and contains `.` only inside balanced `<...>` brackets.
    pub fn new(token: &str) -> Result<Self> {
        let invalid = || Error::InvalidSymbol(token.to_string());
        if token.is_empty()
            || token == EPSILON
            || token.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '#'))
        {
            return Err(invalid());
        }
        let mut depth = 0i32;
        for c in token.chars() {
            match c {
                '<' => depth += 1,
                '>' => depth -= 1,
                '.' if depth == 0 => return Err(invalid()),
                _ => {}
            }
            if depth < 0 {
                return Err(invalid());
            }
        }
        if depth != 0 {
            return Err(invalid());
        }
        Ok(Symbol(Arc::from(token)))
    }

    /// The block token naming the word `parts`: `<` + tokens joined by `.` + `>`.
    pub fn block(parts: &[Symbol]) -> Symbol {
        let mut s = String::with_capacity(2 + parts.iter().map(|p| p.0.len() + 1).sum::<usize>());
        s.push('<');
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(&p.0);
        }
        s.push('>');
        Symbol(Arc::from(s))
    }

    /// Splits a block token back into its component symbols.
    pub fn block_parts(&self) -> Option<Vec<Symbol>> {
        let inner = self.0.strip_prefix('<')?.strip_suffix('>')?;
        split_dotted(inner).into_iter().map(|t| Symbol::new(t).ok()).collect()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits dotted text at `.` characters outside `<...>` brackets.
pub(crate) fn split_dotted(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            '.' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// A finite sequence of symbols. The empty sequence is ε.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    /// Parses dotted text (`a.b.a`) or `eps`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == EPSILON {
            return Ok(Word::epsilon());
        }
        split_dotted(text)
            .into_iter()
            .map(Symbol::new)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// One symbol per character: `from_letters("abab")`.
    pub fn from_letters(letters: &str) -> Self {
        Word(
            letters
                .chars()
                .map(|c| Symbol::new(&c.to_string()).expect("letter is a valid token"))
                .collect(),
        )
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(std::iter::repeat_n(&self.0, k).flatten().cloned().collect())
    }

    /// Number of occurrences of `symbol`.
    pub fn count(&self, symbol: &Symbol) -> usize {
        self.0.iter().filter(|s| *s == symbol).count()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EPSILON);
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// An ordered set of distinct symbols.
///
/// The declared order is the lexicographic order used for every tie-break.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = Symbol>>(symbols: I) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Whitespace-separated tokens, in order.
    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.split_whitespace().map(Symbol::new).collect::<Result<Vec<_>>>()?)
    }

    /// One symbol per character: `from_letters("ab")`.
    pub fn from_letters(letters: &str) -> Self {
        Alphabet::new(Word::from_letters(letters).into_symbols()).expect("letters must be distinct")
    }

    /// Symbols of `words` in order of first appearance.
    pub fn infer<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Self {
        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        for w in words {
            for s in w.symbols() {
                if !index.contains_key(s) {
                    index.insert(s.clone(), symbols.len());
                    symbols.push(s.clone());
                }
            }
        }
        Alphabet { symbols, index }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &Symbol {
        &self.symbols[index]
    }

    pub fn index_of(&self, symbol: &Symbol) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.index.contains_key(symbol)
    }

    /// Looks a token up by its spelling.
    pub fn index_of_str(&self, token: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.as_str() == token)
    }

    /// Maps a word to symbol indices.
    pub fn encode(&self, word: &Word) -> Result<Vec<usize>> {
        word.symbols()
            .iter()
            .map(|s| self.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.to_string())))
            .collect()
    }

    pub fn decode(&self, indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| self.symbols[i].clone()).collect())
    }

    /// Parses a dotted word and checks every symbol belongs to the alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text)?;
        self.encode(&w)?;
        Ok(w)
    }

    fn rank(&self, s: &Symbol) -> usize {
        self.index_of(s).unwrap_or(usize::MAX)
    }

    /// Lexicographic order induced by the declared symbol order.
    pub fn cmp_lex(&self, a: &Word, b: &Word) -> Ordering {
        a.symbols()
            .iter()
            .map(|s| self.rank(s))
            .cmp(b.symbols().iter().map(|s| self.rank(s)))
    }

    /// Length first, then lexicographic.
    pub fn cmp_shortlex(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| self.cmp_lex(a, b))
    }

    /// Every word of length exactly `len`, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> Vec<Word> {
        let k = self.len();
        if k == 0 {
            return if len == 0 { vec![Word::epsilon()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; len];
        loop {
            out.push(self.decode(&digits));
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    /// Every word of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| self.words_of_len(l)).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_tokens_round_trip() {
        let ab = Word::from_letters("ab");
        let block = Symbol::block(ab.symbols());
        assert_eq!(block.as_str(), "<a.b>");
        assert_eq!(block.block_parts().unwrap(), ab.into_symbols());

        let nested = Symbol::block(&[block.clone(), Symbol::new("<b.a>").unwrap()]);
        assert_eq!(nested.as_str(), "<<a.b>.<b.a>>");
        assert_eq!(nested.block_parts().unwrap()[0], block);
    }

    #[test]
    fn rejects_bad_tokens() {
        for bad in ["", "eps", "a b", "a.b", "(x", "<a.b", "a>"] {
            assert!(Symbol::new(bad).is_err(), "{bad:?} accepted");
        }
        assert!(Symbol::new("<a.b>").is_ok());
        assert!(Symbol::new("q10").is_ok());
    }

    #[test]
    fn dotted_words() {
        let w = Word::parse("<a.b>.<b.a>.c").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "<a.b>.<b.a>.c");
        assert_eq!(Word::parse("eps").unwrap(), Word::epsilon());
        assert_eq!(Word::epsilon().to_string(), "eps");
    }

    #[test]
    fn alphabet_order_drives_comparison() {
        let ba = Alphabet::parse("b a").unwrap();
        let (a, b) = (Word::from_letters("a"), Word::from_letters("b"));
        assert_eq!(ba.cmp_lex(&b, &a), Ordering::Less);
        assert_eq!(ba.cmp_shortlex(&a, &Word::from_letters("bb")), Ordering::Less);
        assert!(Alphabet::parse("a a").is_err());
    }

    #[test]
    fn enumerates_in_shortlex_order() {
        let ab = Alphabet::from_letters("ab");
        let words: Vec<String> = ab.words_up_to(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["eps", "a", "b", "a.a", "a.b", "b.a", "b.b"]);
    }
}
