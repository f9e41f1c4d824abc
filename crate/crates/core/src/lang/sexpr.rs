//! S-expression syntax for [`LangExpr`].
//!
//! ```text
//! (sig+ a b)  (freq a >= 2/3)  (finite a.b eps)
//! (union E E)  (inter E E)  (image 2 E)
//! ```

use std::collections::BTreeSet;

use num_rational::Ratio;

use super::{Cmp, LangExpr};
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b'(' | b')') && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                out.push((start, Tok::Atom(&text[start..i])));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Option<Tok<'a>> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn atom(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Atom(a)) => Ok((at, a)),
            _ => Err(Error::syntax(at, format!("expected {what}"))),
        }
    }

    fn close(&mut self) -> Result<()> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Close) => Ok(()),
            _ => Err(Error::syntax(at, "expected `)`")),
        }
    }

    fn symbol(&mut self) -> Result<Symbol> {
        let (at, a) = self.atom("a symbol")?;
        Symbol::new(a).map_err(|e| Error::syntax(at, e.to_string()))
    }

    fn expr(&mut self) -> Result<LangExpr> {
        let at = self.offset();
        if self.next() != Some(Tok::Open) {
            return Err(Error::syntax(at, "expected `(`"));
        }
        let (head_at, head) = self.atom("an operator")?;
        let wrap = |at: usize| move |e: Error| Error::syntax(at, e.to_string());
        let e = match head {
            "sig+" => {
                let mut set = BTreeSet::new();
                while matches!(self.peek(), Some(Tok::Atom(_))) {
                    set.insert(self.symbol()?);
                }
                LangExpr::sigma_plus(set).map_err(wrap(head_at))?
            }
            "freq" => {
                let symbol = self.symbol()?;
                let (cmp_at, c) = self.atom("a comparison")?;
                let cmp: Cmp = c.parse().map_err(wrap(cmp_at))?;
                let (r_at, r) = self.atom("a rational")?;
                let ratio = parse_ratio(r).ok_or_else(|| Error::syntax(r_at, format!("bad rational `{r}`")))?;
                LangExpr::freq(symbol, cmp, ratio).map_err(wrap(r_at))?
            }
            "finite" => {
                let mut words = BTreeSet::new();
                while let Some(Tok::Atom(_)) = self.peek() {
                    let (w_at, w) = self.atom("a word")?;
                    words.insert(Word::parse(w).map_err(wrap(w_at))?);
                }
                LangExpr::Finite(words)
            }
            "union" | "inter" => {
                let l = self.expr()?;
                let r = self.expr()?;
                if head == "union" {
                    LangExpr::union(l, r)
                } else {
                    LangExpr::intersect(l, r)
                }
            }
            "image" => {
                let (n_at, n) = self.atom("a block length")?;
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::syntax(n_at, format!("bad block length `{n}`")))?;
                let inner = self.expr()?;
                LangExpr::image(n, inner).map_err(wrap(n_at))?
            }
            other => return Err(Error::syntax(head_at, format!("unknown operator `{other}`"))),
        };
        self.close()?;
        Ok(e)
    }
}

/// `NUM/DEN` or an integer, reduced to lowest terms.
fn parse_ratio(text: &str) -> Option<Ratio<u64>> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.parse().ok()?, d.parse().ok()?),
        None => (text.parse().ok()?, 1),
    };
    (d != 0).then(|| Ratio::new(n, d))
}

/// Parses one expression; trailing input is an error.
pub fn parse_expr(text: &str) -> Result<LangExpr> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::syntax(p.offset(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "(sig+ a)",
            "(freq a >= 2/3)",
            "(finite eps a.b)",
            "(union (inter (image 2 (sig+ <a.b>)) (freq a = 1/2)) (freq a < 1/2))",
        ] {
            let e = parse_expr(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn normalizes_rationals() {
        assert_eq!(parse_expr("( freq a <= 2/4 )").unwrap().to_string(), "(freq a <= 1/2)");
        assert_eq!(parse_expr("(freq a = 1)").unwrap().to_string(), "(freq a = 1)");
        assert_eq!(parse_expr("(freq a = 0/5)").unwrap().to_string(), "(freq a = 0)");
    }

    #[test]
    fn reports_positions() {
        let err = parse_expr("(sig+ a) x").unwrap_err();
        assert!(matches!(err, Error::Syntax { offset: 9, .. }), "{err:?}");
        let err = parse_expr("(freq a ~ 1/2)").unwrap_err();
        assert!(matches!(err, Error::Syntax { offset: 8, .. }), "{err:?}");
        assert!(matches!(
            parse_expr("(union (sig+ a)"),
            Err(Error::Syntax { offset: 15, .. })
        ));
        assert!(parse_expr("(freq a = 3/2)").is_err());
        assert!(parse_expr("(freq a = 1/0)").is_err());
        assert!(parse_expr("(sig+)").is_err());
        assert!(parse_expr("(image 1 (sig+ a))").is_err());
    }
}
