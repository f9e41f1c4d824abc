//! Commutation, primitive roots and connected components of words.
//!
//! Two non-empty words commute iff they are powers of one primitive word, and
//! that common primitive root is exactly what no clopen partition can split.
//! So the connected components of Σ⁺ are {x, x², x³, ...} for primitive x.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// A word written as root^exponent with a primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub root: Word,
    pub exponent: usize,
}

/// uv = vu. ε commutes with everything.
pub fn commutes(u: &Word, v: &Word) -> bool {
    let (us, vs) = (u.symbols(), v.symbols());
    let n = us.len() + vs.len();
    (0..n).all(|i| {
        let left = if i < us.len() { &us[i] } else { &vs[i - us.len()] };
        let right = if i < vs.len() { &vs[i] } else { &us[i - vs.len()] };
        left == right
    })
}

/// Shortest x with w = x^k, found by scanning the divisors of |w|.
pub fn primitive_root(w: &Word) -> Result<PrimitiveDecomposition> {
    let s = w.symbols();
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let period = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| s[i] == s[i - d]))
        .expect("n divides n");
    Ok(PrimitiveDecomposition {
        root: w.prefix(period),
        exponent: n / period,
    })
}

pub fn is_primitive(w: &Word) -> Result<bool> {
    Ok(primitive_root(w)?.exponent == 1)
}

/// k ≥ 0 with u = v^k, if any.
pub fn power_exponent(u: &Word, v: &Word) -> Result<Option<usize>> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (us, vs) = (u.symbols(), v.symbols());
    if us.len() % vs.len() != 0 {
        return Ok(None);
    }
    let matches = us.chunks(vs.len()).all(|c| c == vs);
    Ok(matches.then_some(us.len() / vs.len()))
}

/// Same primitive root. Equivalent to [`commutes`] on non-empty words.
pub fn connected(u: &Word, v: &Word) -> Result<bool> {
    Ok(primitive_root(u)?.root == primitive_root(v)?.root)
}

/// Groups words by primitive root.
///
/// Groups are ordered by their root under the alphabet's lexicographic order;
/// words within a group by length. Duplicates are dropped.
pub fn connected_components(words: &[Word], alphabet: &Alphabet) -> Result<Vec<Vec<Word>>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<Word>> = BTreeMap::new();
    for w in words {
        let root = primitive_root(w)?.root;
        let key = alphabet.encode(&root)?;
        let group = groups.entry(key).or_default();
        if !group.contains(w) {
            group.push(w.clone());
        }
    }
    Ok(groups
        .into_values()
        .map(|mut g| {
            g.sort_by_key(Word::len);
            g
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(s)
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&w("aa"), &w("aaa")));
        assert!(!commutes(&w("ab"), &w("ba")));
        assert!(commutes(&w("abab"), &Word::epsilon()));
        assert!(commutes(&Word::epsilon(), &Word::epsilon()));
    }

    #[test]
    fn primitive_roots() {
        let d = primitive_root(&w("abab")).unwrap();
        assert_eq!((d.root, d.exponent), (w("ab"), 2));
        assert_eq!(primitive_root(&w("a")).unwrap().exponent, 1);
        let d = primitive_root(&w("aaaa")).unwrap();
        assert_eq!((d.root, d.exponent), (w("a"), 4));
        assert_eq!(primitive_root(&w("aba")).unwrap().root, w("aba"));
        assert_eq!(primitive_root(&Word::epsilon()), Err(Error::EmptyWord));
    }

    #[test]
    fn power_exponents() {
        assert_eq!(power_exponent(&w("aaaa"), &w("aa")).unwrap(), Some(2));
        assert_eq!(power_exponent(&w("ab"), &w("a")).unwrap(), None);
        assert_eq!(power_exponent(&Word::epsilon(), &w("a")).unwrap(), Some(0));
        assert_eq!(power_exponent(&w("a"), &Word::epsilon()), Err(Error::EmptyWord));
    }

    #[test]
    fn connectivity() {
        assert!(connected(&w("ab"), &w("abab")).unwrap());
        assert!(!connected(&w("ab"), &w("ba")).unwrap());
        assert!(connected(&w("aba"), &w("aba")).unwrap());
        assert!(connected(&Word::epsilon(), &w("a")).is_err());
    }

    #[test]
    fn components_grouped_by_root() {
        let ab = Alphabet::from_letters("ab");
        let words = ["abab", "b", "aa", "ab", "a"].map(w);
        let groups = connected_components(&words, &ab).unwrap();
        let expect = vec![vec![w("a"), w("aa")], vec![w("ab"), w("abab")], vec![w("b")]];
        assert_eq!(groups, expect);
        assert_eq!(connected_components(&[w("a")], &ab).unwrap().len(), 1);
        assert!(connected_components(&[Word::epsilon()], &ab).is_err());
    }
}
