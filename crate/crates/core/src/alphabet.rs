//! Finite ordered alphabets of named symbols.
//!
//! Symbols are referred to by their 0-based position in the alphabet. Words
//! are plain vectors of positions; the alphabet order fixed at construction
//! is used for every Parikh-vector index and canonical representative.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{input_err, Error, Result};

/// Position of a symbol inside its [`Alphabet`].
pub type Symbol = usize;

/// A word over some alphabet, as symbol positions.
pub type Word = Vec<Symbol>;

#[derive(Debug)]
struct Inner {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

/// A non-empty ordered set of distinct symbol names.
///
/// Cloning is cheap; the symbol table is shared.
#[derive(Clone)]
pub struct Alphabet(Arc<Inner>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return input_err("alphabet must be non-empty");
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return input_err(format!("invalid symbol name {s:?}"));
            }
            if index.insert(s.clone(), i).is_some() {
                return input_err(format!("duplicate symbol {s:?}"));
            }
        }
        Ok(Alphabet(Arc::new(Inner { symbols, index })))
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.0.symbols
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.0.symbols[sym]
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.0.index.get(name).copied()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym < self.len()
    }

    /// Resolves symbol names into a word.
    pub fn word<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.index_of(n)
                    .ok_or_else(|| Error::Input(format!("unknown symbol {n:?}")))
            })
            .collect()
    }

    /// Splits on whitespace and resolves every token.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        self.word(&tokens)
    }

    /// Resolves a word whose symbols are single characters, e.g. `"abba"`.
    pub fn chars(&self, text: &str) -> Result<Word> {
        let tokens: Vec<String> = text.chars().map(String::from).collect();
        self.word(&tokens)
    }

    pub fn names(&self, word: &[Symbol]) -> Vec<String> {
        word.iter().map(|&s| self.name(s).to_string()).collect()
    }

    /// Space-separated rendering of a word.
    pub fn render(&self, word: &[Symbol]) -> String {
        self.names(word).join(" ")
    }

    pub(crate) fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.len()) {
            Some(s) => input_err(format!("symbol index {s} outside alphabet of size {}", self.len())),
            None => Ok(()),
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.symbols == other.0.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_a_bijection() {
        let a = Alphabet::new(["x", "y", "z"]).unwrap();
        for (i, s) in a.symbols().iter().enumerate() {
            assert_eq!(a.index_of(s), Some(i));
            assert_eq!(a.name(i), s);
        }
    }

    #[test]
    fn rejects_empty_and_duplicates() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
    }

    #[test]
    fn unknown_symbol_is_an_input_error() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        assert!(matches!(a.chars("abc"), Err(Error::Input(_))));
        assert_eq!(a.chars("ba").unwrap(), vec![1, 0]);
    }
}
