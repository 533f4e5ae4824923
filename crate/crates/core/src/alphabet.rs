//! Interned symbols, alphabets and example sets.
//!
//! An [`Alphabet`] owns the sorted, deduplicated set of symbol names; a
//! [`Symbol`] is an index into it. Because names are stored in lexicographic
//! order, comparing two `Symbol`s by id is the same as comparing their names,
//! which is what every deterministic tie-break in this crate relies on.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that may never appear in a symbol name. They are either
/// expression syntax (`& ? + * ( ) |`) or whitespace.
const RESERVED: &[char] = &['&', '?', '+', '*', '(', ')', '|'];

pub(crate) fn validate_symbol_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::InvalidSymbol {
            name: name.to_string(),
            reason: "empty name",
        });
    }
    for ch in name.chars() {
        if ch.is_whitespace() {
            return Err(Error::InvalidSymbol {
                name: name.to_string(),
                reason: "contains whitespace",
            });
        }
        if RESERVED.contains(&ch) {
            return Err(Error::InvalidSymbol {
                name: name.to_string(),
                reason: "contains a reserved character",
            });
        }
    }
    Ok(())
}

/// A symbol of some alphabet. The id equals the rank of the symbol's name in
/// the alphabet's lexicographic order, so `Ord` on `Symbol` is name order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A frozen, lexicographically sorted set of symbol names. Cheap to clone.
#[derive(Clone)]
pub struct Alphabet {
    names: Arc<Vec<String>>,
}

impl Alphabet {
    /// Builds an alphabet from arbitrary names; duplicates collapse.
    pub fn from_names<I, S>(names: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        for name in &names {
            validate_symbol_name(name)?;
        }
        names.sort();
        names.dedup();
        Ok(Alphabet {
            names: Arc::new(names),
        })
    }

    pub fn empty() -> Alphabet {
        Alphabet {
            names: Arc::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| Symbol(i as u32))
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.id()]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub(crate) fn contains_symbol(&self, sym: Symbol) -> bool {
        sym.id() < self.names.len()
    }

    /// Joins symbol names with `sep`.
    pub fn render(&self, symbols: &[Symbol], sep: &str) -> String {
        symbols
            .iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names.iter()).finish()
    }
}

/// A word is a sequence of symbols; the empty word is allowed.
pub type Word = Vec<Symbol>;

/// The positive sample: a nonempty collection of words, possibly repeating,
/// over the alphabet formed by exactly the symbols that occur in them.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSet {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl ExampleSet {
    /// Builds an example set from words given as name sequences.
    pub fn from_words<I, W, S>(words: I) -> Result<ExampleSet>
    where
        I: IntoIterator<Item = W>,
        W: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let words: Vec<Vec<String>> = words
            .into_iter()
            .map(|w| w.into_iter().map(Into::into).collect())
            .collect();
        if words.is_empty() {
            return Err(Error::EmptySample);
        }
        let alphabet = Alphabet::from_names(words.iter().flatten().cloned())?;
        let words = words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|name| alphabet.symbol(name).expect("name interned above"))
                    .collect()
            })
            .collect();
        Ok(ExampleSet { alphabet, words })
    }

    /// Convenience for single-character symbols: each char of each string is
    /// one symbol.
    pub fn from_char_words<I, S>(words: I) -> Result<ExampleSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::from_words(
            words
                .into_iter()
                .map(|w| w.as_ref().chars().map(String::from).collect::<Vec<_>>()),
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_names(&self, index: usize) -> Vec<&str> {
        self.words[index].iter().map(|&s| self.alphabet.name(s)).collect()
    }
}
