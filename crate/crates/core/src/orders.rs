//! Order mining over a sample: the transitive closure of its words and the
//! split of that closure into the consistent set `L2` and the forbid set
//! `constraint`.

use std::collections::BTreeSet;

use crate::alphabet::{ExampleSet, Symbol};

/// A set of ordered symbol pairs `(u, v)` with `u != v`. Reflexive pairs are
/// silently dropped on insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairSet {
    pairs: BTreeSet<(Symbol, Symbol)>,
}

impl PairSet {
    pub fn new() -> PairSet {
        PairSet::default()
    }

    pub fn insert(&mut self, u: Symbol, v: Symbol) -> bool {
        if u == v {
            return false;
        }
        self.pairs.insert((u, v))
    }

    pub fn contains(&self, u: Symbol, v: Symbol) -> bool {
        self.pairs.contains(&(u, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All symbols that occur in some pair.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Pairs with both endpoints inside `within`.
    pub fn restricted_to(&self, within: &BTreeSet<Symbol>) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        let within = within.clone();
        self.pairs
            .iter()
            .copied()
            .filter(move |(u, v)| within.contains(u) && within.contains(v))
    }
}

impl FromIterator<(Symbol, Symbol)> for PairSet {
    fn from_iter<T: IntoIterator<Item = (Symbol, Symbol)>>(iter: T) -> Self {
        let mut set = PairSet::new();
        for (u, v) in iter {
            set.insert(u, v);
        }
        set
    }
}

/// Union over all words of the per-word closure: `(w[i], w[j])` for every
/// position pair `i < j` with distinct symbols.
pub fn transitive_closure(e: &ExampleSet) -> PairSet {
    let mut tr = PairSet::new();
    for word in e.words() {
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                tr.insert(word[i], word[j]);
            }
        }
    }
    tr
}

/// Splits the closure: a pair lands in `constraint` when its reversal is also
/// observed, in `L2` otherwise. Returns `(l2, constraint)`.
pub fn tran_reduction(e: &ExampleSet) -> (PairSet, PairSet) {
    let tr = transitive_closure(e);
    let mut l2 = PairSet::new();
    let mut constraint = PairSet::new();
    for (u, v) in tr.iter() {
        if tr.contains(v, u) {
            constraint.insert(u, v);
        } else {
            l2.insert(u, v);
        }
    }
    (l2, constraint)
}
