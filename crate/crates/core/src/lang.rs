//! Language-level operations: counting-operator inference, shuffle
//! membership, chain-partition enumeration, and the brute-force minimality
//! oracle.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::alphabet::{Alphabet, ExampleSet, Symbol};
use crate::error::{Error, Result};
use crate::graphs::Digraph;
use crate::orders::{tran_reduction, PairSet};
use crate::sire::{Cpos, Factor, Op, Sire};

/// Default alphabet bound for exhaustive enumeration.
pub const ENUMERATION_BOUND: usize = 8;

/// Per-symbol occurrence range over all words of a sample; a word lacking the
/// symbol counts as zero.
#[derive(Clone, Debug)]
pub struct SymbolStats {
    min: Vec<u32>,
    max: Vec<u32>,
}

impl SymbolStats {
    pub fn of(e: &ExampleSet) -> SymbolStats {
        let n = e.alphabet().len();
        let mut min = vec![u32::MAX; n];
        let mut max = vec![0u32; n];
        let mut counts = vec![0u32; n];
        for word in e.words() {
            counts.fill(0);
            for &sym in word {
                counts[sym.id()] += 1;
            }
            for i in 0..n {
                min[i] = min[i].min(counts[i]);
                max[i] = max[i].max(counts[i]);
            }
        }
        if e.words().is_empty() {
            min.fill(0);
        }
        SymbolStats { min, max }
    }

    pub fn range(&self, sym: Symbol) -> (u32, u32) {
        (self.min[sym.id()], self.max[sym.id()])
    }

    /// The operator implied by a symbol's occurrence range.
    pub fn operator(&self, sym: Symbol) -> Op {
        let (min, max) = self.range(sym);
        debug_assert!(max >= 1, "alphabet symbols occur in some word");
        match (min, max) {
            (0, 1) => Op::Opt,
            (0, _) => Op::Star,
            (_, 1) => Op::One,
            (_, _) => Op::Plus,
        }
    }
}

/// Turns a chain partition into a SIRE by attaching the counting operator of
/// each symbol, inferred from its occurrence range over the whole sample.
pub fn infer_operators(e: &ExampleSet, cpos: &Cpos) -> Result<Sire> {
    if cpos.alphabet() != e.alphabet() {
        return Err(Error::ChainMismatch(
            "chain partition built over a different alphabet".into(),
        ));
    }
    let stats = SymbolStats::of(e);
    let factors = cpos
        .chains()
        .iter()
        .map(|chain| {
            Factor::new(chain.iter().map(|&s| (s, stats.operator(s))).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Sire::new(e.alphabet().clone(), factors)
}

/// Precomputed membership checker for words over a fixed alphabet.
///
/// Because factor alphabets are disjoint, a word belongs to the language
/// exactly when each factor accepts the word's projection onto that factor's
/// symbols, and no symbol falls outside every factor.
pub struct Matcher {
    /// Word-alphabet symbol id -> (factor index, term index).
    table: Vec<Option<(u32, u32)>>,
    /// Term operators per factor.
    ops: Vec<Vec<Op>>,
}

impl Matcher {
    pub fn new(sire: &Sire, word_alphabet: &Alphabet) -> Matcher {
        let mut table = vec![None; word_alphabet.len()];
        let mut ops = Vec::with_capacity(sire.factor_count());
        for (f, factor) in sire.factors().iter().enumerate() {
            let mut factor_ops = Vec::with_capacity(factor.len());
            for (t, &(sym, op)) in factor.terms().iter().enumerate() {
                factor_ops.push(op);
                if let Some(word_sym) = word_alphabet.symbol(sire.alphabet().name(sym)) {
                    table[word_sym.id()] = Some((f as u32, t as u32));
                }
            }
            ops.push(factor_ops);
        }
        Matcher { table, ops }
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        // Per factor: index of the term currently being consumed (or none
        // yet) and how many times its symbol has repeated.
        let mut state: Vec<(Option<u32>, u32)> = vec![(None, 0); self.ops.len()];
        for &sym in word {
            let Some(Some((f, t))) = self.table.get(sym.id()).copied() else {
                return false;
            };
            let (cur, cnt) = &mut state[f as usize];
            match *cur {
                Some(c) if c == t => *cnt += 1,
                Some(c) if c > t => return false, // chain order violated
                prev => {
                    let ops = &self.ops[f as usize];
                    if let Some(c) = prev {
                        if !ops[c as usize].admits(*cnt) {
                            return false;
                        }
                    }
                    let skipped_from = prev.map_or(0, |c| c + 1);
                    for skipped in skipped_from..t {
                        if !ops[skipped as usize].admits(0) {
                            return false;
                        }
                    }
                    *cur = Some(t);
                    *cnt = 1;
                }
            }
        }
        for (f, &(cur, cnt)) in state.iter().enumerate() {
            let ops = &self.ops[f];
            if let Some(c) = cur {
                if !ops[c as usize].admits(cnt) {
                    return false;
                }
            }
            let rest_from = cur.map_or(0, |c| c + 1);
            for rest in rest_from as usize..ops.len() {
                if !ops[rest].admits(0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Shuffle membership of one word. `word` is spelled in `word_alphabet`,
/// which may differ from the expression's own alphabet.
pub fn sire_membership(word: &[Symbol], word_alphabet: &Alphabet, sire: &Sire) -> bool {
    Matcher::new(sire, word_alphabet).accepts(word)
}

/// Iterator over every partition of an alphabet into disjoint nonempty
/// chains: order within a chain is significant, order among chains is not.
///
/// Enumeration runs over set partitions (restricted growth strings) crossed
/// with all per-block orderings, so for n symbols it yields 1, 3, 13, 73,
/// 501, ... partitions (the "sets of lists" numbers).
pub struct ChainPartitions {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
    rgs: Option<Vec<usize>>,
    block_orders: Vec<Vec<Vec<Symbol>>>,
    odometer: Vec<usize>,
}

impl ChainPartitions {
    fn new(alphabet: Alphabet) -> ChainPartitions {
        let symbols: Vec<Symbol> = alphabet.symbols().collect();
        let rgs = if symbols.is_empty() {
            None
        } else {
            Some(vec![0; symbols.len()])
        };
        let mut it = ChainPartitions {
            alphabet,
            symbols,
            rgs,
            block_orders: Vec::new(),
            odometer: Vec::new(),
        };
        it.load_blocks();
        it
    }

    fn load_blocks(&mut self) {
        let Some(rgs) = &self.rgs else {
            self.block_orders.clear();
            self.odometer.clear();
            return;
        };
        let block_count = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<Symbol>> = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(self.symbols[i]);
        }
        self.block_orders = blocks
            .into_iter()
            .map(|block| {
                let k = block.len();
                block.into_iter().permutations(k).collect()
            })
            .collect();
        self.odometer = vec![0; self.block_orders.len()];
    }

    fn advance(&mut self) {
        // Next combination of block orderings, then next set partition.
        for i in (0..self.odometer.len()).rev() {
            self.odometer[i] += 1;
            if self.odometer[i] < self.block_orders[i].len() {
                return;
            }
            self.odometer[i] = 0;
        }
        let advanced = match &mut self.rgs {
            Some(rgs) => next_restricted_growth_string(rgs),
            None => false,
        };
        if advanced {
            self.load_blocks();
        } else {
            self.rgs = None;
        }
    }
}

impl Iterator for ChainPartitions {
    type Item = Cpos;

    fn next(&mut self) -> Option<Cpos> {
        self.rgs.as_ref()?;
        let chains: Vec<Vec<Symbol>> = self
            .odometer
            .iter()
            .zip(&self.block_orders)
            .map(|(&i, orders)| orders[i].clone())
            .collect();
        let cpos = Cpos::new(self.alphabet.clone(), chains).expect("blocks partition the alphabet");
        self.advance();
        Some(cpos)
    }
}

fn next_restricted_growth_string(rgs: &mut [usize]) -> bool {
    for i in (1..rgs.len()).rev() {
        let max_prefix = rgs[..i].iter().copied().max().expect("i >= 1");
        if rgs[i] <= max_prefix {
            rgs[i] += 1;
            for j in i + 1..rgs.len() {
                rgs[j] = 0;
            }
            return true;
        }
    }
    false
}

/// Enumerates all chain partitions of `alphabet` under the default bound.
pub fn enumerate_chain_partitions(alphabet: &Alphabet) -> Result<ChainPartitions> {
    enumerate_chain_partitions_bounded(alphabet, ENUMERATION_BOUND)
}

pub fn enumerate_chain_partitions_bounded(
    alphabet: &Alphabet,
    bound: usize,
) -> Result<ChainPartitions> {
    if alphabet.len() > bound {
        return Err(Error::BoundExceeded {
            size: alphabet.len(),
            bound,
        });
    }
    Ok(ChainPartitions::new(alphabet.clone()))
}

/// All set partitions of the alphabet, blocks listed in index order.
fn set_partitions(symbols: &[Symbol]) -> Vec<Vec<BTreeSet<Symbol>>> {
    if symbols.is_empty() {
        return Vec::new();
    }
    let mut rgs = vec![0usize; symbols.len()];
    let mut out = Vec::new();
    loop {
        let block_count = rgs.iter().copied().max().expect("nonempty") + 1;
        let mut blocks: Vec<BTreeSet<Symbol>> = vec![BTreeSet::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].insert(symbols[i]);
        }
        out.push(blocks);
        if !next_restricted_growth_string(&mut rgs) {
            break;
        }
    }
    out
}

/// A block admits a valid chain order iff it contains no forbid pair and the
/// consistent-order arcs inside it form no cycle. Returns the
/// lexicographically smallest valid order, or `None`.
fn valid_chain_order(
    alphabet: &Alphabet,
    block: &BTreeSet<Symbol>,
    l2: &PairSet,
    constraint: &PairSet,
) -> Option<Vec<Symbol>> {
    for &u in block {
        for &v in block {
            if u != v && constraint.contains(u, v) {
                return None;
            }
        }
    }
    Digraph::induced_by_pairs(alphabet.clone(), block, l2)
        .topological_sort()
        .ok()
}

/// Brute-force minimality oracle: among all chain partitions valid for the
/// sample, keep those with the fewest chains and, among these, the
/// lexicographically greatest descending length profile. One representative
/// chain order is produced per optimal partition.
pub fn minimal_oracle(e: &ExampleSet) -> Result<Vec<Cpos>> {
    minimal_oracle_bounded(e, ENUMERATION_BOUND)
}

pub fn minimal_oracle_bounded(e: &ExampleSet, bound: usize) -> Result<Vec<Cpos>> {
    let n = e.alphabet().len();
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if n > bound {
        return Err(Error::BoundExceeded { size: n, bound });
    }
    let (l2, constraint) = tran_reduction(e);
    let symbols: Vec<Symbol> = e.alphabet().symbols().collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut optima: Vec<Cpos> = Vec::new();
    for blocks in set_partitions(&symbols) {
        let mut chains = Vec::with_capacity(blocks.len());
        let mut valid = true;
        for block in &blocks {
            match valid_chain_order(e.alphabet(), block, &l2, &constraint) {
                Some(chain) => chains.push(chain),
                None => {
                    valid = false;
                    break;
                }
            }
        }
        if !valid {
            continue;
        }
        let cpos = Cpos::new(e.alphabet().clone(), chains)?;
        let key = (cpos.chain_count(), cpos.profile());
        let better = match &best {
            None => true,
            Some((count, profile)) => {
                key.0 < *count || (key.0 == *count && key.1 > *profile)
            }
        };
        if better {
            best = Some(key);
            optima.clear();
            optima.push(cpos);
        } else if best.as_ref() == Some(&key) {
            optima.push(cpos);
        }
    }
    debug_assert!(!optima.is_empty(), "the all-singletons partition is always valid");
    Ok(optima)
}
