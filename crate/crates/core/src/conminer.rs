//! The approximation pipeline: split the sample's closure, decompose the
//! constraint graph into independent groups, order each group by its
//! consistent pairs, and attach counting operators.

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::{Alphabet, ExampleSet, Symbol};
use crate::error::{Error, Result};
use crate::graphs::{decompose_into_independent_sets, Digraph, MisSolver, UGraph};
use crate::lang::infer_operators;
use crate::orders::{tran_reduction, PairSet};
use crate::sire::{Cpos, Sire};

/// The outcome of an inference run, with enough detail to explain it.
#[derive(Clone, Debug)]
pub struct Inference {
    pub sire: Sire,
    pub cpos: Cpos,
    /// Symbols moved into their own trailing chain because the consistent
    /// pairs inside their group formed a cycle.
    pub evicted: Vec<Symbol>,
    /// Number of blocks the partition repair had to split again (heuristic
    /// pipeline only).
    pub forced_splits: usize,
}

impl Inference {
    pub fn eviction_count(&self) -> usize {
        self.evicted.len()
    }

    pub fn evicted_names(&self) -> Vec<String> {
        self.evicted
            .iter()
            .map(|&s| self.cpos.alphabet().name(s).to_string())
            .collect()
    }
}

/// Orders each group by the consistent pairs it contains. A group whose
/// induced order is cyclic sheds the smallest vertex on a witness cycle into
/// a fresh trailing group until a topological sort exists.
pub(crate) fn chains_from_groups(
    alphabet: &Alphabet,
    groups: &[BTreeSet<Symbol>],
    l2: &PairSet,
) -> (Vec<Vec<Symbol>>, Vec<Symbol>) {
    let mut queue: VecDeque<BTreeSet<Symbol>> =
        groups.iter().filter(|g| !g.is_empty()).cloned().collect();
    let mut chains = Vec::new();
    let mut evicted = Vec::new();
    while let Some(mut group) = queue.pop_front() {
        let mut graph = Digraph::induced_by_pairs(alphabet.clone(), &group, l2);
        while let Some(cycle) = graph.find_cycle() {
            let victim = *cycle.iter().min().expect("cycle is nonempty");
            graph.remove_vertex(victim);
            group.remove(&victim);
            queue.push_back(BTreeSet::from([victim]));
            evicted.push(victim);
        }
        let chain = graph.topological_sort().expect("cycles were evicted");
        if !chain.is_empty() {
            chains.push(chain);
        }
    }
    (chains, evicted)
}

/// Runs the full pipeline on a sample with the chosen independent-set solver.
pub fn con_miner(e: &ExampleSet, solver: MisSolver) -> Result<Inference> {
    if e.alphabet().is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let (l2, constraint) = tran_reduction(e);
    let graph = UGraph::from_pairs(e.alphabet().clone(), &constraint);
    let mut groups = decompose_into_independent_sets(&graph, solver)?;
    if groups.is_empty() {
        groups.push(BTreeSet::new());
    }
    // Symbols untouched by any forbid pair all join the first group.
    let constrained = constraint.symbols();
    for sym in e.alphabet().symbols() {
        if !constrained.contains(&sym) {
            groups[0].insert(sym);
        }
    }
    let (chains, evicted) = chains_from_groups(e.alphabet(), &groups, &l2);
    let cpos = Cpos::new(e.alphabet().clone(), chains)?;
    let sire = infer_operators(e, &cpos)?;
    Ok(Inference {
        sire,
        cpos,
        evicted,
        forced_splits: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::sire_membership;

    #[test]
    fn worked_sample_with_both_solvers() {
        let e = ExampleSet::from_char_words(["abcd", "aadbc", "bdd"]).unwrap();
        for solver in [MisSolver::Approx, MisSolver::Exact] {
            let inf = con_miner(&e, solver).unwrap();
            assert_eq!(inf.sire.to_string(), "a* b c? & d+");
            assert!(inf.evicted.is_empty());
        }
    }

    #[test]
    fn fully_reversible_tail_symbol_gets_its_own_factor() {
        let e = ExampleSet::from_char_words(["abcd", "dabc"]).unwrap();
        let inf = con_miner(&e, MisSolver::Approx).unwrap();
        assert_eq!(inf.sire.to_string(), "a b c & d");
        assert_eq!(inf.cpos.chain_texts(), ["a b c", "d"]);
    }

    #[test]
    fn single_word_is_a_single_chain() {
        let e = ExampleSet::from_char_words(["ab"]).unwrap();
        let inf = con_miner(&e, MisSolver::Approx).unwrap();
        assert_eq!(inf.sire.to_string(), "a b");
        assert_eq!(inf.cpos.chain_count(), 1);
    }

    #[test]
    fn empty_alphabet_is_an_error() {
        let e = ExampleSet::from_words(Vec::<Vec<String>>::from([vec![]])).unwrap();
        assert!(matches!(
            con_miner(&e, MisSolver::Approx),
            Err(Error::EmptyAlphabet)
        ));
    }

    #[test]
    fn cyclic_consistent_pairs_trigger_eviction() {
        // Three words build the order cycle a<b, b<c, c<a with no pair ever
        // reversed, so the constraint graph is empty and the single group is
        // cyclic. The smallest cycle vertex moves to a trailing chain.
        let e = ExampleSet::from_char_words(["ab", "bc", "ca"]).unwrap();
        let inf = con_miner(&e, MisSolver::Approx).unwrap();
        assert_eq!(inf.eviction_count(), 1);
        assert_eq!(inf.evicted_names(), ["a"]);
        // Every word must still be accepted.
        for word in e.words() {
            assert!(sire_membership(word, e.alphabet(), &inf.sire));
        }
        assert_eq!(inf.sire.to_string(), "a? & b? c?");
    }

    #[test]
    fn outputs_partition_the_alphabet_and_respect_constraints() {
        let e = ExampleSet::from_char_words(["abc", "cab", "bca"]).unwrap();
        let (_, constraint) = tran_reduction(&e);
        let inf = con_miner(&e, MisSolver::Exact).unwrap();
        let mut seen = BTreeSet::new();
        for factor in inf.sire.factors() {
            for sym in factor.symbols() {
                assert!(seen.insert(sym), "symbol in two factors");
            }
            let members: Vec<Symbol> = factor.symbols().collect();
            for &u in &members {
                for &v in &members {
                    assert!(u == v || !constraint.contains(u, v));
                }
            }
        }
        assert_eq!(seen.len(), e.alphabet().len());
    }
}
