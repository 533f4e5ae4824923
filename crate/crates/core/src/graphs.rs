//! Constraint graphs and the graph algorithms behind the inference:
//! an approximate maximum-independent-set solver (Ramsey-style clique
//! removal), an exact solver by enumeration of all maximal independent sets,
//! iterated decomposition into independent groups, deterministic topological
//! sorting, and source-to-sink path enumeration.
//!
//! "Lexicographic" everywhere below means symbol-id order, which coincides
//! with name order by construction of [`Alphabet`].

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::orders::PairSet;

/// Default vertex bound for the exact solver.
pub const EXACT_MIS_BOUND: usize = 24;

/// Safety valve for path enumeration.
const MAX_PATHS: usize = 1_000_000;

/// Which maximum-independent-set solver drives a decomposition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MisSolver {
    /// Polynomial clique-removal approximation.
    Approx,
    /// Exhaustive enumeration of maximal independent sets.
    Exact,
}

/// An undirected graph over symbols, without self-loops.
#[derive(Clone, Debug)]
pub struct UGraph {
    alphabet: Alphabet,
    vertices: BTreeSet<Symbol>,
    adj: BTreeMap<Symbol, BTreeSet<Symbol>>,
}

impl UGraph {
    pub fn new(alphabet: Alphabet) -> UGraph {
        UGraph {
            alphabet,
            vertices: BTreeSet::new(),
            adj: BTreeMap::new(),
        }
    }

    /// Constraint graph: the pairs become undirected edges.
    pub fn from_pairs(alphabet: Alphabet, pairs: &PairSet) -> UGraph {
        let mut g = UGraph::new(alphabet);
        for (u, v) in pairs.iter() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: Symbol) {
        self.vertices.insert(v);
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: Symbol, v: Symbol) {
        if u == v {
            return;
        }
        self.add_vertex(u);
        self.add_vertex(v);
        self.adj.get_mut(&u).expect("added").insert(v);
        self.adj.get_mut(&v).expect("added").insert(u);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &BTreeSet<Symbol> {
        &self.vertices
    }

    pub fn has_edge(&self, u: Symbol, v: Symbol) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn neighbors(&self, v: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    fn neighbors_within(&self, v: Symbol, within: &BTreeSet<Symbol>) -> BTreeSet<Symbol> {
        self.neighbors(v).filter(|n| within.contains(n)).collect()
    }

    /// True when `set` spans no edge of the graph.
    pub fn is_independent(&self, set: &BTreeSet<Symbol>) -> bool {
        set.iter()
            .all(|&v| self.neighbors(v).all(|n| !set.contains(&n)))
    }
}

/// Recursive Ramsey step: returns `(clique, independent set)` found in the
/// subgraph induced by `within`. The pivot is the smallest vertex; on equal
/// sizes the side containing the pivot wins.
fn ramsey(g: &UGraph, within: &BTreeSet<Symbol>) -> (BTreeSet<Symbol>, BTreeSet<Symbol>) {
    let Some(&pivot) = within.iter().next() else {
        return (BTreeSet::new(), BTreeSet::new());
    };
    let nbrs = g.neighbors_within(pivot, within);
    let non_nbrs: BTreeSet<Symbol> = within
        .iter()
        .copied()
        .filter(|v| *v != pivot && !nbrs.contains(v))
        .collect();
    let (mut clique_n, iset_n) = ramsey(g, &nbrs);
    let (clique_nn, mut iset_nn) = ramsey(g, &non_nbrs);
    clique_n.insert(pivot);
    iset_nn.insert(pivot);
    let clique = if clique_nn.len() > clique_n.len() {
        clique_nn
    } else {
        clique_n
    };
    let iset = if iset_n.len() > iset_nn.len() {
        iset_n
    } else {
        iset_nn
    };
    (clique, iset)
}

/// Clique-removal approximation of a maximum independent set: repeatedly run
/// the Ramsey step, remove the clique it found, and keep the largest
/// independent set seen. The result is greedily extended so that it is
/// maximal in the whole graph.
pub fn approx_max_independent_set(g: &UGraph) -> Result<BTreeSet<Symbol>> {
    if g.vertices().is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut remaining = g.vertices().clone();
    let mut best: BTreeSet<Symbol> = BTreeSet::new();
    while !remaining.is_empty() {
        let (clique, iset) = ramsey(g, &remaining);
        if iset.len() > best.len() {
            best = iset;
        }
        debug_assert!(!clique.is_empty());
        for v in clique {
            remaining.remove(&v);
        }
    }
    for v in g.vertices() {
        if !best.contains(v) && g.neighbors(*v).all(|n| !best.contains(&n)) {
            best.insert(*v);
        }
    }
    debug_assert!(g.is_independent(&best));
    Ok(best)
}

/// All maximal independent sets, by incremental vertex insertion: the family
/// for the first `k` vertices is rewritten into the family for `k + 1` and
/// pruned back to maximal sets at each step. Output-bounded for the vertex
/// counts this crate deals in.
pub fn all_maximal_independent_sets(g: &UGraph) -> Vec<BTreeSet<Symbol>> {
    let mut family: BTreeSet<Vec<Symbol>> = BTreeSet::from([Vec::new()]);
    let mut processed: Vec<Symbol> = Vec::new();
    for &v in g.vertices() {
        processed.push(v);
        let mut next: BTreeSet<Vec<Symbol>> = BTreeSet::new();
        for set in &family {
            let conflicted: Vec<Symbol> = set
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            if conflicted.is_empty() {
                let mut grown = set.clone();
                grown.push(v);
                grown.sort_unstable();
                next.insert(grown);
            } else {
                next.insert(set.clone());
                let mut trimmed: Vec<Symbol> = set
                    .iter()
                    .copied()
                    .filter(|u| !conflicted.contains(u))
                    .collect();
                trimmed.push(v);
                trimmed.sort_unstable();
                next.insert(trimmed);
            }
        }
        family = next
            .into_iter()
            .filter(|set| {
                processed.iter().all(|&u| {
                    set.contains(&u) || set.iter().any(|&s| g.has_edge(u, s))
                })
            })
            .collect();
    }
    family
        .into_iter()
        .map(|set| set.into_iter().collect())
        .collect()
}

/// Exact maximum independent set under the default bound.
pub fn exact_max_independent_set(g: &UGraph) -> Result<BTreeSet<Symbol>> {
    exact_max_independent_set_bounded(g, EXACT_MIS_BOUND)
}

/// Exact maximum independent set: enumerate all maximal independent sets and
/// take the largest; ties go to the lexicographically smallest vertex
/// sequence.
pub fn exact_max_independent_set_bounded(g: &UGraph, bound: usize) -> Result<BTreeSet<Symbol>> {
    if g.vertices().is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.vertices().len() > bound {
        return Err(Error::BoundExceeded {
            size: g.vertices().len(),
            bound,
        });
    }
    let mut best: Option<BTreeSet<Symbol>> = None;
    // The family iterates in lexicographic order, so keeping the first set of
    // each strictly larger size realizes the tie-break.
    for set in all_maximal_independent_sets(g) {
        if best.as_ref().is_none_or(|b| set.len() > b.len()) {
            best = Some(set);
        }
    }
    Ok(best.expect("nonempty graph has a maximal independent set"))
}

/// Decomposition of the vertex set into independent groups; an empty graph
/// yields an empty collection.
///
/// Approx mode extracts a clique-removal set, deletes it and repeats. Exact
/// mode searches for a partition with the fewest groups: greedily taking a
/// maximum independent set first can strand the rest (on the path a-b-d-c
/// the maximum set {a, c} leaves the edge b-d behind, three groups instead
/// of the optimal {a, d}, {b, c}), so the group count would not be minimal.
pub fn decompose_into_independent_sets(
    g: &UGraph,
    solver: MisSolver,
) -> Result<Vec<BTreeSet<Symbol>>> {
    match solver {
        MisSolver::Approx => {
            let mut groups = Vec::new();
            let mut remaining = g.vertices().clone();
            while !remaining.is_empty() {
                let induced = induced_subgraph(g, &remaining);
                let group = approx_max_independent_set(&induced)?;
                for v in &group {
                    remaining.remove(v);
                }
                groups.push(group);
            }
            Ok(groups)
        }
        MisSolver::Exact => {
            if g.vertices().len() > EXACT_MIS_BOUND {
                return Err(Error::BoundExceeded {
                    size: g.vertices().len(),
                    bound: EXACT_MIS_BOUND,
                });
            }
            Ok(optimal_independent_partition(g))
        }
    }
}

/// Partition key: fewest groups, then the greatest descending size profile,
/// then the lexicographically smallest group sequence.
type PartitionKey = (usize, Vec<usize>, Vec<Vec<Symbol>>);

fn partition_key(groups: &[BTreeSet<Symbol>]) -> PartitionKey {
    let mut ordered: Vec<Vec<Symbol>> = groups
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    ordered.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let profile: Vec<usize> = ordered.iter().map(Vec::len).collect();
    (groups.len(), profile, ordered)
}

fn key_improves(candidate: &PartitionKey, best: &PartitionKey) -> bool {
    candidate.0 < best.0
        || (candidate.0 == best.0
            && (candidate.1 > best.1 || (candidate.1 == best.1 && candidate.2 < best.2)))
}

/// Branch-and-bound over the smallest uncovered vertex: some optimal
/// partition always puts it in a group that is a maximal independent set of
/// the residual graph, so those are the only candidates tried.
fn optimal_independent_partition(g: &UGraph) -> Vec<BTreeSet<Symbol>> {
    fn descend(
        g: &UGraph,
        remaining: &BTreeSet<Symbol>,
        current: &mut Vec<BTreeSet<Symbol>>,
        best: &mut Option<(PartitionKey, Vec<BTreeSet<Symbol>>)>,
    ) {
        if remaining.is_empty() {
            let key = partition_key(current);
            if best.as_ref().is_none_or(|(b, _)| key_improves(&key, b)) {
                *best = Some((key, current.clone()));
            }
            return;
        }
        if let Some((bound, _)) = best {
            if current.len() + 1 > bound.0 {
                return;
            }
        }
        let pivot = *remaining.iter().next().expect("nonempty");
        let mut base = remaining.clone();
        base.remove(&pivot);
        for n in g.neighbors(pivot) {
            base.remove(&n);
        }
        for extension in all_maximal_independent_sets(&induced_subgraph(g, &base)) {
            let mut group = extension;
            group.insert(pivot);
            let next: BTreeSet<Symbol> = remaining.difference(&group).copied().collect();
            current.push(group);
            descend(g, &next, current, best);
            current.pop();
        }
    }

    let mut best = None;
    descend(g, g.vertices(), &mut Vec::new(), &mut best);
    match best {
        Some((key, _)) => key.2.into_iter().map(|v| v.into_iter().collect()).collect(),
        None => Vec::new(),
    }
}

fn induced_subgraph(g: &UGraph, within: &BTreeSet<Symbol>) -> UGraph {
    let mut sub = UGraph::new(g.alphabet().clone());
    for &v in within {
        sub.add_vertex(v);
        for n in g.neighbors(v) {
            if within.contains(&n) {
                sub.add_edge(v, n);
            }
        }
    }
    sub
}

/// A directed graph over symbols, without self-loops. Tracks predecessors so
/// path surgery and degree queries stay cheap.
#[derive(Clone, Debug)]
pub struct Digraph {
    alphabet: Alphabet,
    vertices: BTreeSet<Symbol>,
    succ: BTreeMap<Symbol, BTreeSet<Symbol>>,
    pred: BTreeMap<Symbol, BTreeSet<Symbol>>,
}

impl Digraph {
    pub fn new(alphabet: Alphabet) -> Digraph {
        Digraph {
            alphabet,
            vertices: BTreeSet::new(),
            succ: BTreeMap::new(),
            pred: BTreeMap::new(),
        }
    }

    /// The subgraph induced by `within` using `pairs` as arcs.
    pub fn induced_by_pairs(
        alphabet: Alphabet,
        within: &BTreeSet<Symbol>,
        pairs: &PairSet,
    ) -> Digraph {
        let mut g = Digraph::new(alphabet);
        for &v in within {
            g.add_vertex(v);
        }
        for (u, v) in pairs.restricted_to(within) {
            g.add_arc(u, v);
        }
        g
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_vertex(&mut self, v: Symbol) {
        self.vertices.insert(v);
        self.succ.entry(v).or_default();
        self.pred.entry(v).or_default();
    }

    pub fn add_arc(&mut self, u: Symbol, v: Symbol) {
        if u == v {
            return;
        }
        self.add_vertex(u);
        self.add_vertex(v);
        self.succ.get_mut(&u).expect("added").insert(v);
        self.pred.get_mut(&v).expect("added").insert(u);
    }

    pub fn remove_arc(&mut self, u: Symbol, v: Symbol) {
        if let Some(s) = self.succ.get_mut(&u) {
            s.remove(&v);
        }
        if let Some(p) = self.pred.get_mut(&v) {
            p.remove(&u);
        }
    }

    pub fn remove_vertex(&mut self, v: Symbol) {
        let outgoing: Vec<Symbol> = self.successors(v).collect();
        for w in outgoing {
            self.remove_arc(v, w);
        }
        let incoming: Vec<Symbol> = self.predecessors(v).collect();
        for w in incoming {
            self.remove_arc(w, v);
        }
        self.vertices.remove(&v);
        self.succ.remove(&v);
        self.pred.remove(&v);
    }

    pub fn vertices(&self) -> &BTreeSet<Symbol> {
        &self.vertices
    }

    pub fn has_arc(&self, u: Symbol, v: Symbol) -> bool {
        self.succ.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn successors(&self, v: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.succ.get(&v).into_iter().flatten().copied()
    }

    pub fn predecessors(&self, v: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.pred.get(&v).into_iter().flatten().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.succ
            .iter()
            .flat_map(|(&u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.succ.values().map(BTreeSet::len).sum()
    }

    /// Reachability; every vertex reaches itself.
    pub fn has_path(&self, from: Symbol, to: Symbol) -> bool {
        if from == to {
            return true;
        }
        self.descendants(from).contains(&to)
    }

    /// All vertices reachable from `v`, including `v`.
    pub fn descendants(&self, v: Symbol) -> BTreeSet<Symbol> {
        self.closure(v, false)
    }

    /// All vertices that reach `v`, including `v`.
    pub fn ancestors(&self, v: Symbol) -> BTreeSet<Symbol> {
        self.closure(v, true)
    }

    fn closure(&self, v: Symbol, reverse: bool) -> BTreeSet<Symbol> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let next = if reverse {
                self.pred.get(&u)
            } else {
                self.succ.get(&u)
            };
            for &w in next.into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Kahn's algorithm with a min-heap: among the ready vertices the
    /// lexicographically smallest goes next. On a cycle the error carries one
    /// witness.
    pub fn topological_sort(&self) -> Result<Vec<Symbol>> {
        let mut indeg: BTreeMap<Symbol, usize> = self
            .vertices
            .iter()
            .map(|&v| (v, self.pred.get(&v).map_or(0, BTreeSet::len)))
            .collect();
        let mut heap: BinaryHeap<Reverse<Symbol>> = indeg
            .iter()
            .filter(|&(_, &d)| d == 0)
            .map(|(&v, _)| Reverse(v))
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for w in self.successors(v) {
                let d = indeg.get_mut(&w).expect("known vertex");
                *d -= 1;
                if *d == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() == self.vertices.len() {
            Ok(order)
        } else {
            let witness = self.find_cycle().expect("incomplete sort implies a cycle");
            Err(Error::Cycle {
                witness: witness
                    .iter()
                    .map(|&v| self.alphabet.name(v).to_string())
                    .collect(),
            })
        }
    }

    /// One directed cycle, as the vertex sequence `v0 -> v1 -> ... -> v0`,
    /// rotated so the smallest vertex comes first; `None` if acyclic.
    pub fn find_cycle(&self) -> Option<Vec<Symbol>> {
        #[derive(PartialEq, Clone, Copy)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color: BTreeMap<Symbol, Color> =
            self.vertices.iter().map(|&v| (v, Color::White)).collect();
        let mut stack: Vec<Symbol> = Vec::new();

        // Iterative DFS; `frames` mirrors the recursion.
        for &start in &self.vertices {
            if color[&start] != Color::White {
                continue;
            }
            let mut frames: Vec<(Symbol, Vec<Symbol>)> = vec![(
                start,
                self.successors(start).collect(),
            )];
            color.insert(start, Color::Gray);
            stack.push(start);
            while let Some((v, pending)) = frames.last_mut() {
                if let Some(w) = pending.pop() {
                    match color[&w] {
                        Color::Gray => {
                            let pos = stack.iter().position(|&x| x == w).expect("gray on stack");
                            let mut cycle = stack[pos..].to_vec();
                            let min_pos = cycle
                                .iter()
                                .enumerate()
                                .min_by_key(|&(_, &s)| s)
                                .map(|(i, _)| i)
                                .expect("cycle nonempty");
                            cycle.rotate_left(min_pos);
                            return Some(cycle);
                        }
                        Color::White => {
                            color.insert(w, Color::Gray);
                            stack.push(w);
                            frames.push((w, self.successors(w).collect()));
                        }
                        Color::Black => {}
                    }
                } else {
                    color.insert(*v, Color::Black);
                    stack.pop();
                    frames.pop();
                }
            }
        }
        None
    }

    /// Every simple path from an in-degree-zero vertex to an out-degree-zero
    /// vertex, lexicographically ordered. Isolated vertices yield length-one
    /// paths. Errors on cycles.
    pub fn all_source_sink_paths(&self) -> Result<Vec<Vec<Symbol>>> {
        self.topological_sort()?;
        let mut paths = Vec::new();
        let sources: Vec<Symbol> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| self.pred.get(v).is_none_or(BTreeSet::is_empty))
            .collect();
        for src in sources {
            let mut path = vec![src];
            self.extend_paths(&mut path, &mut paths)?;
        }
        paths.sort();
        Ok(paths)
    }

    fn extend_paths(&self, path: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) -> Result<()> {
        let last = *path.last().expect("path nonempty");
        let succs: Vec<Symbol> = self.successors(last).collect();
        if succs.is_empty() {
            if out.len() >= MAX_PATHS {
                return Err(Error::TooManyPaths(MAX_PATHS));
            }
            out.push(path.clone());
            return Ok(());
        }
        for w in succs {
            path.push(w);
            self.extend_paths(path, out)?;
            path.pop();
        }
        Ok(())
    }
}
