//! The heuristic pipeline: build a DAG incrementally while scanning the
//! sample, splitting chains when a word contradicts the order recorded so
//! far, then extract source-to-sink paths, repair them into a partition and
//! finish like the approximation pipeline.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, ExampleSet, Symbol};
use crate::conminer::{chains_from_groups, Inference};
use crate::error::{Error, Result};
use crate::graphs::{decompose_into_independent_sets, Digraph, MisSolver, UGraph};
use crate::lang::infer_operators;
use crate::orders::{tran_reduction, PairSet};
use crate::sire::Cpos;

/// The evolving construction state: the order graph plus the violation
/// records. `p[i]`/`q[i]` are the two halves of the i-th split chain; `s`/`t`
/// are the records created while reading the current word.
#[derive(Clone, Debug)]
pub struct DagState {
    graph: Digraph,
    /// The sample's forbid pairs; a pair observed in both orders. Only these
    /// ever justify breaking a path.
    constraint: PairSet,
    p: Vec<Vec<Symbol>>,
    q: Vec<Vec<Symbol>>,
    s: Vec<Vec<Symbol>>,
    t: Vec<Vec<Symbol>>,
}

impl DagState {
    /// Starts with every alphabet symbol as an isolated vertex, so symbols
    /// that never gain an arc still surface as length-one paths.
    pub fn new(alphabet: Alphabet, constraint: PairSet) -> DagState {
        let mut graph = Digraph::new(alphabet.clone());
        for sym in alphabet.symbols() {
            graph.add_vertex(sym);
        }
        DagState {
            graph,
            constraint,
            p: Vec::new(),
            q: Vec::new(),
            s: Vec::new(),
            t: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// The global violation records `(p, q)`.
    pub fn violations(&self) -> (&[Vec<Symbol>], &[Vec<Symbol>]) {
        (&self.p, &self.q)
    }

    /// The records created while reading the current word; always a suffix
    /// view of [`violations`](DagState::violations).
    pub fn current_word_violations(&self) -> (&[Vec<Symbol>], &[Vec<Symbol>]) {
        (&self.s, &self.t)
    }

    /// True when `a` and `b` sit on opposite sides of the same record.
    fn recorded_opposite(&self, a: Symbol, b: Symbol) -> bool {
        self.p.iter().zip(&self.q).any(|(p, q)| {
            (p.contains(&a) && q.contains(&b)) || (p.contains(&b) && q.contains(&a))
        })
    }

    /// Would the arc `a -> b` connect the two sides of some record? New
    /// connections must route through the new arc, so it suffices to look at
    /// what reaches `a` and what `b` reaches.
    fn would_connect_violation(&self, a: Symbol, b: Symbol) -> bool {
        let ancestors = self.graph.ancestors(a);
        let descendants = self.graph.descendants(b);
        self.p.iter().zip(&self.q).any(|(p, q)| {
            let p_up = p.iter().any(|x| ancestors.contains(x));
            let p_down = p.iter().any(|x| descendants.contains(x));
            let q_up = q.iter().any(|x| ancestors.contains(x));
            let q_down = q.iter().any(|x| descendants.contains(x));
            (p_up && q_down) || (q_up && p_down)
        })
    }

    /// Processes one ordered pair `a` before `b`:
    /// - a path `a ~> b` means the order is already implied, nothing happens;
    /// - a path `b ~> a` contradicts the graph: when the pair really occurs
    ///   in both orders in the sample and is not yet split across a record,
    ///   every such path is broken; a pair the sample never reverses (the
    ///   propagation step can synthesize those) never justifies surgery;
    /// - otherwise the arc is added, unless it would connect the two sides of
    ///   a record.
    pub fn add_or_break(&mut self, a: Symbol, b: Symbol) {
        debug_assert_ne!(a, b, "callers skip self-pairs");
        if self.graph.has_path(a, b) {
            return;
        }
        if self.graph.has_path(b, a) {
            if self.constraint.contains(a, b) && !self.recorded_opposite(a, b) {
                self.break_paths(a, b);
            }
            return;
        }
        if self.would_connect_violation(a, b) {
            return;
        }
        self.graph.add_arc(a, b);
    }

    /// Breaks every path `b ~> a`, one at a time in lexicographic order,
    /// re-checking reachability after each surgery.
    fn break_paths(&mut self, a: Symbol, b: Symbol) {
        while self.graph.has_path(b, a) {
            let path = self.lex_smallest_path(b, a);
            self.break_one_path(&path);
        }
    }

    /// The lexicographically smallest path `from ~> to`; assumes one exists.
    fn lex_smallest_path(&self, from: Symbol, to: Symbol) -> Vec<Symbol> {
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let next = self
                .graph
                .successors(cur)
                .find(|&s| self.graph.has_path(s, to))
                .expect("a path exists");
            path.push(next);
            cur = next;
        }
        path
    }

    /// One surgery. The breakpoint is the first path vertex whose order
    /// against the path start is genuinely ambiguous (a forbid pair with
    /// it); a pair the sample never reverses is never cut apart. The arc
    /// into the breakpoint is deleted, the detached suffix inherits the
    /// start's predecessors, the prefix inherits the end's successors, and
    /// the two halves are appended to the violation records.
    fn break_one_path(&mut self, path: &[Symbol]) {
        let start = path[0];
        let end = *path.last().expect("paths are nonempty");
        let idx = path
            .iter()
            .position(|&v| self.constraint.contains(v, start))
            .expect("the path end conflicts with the start");
        debug_assert!(idx >= 1);

        let prefix = path[..idx].to_vec();
        let suffix = path[idx..].to_vec();
        let preds: Vec<Symbol> = self.graph.predecessors(start).collect();
        let succs: Vec<Symbol> = self.graph.successors(end).collect();

        self.graph.remove_arc(path[idx - 1], path[idx]);
        for beta in preds {
            debug_assert_ne!(beta, path[idx]);
            self.graph.add_arc(beta, path[idx]);
        }
        for gamma in succs {
            debug_assert_ne!(gamma, path[idx - 1]);
            self.graph.add_arc(path[idx - 1], gamma);
        }

        self.p.push(prefix.clone());
        self.q.push(suffix.clone());
        self.s.push(prefix);
        self.t.push(suffix);
    }

    /// Scans one word left to right. Each adjacent pair of distinct symbols
    /// not already settled across a record goes through [`add_or_break`];
    /// when the left symbol belongs to a chain half split off earlier in this
    /// word, the order also propagates from the end of the partner half.
    ///
    /// [`add_or_break`]: DagState::add_or_break
    pub fn consistent(&mut self, w: &[Symbol]) {
        self.s.clear();
        self.t.clear();
        if w.len() < 2 {
            return;
        }
        for i in 0..w.len() - 1 {
            let (a, b) = (w[i], w[i + 1]);
            if a != b && !self.recorded_opposite(a, b) {
                self.add_or_break(a, b);
            }
            // One propagation pass over the records that existed when this
            // position was reached.
            let records = self.s.len();
            for j in 0..records {
                if self.s[j].contains(&a) {
                    let c = *self.t[j].last().expect("records are nonempty");
                    if c != b && !self.recorded_opposite(c, b) {
                        self.add_or_break(c, b);
                    }
                }
                if self.t[j].contains(&a) {
                    let c = *self.s[j].last().expect("records are nonempty");
                    if c != b && !self.recorded_opposite(c, b) {
                        self.add_or_break(c, b);
                    }
                }
            }
        }
        debug_assert!(self.graph.find_cycle().is_none());
        debug_assert_eq!(self.p.len(), self.q.len());
        debug_assert_eq!(self.s.len(), self.t.len());
    }
}

/// Repairs the extracted path collection into a partition: while two
/// sequences overlap and carry a forbid pair between them, the shorter one
/// (ties: the lexicographically later) drops the shared symbols; then
/// sequences sharing symbols merge into blocks. A merged block that still
/// holds a forbid pair inside gets decomposed along its constraint subgraph.
pub fn repair_partitions(
    alphabet: &Alphabet,
    sequences: &[Vec<Symbol>],
    constraint: &PairSet,
) -> Vec<BTreeSet<Symbol>> {
    repair_partitions_counted(alphabet, sequences, constraint).0
}

pub(crate) fn repair_partitions_counted(
    alphabet: &Alphabet,
    sequences: &[Vec<Symbol>],
    constraint: &PairSet,
) -> (Vec<BTreeSet<Symbol>>, usize) {
    let mut seqs: Vec<Vec<Symbol>> = sequences.to_vec();

    let crossing = |x: &[Symbol], y: &[Symbol]| {
        constraint
            .iter()
            .any(|(u, v)| x.contains(&u) && y.contains(&v))
    };
    let overlap = |x: &[Symbol], y: &[Symbol]| -> Vec<Symbol> {
        x.iter().copied().filter(|s| y.contains(s)).collect()
    };

    // Drop phase: longest-first scan, one modification per pass.
    'repair: loop {
        let mut order: Vec<usize> = (0..seqs.len()).collect();
        order.sort_by(|&i, &j| {
            seqs[j]
                .len()
                .cmp(&seqs[i].len())
                .then_with(|| seqs[i].cmp(&seqs[j]))
        });
        for oi in 0..order.len() {
            for oj in oi + 1..order.len() {
                let (i, j) = (order[oi], order[oj]);
                if !crossing(&seqs[i], &seqs[j]) && !crossing(&seqs[j], &seqs[i]) {
                    continue;
                }
                let shared = overlap(&seqs[i], &seqs[j]);
                if shared.is_empty() {
                    continue;
                }
                let victim = if seqs[i].len() != seqs[j].len() {
                    if seqs[i].len() < seqs[j].len() {
                        i
                    } else {
                        j
                    }
                } else if seqs[i] > seqs[j] {
                    i
                } else {
                    j
                };
                seqs[victim].retain(|s| !shared.contains(s));
                continue 'repair;
            }
        }
        break;
    }
    seqs.retain(|s| !s.is_empty());

    // Merge phase: union sequences that share symbols.
    let mut block_of: Vec<usize> = (0..seqs.len()).collect();
    fn root(block_of: &mut Vec<usize>, mut i: usize) -> usize {
        while block_of[i] != i {
            block_of[i] = block_of[block_of[i]];
            i = block_of[i];
        }
        i
    }
    for i in 0..seqs.len() {
        for j in i + 1..seqs.len() {
            if seqs[i].iter().any(|s| seqs[j].contains(s)) {
                let (ri, rj) = (root(&mut block_of, i), root(&mut block_of, j));
                if ri != rj {
                    block_of[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut merged: Vec<BTreeSet<Symbol>> = Vec::new();
    let mut block_index: std::collections::BTreeMap<usize, usize> = Default::default();
    for i in 0..seqs.len() {
        let r = root(&mut block_of, i);
        let at = *block_index.entry(r).or_insert_with(|| {
            merged.push(BTreeSet::new());
            merged.len() - 1
        });
        merged[at].extend(seqs[i].iter().copied());
    }

    // Transitive merging can reunite a forbid pair; split such blocks along
    // their internal constraint subgraph.
    let mut blocks: Vec<BTreeSet<Symbol>> = Vec::new();
    let mut forced_splits = 0;
    for block in merged {
        let internal: Vec<(Symbol, Symbol)> = constraint
            .restricted_to(&block)
            .collect();
        if internal.is_empty() {
            blocks.push(block);
            continue;
        }
        forced_splits += 1;
        let mut g = UGraph::new(alphabet.clone());
        for &v in &block {
            g.add_vertex(v);
        }
        for (u, v) in internal {
            g.add_edge(u, v);
        }
        let groups = decompose_into_independent_sets(&g, MisSolver::Approx)
            .expect("block is nonempty");
        blocks.extend(groups);
    }
    blocks.sort_by_key(|b| b.iter().next().copied());
    (blocks, forced_splits)
}

/// Runs the heuristic pipeline on a sample.
pub fn con_dag(e: &ExampleSet) -> Result<Inference> {
    if e.alphabet().is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let (l2, constraint) = tran_reduction(e);
    let mut state = DagState::new(e.alphabet().clone(), constraint.clone());
    for word in e.words() {
        state.consistent(word);
    }
    let paths = state.graph().all_source_sink_paths()?;
    let (blocks, forced_splits) = repair_partitions_counted(e.alphabet(), &paths, &constraint);
    let (chains, evicted) = chains_from_groups(e.alphabet(), &blocks, &l2);
    let cpos = Cpos::new(e.alphabet().clone(), chains)?;
    let sire = infer_operators(e, &cpos)?;
    Ok(Inference {
        sire,
        cpos,
        evicted,
        forced_splits,
    })
}
