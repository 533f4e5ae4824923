//! Inference of restricted regular expressions with interleaving (SIREs)
//! from positive example strings.
//!
//! A SIRE combines concatenation chains with the interleaving operator `&`;
//! every symbol occurs at most once and carries one of the counting operators
//! `1 ? + *`. Such expressions capture unordered XML content models: the
//! relative order inside a chain is fixed while separate chains shuffle
//! freely.
//!
//! The crate offers three inference routes over a sample of words:
//!
//! - [`con_miner`] with [`MisSolver::Approx`]: order mining plus a
//!   clique-removal decomposition of the conflict graph;
//! - [`con_miner`] with [`MisSolver::Exact`]: the same pipeline driven by an
//!   exhaustive maximum-independent-set solver;
//! - [`con_dag`]: incremental DAG construction with chain splitting.
//!
//! A brute-force [`minimal_oracle`] verifies minimality on small alphabets,
//! and [`sire_membership`] decides language membership.

pub mod alphabet;
pub mod condag;
pub mod conminer;
pub mod error;
pub mod graphs;
pub mod ingest;
pub mod lang;
pub mod orders;
pub mod sire;

pub use alphabet::{Alphabet, ExampleSet, Symbol, Word};
pub use condag::{con_dag, repair_partitions, DagState};
pub use conminer::{con_miner, Inference};
pub use error::{Error, Result};
pub use graphs::{
    all_maximal_independent_sets, approx_max_independent_set,
    decompose_into_independent_sets, exact_max_independent_set, Digraph, MisSolver, UGraph,
};
pub use ingest::{read_words, read_words_from, read_xml_corpus, read_xml_strings, WordMode, XmlCorpus};
pub use lang::{
    enumerate_chain_partitions, infer_operators, minimal_oracle, minimal_oracle_bounded,
    sire_membership, Matcher, SymbolStats,
};
pub use orders::{tran_reduction, transitive_closure, PairSet};
pub use sire::{format_sire, parse_sire, Cpos, Factor, Op, Sire};
