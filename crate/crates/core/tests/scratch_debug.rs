// Temporary debugging driver; not part of the deliverable.
mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sire_core::*;

#[test]
fn debug_criterion_12() {
    let truth = parse_sire("a1* a2 a3? & b1 b2+ b3 & c1? c2 c3 c4*").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let words: Vec<Vec<String>> = (0..50)
        .map(|_| common::sample_word(&mut rng, &truth))
        .collect();
    let e = ExampleSet::from_words(words).unwrap();
    let (l2, constraint) = tran_reduction(&e);
    println!("alphabet: {:?}", e.alphabet().names().collect::<Vec<_>>());
    println!(
        "constraint ({}): {:?}",
        constraint.len(),
        constraint
            .iter()
            .map(|(u, v)| format!("{}-{}", e.alphabet().name(u), e.alphabet().name(v)))
            .collect::<Vec<_>>()
    );
    println!(
        "l2 ({}): {:?}",
        l2.len(),
        l2.iter()
            .map(|(u, v)| format!("{}<{}", e.alphabet().name(u), e.alphabet().name(v)))
            .collect::<Vec<_>>()
    );
    let mut state = DagState::new(e.alphabet().clone(), tran_reduction(&e).1);
    for w in e.words() {
        state.consistent(w);
    }
    println!(
        "arcs: {:?}",
        state
            .graph()
            .arcs()
            .map(|(u, v)| format!("{}->{}", e.alphabet().name(u), e.alphabet().name(v)))
            .collect::<Vec<_>>()
    );
    let (p, q) = state.violations();
    for (i, (pp, qq)) in p.iter().zip(q).enumerate() {
        println!(
            "record {i}: [{}] | [{}]",
            e.alphabet().render(pp, " "),
            e.alphabet().render(qq, " ")
        );
    }
    let paths = state.graph().all_source_sink_paths().unwrap();
    println!(
        "paths: {:?}",
        paths
            .iter()
            .map(|p| e.alphabet().render(p, " "))
            .collect::<Vec<_>>()
    );
    let blocks = repair_partitions(e.alphabet(), &paths, &constraint);
    println!(
        "blocks: {:?}",
        blocks
            .iter()
            .map(|b| b
                .iter()
                .map(|&s| e.alphabet().name(s))
                .collect::<Vec<_>>()
                .join(" "))
            .collect::<Vec<_>>()
    );
    let inf = con_dag(&e).unwrap();
    println!("sire: {}", inf.sire);
    println!("oracle-ish: conminer exact:");
    let ex = con_miner(&e, MisSolver::Exact).unwrap();
    println!("exact sire: {}", ex.sire);
}
