//! Helpers shared by the integration suites: a brute-force shuffle-language
//! oracle that never touches the matcher, plus seeded sample generators.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sire_core::{ExampleSet, Op, Sire};

/// Expands the language of a SIRE restricted to at most `cap` occurrences
/// per symbol, by direct shuffle of the factor languages. Independent of the
/// membership implementation: works purely on the factor structure.
pub fn shuffle_expansion(sire: &Sire, cap: u32) -> BTreeSet<Vec<String>> {
    let mut acc: BTreeSet<Vec<String>> = BTreeSet::from([Vec::new()]);
    for factor in sire.named_factors() {
        let mut lang: BTreeSet<Vec<String>> = BTreeSet::from([Vec::new()]);
        for (name, op) in factor {
            let mut grown = BTreeSet::new();
            for word in &lang {
                for count in 0..=cap {
                    if op.admits(count) {
                        let mut next = word.clone();
                        next.extend(std::iter::repeat_n(name.clone(), count as usize));
                        grown.insert(next);
                    }
                }
            }
            lang = grown;
        }
        let mut merged = BTreeSet::new();
        for left in &acc {
            for right in &lang {
                shuffle_into(left, right, &mut Vec::new(), &mut merged);
            }
        }
        acc = merged;
    }
    acc
}

fn shuffle_into(
    left: &[String],
    right: &[String],
    prefix: &mut Vec<String>,
    out: &mut BTreeSet<Vec<String>>,
) {
    if left.is_empty() && right.is_empty() {
        out.insert(prefix.clone());
        return;
    }
    if let Some((head, rest)) = left.split_first() {
        prefix.push(head.clone());
        shuffle_into(rest, right, prefix, out);
        prefix.pop();
    }
    if let Some((head, rest)) = right.split_first() {
        prefix.push(head.clone());
        shuffle_into(left, rest, prefix, out);
        prefix.pop();
    }
}

/// Every word over `names` in which each symbol occurs at most `cap` times.
pub fn words_with_counts_up_to(names: &[String], cap: u32) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut counts = vec![0u32; names.len()];
    let mut current = Vec::new();
    fn grow(
        names: &[String],
        cap: u32,
        counts: &mut Vec<u32>,
        current: &mut Vec<String>,
        out: &mut Vec<Vec<String>>,
    ) {
        out.push(current.clone());
        for i in 0..names.len() {
            if counts[i] < cap {
                counts[i] += 1;
                current.push(names[i].clone());
                grow(names, cap, counts, current, out);
                current.pop();
                counts[i] -= 1;
            }
        }
    }
    grow(names, cap, &mut counts, &mut current, &mut out);
    out
}

/// A random sample over at most `max_alphabet` single-letter symbols.
pub fn random_example_set(
    rng: &mut ChaCha8Rng,
    max_alphabet: usize,
    max_words: usize,
    max_len: usize,
) -> ExampleSet {
    let n = rng.random_range(1..=max_alphabet);
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let word_count = rng.random_range(1..=max_words);
    let words: Vec<Vec<String>> = (0..word_count)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            (0..len)
                .map(|_| names[rng.random_range(0..n)].clone())
                .collect()
        })
        .collect();
    ExampleSet::from_words(words).expect("word collection is nonempty")
}

/// Samples one word of `sire`'s language: per-factor words drawn from the
/// operator ranges, then randomly interleaved.
pub fn sample_word(rng: &mut ChaCha8Rng, sire: &Sire) -> Vec<String> {
    let mut factor_words: Vec<Vec<String>> = sire
        .named_factors()
        .into_iter()
        .map(|factor| {
            let mut word = Vec::new();
            for (name, op) in factor {
                let count = match op {
                    Op::One => 1,
                    Op::Opt => rng.random_range(0..=1),
                    Op::Plus => rng.random_range(1..=2),
                    Op::Star => rng.random_range(0..=2),
                };
                word.extend(std::iter::repeat_n(name, count as usize));
            }
            word
        })
        .collect();
    let mut merged = Vec::new();
    loop {
        factor_words.retain(|w| !w.is_empty());
        if factor_words.is_empty() {
            return merged;
        }
        let pick = rng.random_range(0..factor_words.len());
        merged.push(factor_words[pick].remove(0));
    }
}
