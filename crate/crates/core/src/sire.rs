//! The expression types: factors, SIREs and chain partitions (CPOS), plus
//! the canonical text representation.
//!
//! A SIRE is a set of factors combined by `&`. Each factor is a chain of
//! symbols carrying a multiplicity operator, and every symbol occurs at most
//! once in the whole expression. The text form writes one factor as
//! whitespace-separated terms (`a* b c?`) and joins factors with `&`.

use std::fmt;

use crate::alphabet::{validate_symbol_name, Alphabet, Symbol};
use crate::error::{Error, Result};

/// Multiplicity operator attached to a symbol.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum Op {
    /// Exactly one occurrence; printed as the bare symbol.
    One,
    /// Zero or one (`?`).
    Opt,
    /// One or more (`+`).
    Plus,
    /// Zero or more (`*`).
    Star,
}

impl Op {
    pub fn admits(self, count: u32) -> bool {
        match self {
            Op::One => count == 1,
            Op::Opt => count <= 1,
            Op::Plus => count >= 1,
            Op::Star => true,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Op::One => "",
            Op::Opt => "?",
            Op::Plus => "+",
            Op::Star => "*",
        }
    }

    /// One-character spelling used by the JSON emission (`One` is `"1"`).
    pub fn as_str(self) -> &'static str {
        match self {
            Op::One => "1",
            Op::Opt => "?",
            Op::Plus => "+",
            Op::Star => "*",
        }
    }

    pub fn from_str_token(s: &str) -> Option<Op> {
        match s {
            "1" => Some(Op::One),
            "?" => Some(Op::Opt),
            "+" => Some(Op::Plus),
            "*" => Some(Op::Star),
            _ => None,
        }
    }
}

/// One chain of the expression: a nonempty sequence of distinct symbols,
/// each with its operator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    terms: Vec<(Symbol, Op)>,
}

impl Factor {
    pub fn new(terms: Vec<(Symbol, Op)>) -> Result<Factor> {
        if terms.is_empty() {
            return Err(Error::ChainMismatch("empty factor".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(sym, _) in &terms {
            if !seen.insert(sym) {
                return Err(Error::ChainMismatch(format!(
                    "symbol #{} repeated within a factor",
                    sym.id()
                )));
            }
        }
        Ok(Factor { terms })
    }

    pub fn terms(&self) -> &[(Symbol, Op)] {
        &self.terms
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms.iter().map(|&(s, _)| s)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn min_symbol(&self) -> Symbol {
        self.symbols().min().expect("factor is nonempty")
    }
}

/// A restricted regular expression with interleaving, in canonical form:
/// factors are ordered by their lexicographically smallest member symbol.
#[derive(Clone, Debug)]
pub struct Sire {
    alphabet: Alphabet,
    factors: Vec<Factor>,
}

impl Sire {
    pub fn new(alphabet: Alphabet, mut factors: Vec<Factor>) -> Result<Sire> {
        if factors.is_empty() {
            return Err(Error::ChainMismatch("expression has no factors".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for factor in &factors {
            for sym in factor.symbols() {
                debug_assert!(alphabet.contains_symbol(sym));
                if !seen.insert(sym) {
                    return Err(Error::DuplicateSymbol(alphabet.name(sym).to_string()));
                }
            }
        }
        factors.sort_by_key(Factor::min_symbol);
        Ok(Sire { alphabet, factors })
    }

    /// Builds a SIRE from factors given by name; the alphabet is derived from
    /// the names themselves.
    pub fn from_named_factors(factors: Vec<Vec<(String, Op)>>) -> Result<Sire> {
        let mut names: Vec<String> = Vec::new();
        for factor in &factors {
            for (name, _) in factor {
                validate_symbol_name(name)?;
                names.push(name.clone());
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        if let Some(dup) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSymbol(dup[0].clone()));
        }
        let alphabet = Alphabet::from_names(names)?;
        let factors = factors
            .into_iter()
            .map(|terms| {
                Factor::new(
                    terms
                        .into_iter()
                        .map(|(name, op)| (alphabet.symbol(&name).expect("interned"), op))
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Sire::new(alphabet, factors)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Factors as `(name, op)` rows, in canonical order.
    pub fn named_factors(&self) -> Vec<Vec<(String, Op)>> {
        self.factors
            .iter()
            .map(|f| {
                f.terms()
                    .iter()
                    .map(|&(s, op)| (self.alphabet.name(s).to_string(), op))
                    .collect()
            })
            .collect()
    }

    /// Membership check for a word given by symbol names. Unknown names are
    /// simply not part of the language.
    pub fn accepts_names<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut mapped = Vec::with_capacity(word.len());
        for name in word {
            match self.alphabet.symbol(name.as_ref()) {
                Some(sym) => mapped.push(sym),
                None => return false,
            }
        }
        crate::lang::sire_membership(&mapped, &self.alphabet, self)
    }

    /// Membership for single-character symbol words, e.g. `"aadbc"`.
    pub fn accepts_chars(&self, word: &str) -> bool {
        let names: Vec<String> = word.chars().map(String::from).collect();
        self.accepts_names(&names)
    }
}

/// Structural equality: same factors over the same symbol names, operators
/// included. Alphabets may be distinct allocations.
impl PartialEq for Sire {
    fn eq(&self, other: &Self) -> bool {
        self.named_factors() == other.named_factors()
    }
}

impl Eq for Sire {}

impl fmt::Display for Sire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for factor in &self.factors {
            if !first {
                f.write_str(" & ")?;
            }
            first = false;
            let mut first_term = true;
            for &(sym, op) in factor.terms() {
                if !first_term {
                    f.write_str(" ")?;
                }
                first_term = false;
                f.write_str(self.alphabet.name(sym))?;
                f.write_str(op.suffix())?;
            }
        }
        Ok(())
    }
}

/// Canonical text for a SIRE; inverse of [`parse_sire`] up to canonical form.
pub fn format_sire(sire: &Sire) -> String {
    sire.to_string()
}

/// Parses the SIRE text grammar:
/// `sire := factor ("&" factor)* ; factor := (symbol op?)+ ; op := "?"|"+"|"*"`.
///
/// Terms are whitespace-separated; an operator attaches directly to the
/// symbol it follows.
pub fn parse_sire(text: &str) -> Result<Sire> {
    let mut factors: Vec<Vec<(String, Op)>> = vec![Vec::new()];
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch == '&' {
            chars.next();
            if factors.last().expect("nonempty").is_empty() {
                return Err(Error::Syntax {
                    pos,
                    msg: "`&` with no factor before it".into(),
                });
            }
            factors.push(Vec::new());
        } else if matches!(ch, '?' | '+' | '*') {
            return Err(Error::Syntax {
                pos,
                msg: format!("operator `{ch}` must directly follow a symbol"),
            });
        } else if matches!(ch, '(' | ')' | '|') {
            return Err(Error::Syntax {
                pos,
                msg: format!("reserved character `{ch}`"),
            });
        } else {
            // A symbol token, optionally followed by an operator character.
            let start = pos;
            let mut end = pos;
            while let Some(&(p, c)) = chars.peek() {
                if c.is_whitespace() || matches!(c, '&' | '?' | '+' | '*' | '(' | ')' | '|') {
                    break;
                }
                end = p + c.len_utf8();
                chars.next();
            }
            let name = &text[start..end];
            let op = match chars.peek() {
                Some(&(_, '?')) => {
                    chars.next();
                    Op::Opt
                }
                Some(&(_, '+')) => {
                    chars.next();
                    Op::Plus
                }
                Some(&(_, '*')) => {
                    chars.next();
                    Op::Star
                }
                _ => Op::One,
            };
            factors
                .last_mut()
                .expect("nonempty")
                .push((name.to_string(), op));
        }
    }
    let last_empty = factors.last().expect("nonempty").is_empty();
    if factors.len() == 1 && last_empty {
        return Err(Error::Syntax {
            pos: text.len(),
            msg: "empty expression".into(),
        });
    }
    if last_empty {
        return Err(Error::Syntax {
            pos: text.len(),
            msg: "trailing `&` with no factor after it".into(),
        });
    }
    Sire::from_named_factors(factors)
}

/// An ordered partition of an alphabet into chains: the pre-operator
/// skeleton of a SIRE.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cpos {
    alphabet: Alphabet,
    chains: Vec<Vec<Symbol>>,
}

impl Cpos {
    /// Validates that the chains are pairwise disjoint and jointly cover the
    /// alphabet.
    pub fn new(alphabet: Alphabet, chains: Vec<Vec<Symbol>>) -> Result<Cpos> {
        let mut seen = std::collections::BTreeSet::new();
        for chain in &chains {
            if chain.is_empty() {
                return Err(Error::ChainMismatch("empty chain".into()));
            }
            for &sym in chain {
                if !alphabet.contains_symbol(sym) {
                    return Err(Error::ChainMismatch(format!(
                        "symbol #{} outside the alphabet",
                        sym.id()
                    )));
                }
                if !seen.insert(sym) {
                    return Err(Error::ChainMismatch(format!(
                        "symbol `{}` occurs in two chains",
                        alphabet.name(sym)
                    )));
                }
            }
        }
        if seen.len() != alphabet.len() {
            let missing: Vec<_> = alphabet
                .symbols()
                .filter(|s| !seen.contains(s))
                .map(|s| alphabet.name(s).to_string())
                .collect();
        return Err(Error::ChainMismatch(format!(
                "chains do not cover: missing {}",
                missing.join(", ")
            )));
        }
        Ok(Cpos { alphabet, chains })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn chains(&self) -> &[Vec<Symbol>] {
        &self.chains
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Chain lengths sorted descending.
    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.chains.iter().map(Vec::len).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// Chains as name sequences, each chain space-joined, sorted by first
    /// symbol; used for display and structural comparison.
    pub fn chain_texts(&self) -> Vec<String> {
        let mut texts: Vec<(Symbol, String)> = self
            .chains
            .iter()
            .map(|c| (c[0], self.alphabet.render(c, " ")))
            .collect();
        texts.sort();
        texts.into_iter().map(|(_, t)| t).collect()
    }
}

impl fmt::Display for Cpos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.chain_texts().join(" & "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor_names(sire: &Sire) -> Vec<Vec<(String, Op)>> {
        sire.named_factors()
    }

    #[test]
    fn parses_the_worked_expression() {
        let s = parse_sire("a* b c? & d+").unwrap();
        let expected = vec![
            vec![
                ("a".to_string(), Op::Star),
                ("b".to_string(), Op::One),
                ("c".to_string(), Op::Opt),
            ],
            vec![("d".to_string(), Op::Plus)],
        ];
        assert_eq!(factor_names(&s), expected);
        assert_eq!(format_sire(&s), "a* b c? & d+");
    }

    #[test]
    fn parses_a_single_symbol() {
        let s = parse_sire("a").unwrap();
        assert_eq!(factor_names(&s), vec![vec![("a".to_string(), Op::One)]]);
        assert_eq!(s.to_string(), "a");
    }

    #[test]
    fn rejects_duplicate_symbols_naming_them() {
        match parse_sire("a b & a") {
            Err(Error::DuplicateSymbol(name)) => assert_eq!(name, "a"),
            other => panic!("expected duplicate-symbol error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_sire("a b & & c") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_sire(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_sire("a ?"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_sire("(a)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_sire("a &"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn canonical_order_is_by_smallest_member_symbol() {
        let s = parse_sire("d+ & a* b c?").unwrap();
        assert_eq!(s.to_string(), "a* b c? & d+");
        // Compact paper-style text parses too; multi-letter runs are single
        // symbols there, so this only works for one-character names.
        let t = parse_sire("d+&a*").unwrap();
        assert_eq!(t.to_string(), "a* & d+");
    }

    #[test]
    fn parse_format_round_trip() {
        for text in ["a", "a* b c? & d+", "x & y & z", "g1.m1+ g1.m2 & g2.m1*"] {
            let s = parse_sire(text).unwrap();
            let printed = format_sire(&s);
            let reparsed = parse_sire(&printed).unwrap();
            assert_eq!(s, reparsed);
            assert_eq!(printed, format_sire(&reparsed));
        }
    }

    #[test]
    fn cpos_validates_partition() {
        let e = crate::ExampleSet::from_char_words(["abc"]).unwrap();
        let al = e.alphabet().clone();
        let a = al.symbol("a").unwrap();
        let b = al.symbol("b").unwrap();
        let c = al.symbol("c").unwrap();
        assert!(Cpos::new(al.clone(), vec![vec![a, b], vec![c]]).is_ok());
        assert!(Cpos::new(al.clone(), vec![vec![a, b]]).is_err());
        assert!(Cpos::new(al.clone(), vec![vec![a, b], vec![b, c]]).is_err());
        let cp = Cpos::new(al, vec![vec![c], vec![a, b]]).unwrap();
        assert_eq!(cp.to_string(), "a b & c");
        assert_eq!(cp.profile(), vec![2, 1]);
    }
}
