//! Helpers shared by the integration suites.

// Each suite pulls in the subset it needs.
#![allow(dead_code)]

use proptest::prelude::*;
use rewb::byteset::ByteSet;
use rewb::{Alphabet, Nfa, RegexAst, StateSet};

pub fn ab() -> Alphabet {
    Alphabet::from_bytes(b"ab")
}

/// All strings over `bytes` of length at most `max_len`, shortest first.
pub fn all_strings(bytes: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &b in bytes {
                let mut t = s.clone();
                t.push(b);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Strategy for random syntax trees whose literals come from `literals`.
pub fn ast_strategy(literals: &'static [u8]) -> impl Strategy<Value = RegexAst> {
    let lits = literals.to_vec();
    let class = proptest::collection::vec(proptest::sample::select(lits.clone()), 1..=2)
        .prop_flat_map(|chosen| {
            let set: ByteSet = chosen.into_iter().collect();
            prop_oneof![Just(false), Just(true)]
                .prop_map(move |negated| RegexAst::Class { set, negated })
        });
    let leaf = prop_oneof![
        1 => Just(RegexAst::Empty),
        1 => Just(RegexAst::AnyByte),
        1 => class,
        4 => proptest::sample::select(lits).prop_map(RegexAst::Literal),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            3 => proptest::collection::vec(inner.clone(), 2..=3).prop_map(RegexAst::Concat),
            2 => proptest::collection::vec(inner.clone(), 2..=2).prop_map(RegexAst::Alternation),
            1 => inner.clone().prop_map(|a| RegexAst::Star(Box::new(a))),
            1 => inner.clone().prop_map(|a| RegexAst::Plus(Box::new(a))),
            1 => inner.prop_map(|a| RegexAst::Optional(Box::new(a))),
        ]
    })
}

/// Strategy for subjects over {a, b} up to `max_len` bytes.
pub fn subject_strategy(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(proptest::sample::select(b"ab".to_vec()), 0..=max_len)
}

fn byte_matches(ast: &RegexAst, b: u8, alphabet: &Alphabet) -> bool {
    match ast {
        RegexAst::Literal(c) => b == *c,
        RegexAst::AnyByte => alphabet.contains(b),
        RegexAst::Class { set, negated } => {
            if *negated {
                alphabet.contains(b) && !set.contains(b)
            } else {
                set.contains(b)
            }
        }
        _ => unreachable!("not a single-byte node"),
    }
}

/// Reference acceptance by structural recursion on the tree: `table[i][j]`
/// says whether the node matches `w[i..j]` (0-based, exclusive).  Built
/// without any automaton so it can stand against the compiled one.
pub fn lang_table(ast: &RegexAst, w: &[u8], alphabet: &Alphabet) -> Vec<Vec<bool>> {
    let n = w.len();
    let mut table = vec![vec![false; n + 1]; n + 1];
    match ast {
        RegexAst::Empty => {
            for (i, row) in table.iter_mut().enumerate() {
                row[i] = true;
            }
        }
        RegexAst::Literal(_) | RegexAst::AnyByte | RegexAst::Class { .. } => {
            for i in 0..n {
                table[i][i + 1] = byte_matches(ast, w[i], alphabet);
            }
        }
        RegexAst::Concat(children) => {
            let parts: Vec<_> = children.iter().map(|c| lang_table(c, w, alphabet)).collect();
            for i in 0..=n {
                // reach[j]: some split of w[i..j] across the children seen so far
                let mut reach = vec![false; n + 1];
                reach[i] = true;
                for part in &parts {
                    let mut next = vec![false; n + 1];
                    for j in i..=n {
                        if reach[j] {
                            for (k, cell) in next.iter_mut().enumerate().skip(j) {
                                *cell |= part[j][k];
                            }
                        }
                    }
                    reach = next;
                }
                table[i] = reach;
            }
        }
        RegexAst::Alternation(children) => {
            for child in children {
                let part = lang_table(child, w, alphabet);
                for i in 0..=n {
                    for j in 0..=n {
                        table[i][j] |= part[i][j];
                    }
                }
            }
        }
        RegexAst::Star(child) | RegexAst::Plus(child) => {
            let part = lang_table(child, w, alphabet);
            // closure over nonempty child matches; empty ones add nothing
            for i in (0..=n).rev() {
                table[i][i] = true;
                for j in i..=n {
                    if table[i][j] {
                        for k in j + 1..=n {
                            if part[j][k] {
                                table[i][k] = true;
                            }
                        }
                    }
                }
            }
            if matches!(ast, RegexAst::Plus(_)) {
                let star = table;
                table = vec![vec![false; n + 1]; n + 1];
                for i in 0..=n {
                    for j in i..=n {
                        if part[i][j] {
                            for k in j..=n {
                                table[i][k] |= star[j][k];
                            }
                        }
                    }
                }
            }
        }
        RegexAst::Optional(child) => {
            table = lang_table(child, w, alphabet);
            for (i, row) in table.iter_mut().enumerate() {
                row[i] = true;
            }
        }
    }
    table
}

/// Reference acceptance of the whole subject.
pub fn lang_matches(ast: &RegexAst, w: &[u8], alphabet: &Alphabet) -> bool {
    lang_table(ast, w, alphabet)[0][w.len()]
}

/// The ε-closure of a pseudorandom subset of the automaton's states.
pub fn random_closed_set<R: rand::Rng>(rng: &mut R, nfa: &Nfa) -> StateSet {
    let mut set = nfa.empty_set();
    for q in 0..nfa.state_count() as u32 {
        if rng.gen_bool(0.3) {
            set.insert(q);
        }
    }
    nfa.eps_closure(&set)
}

/// Renders a state set for assertion messages.
pub fn show(set: &StateSet) -> Vec<u32> {
    set.iter().collect()
}
