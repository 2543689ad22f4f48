//! Seeded random patterns and subjects for differential testing.

use rand::seq::SliceRandom;
use rand::Rng;
use rewb::byteset::ByteSet;
use rewb::{RegexAst, RewbQuery};

/// A random expression with at most `budget` AST nodes (at least 1).
/// Leaves are biased toward literals so the languages stay varied but
/// nontrivial over small alphabets.
pub fn random_regex<R: Rng>(rng: &mut R, alphabet: &[u8], budget: usize) -> RegexAst {
    debug_assert!(!alphabet.is_empty());
    if budget <= 1 {
        return random_leaf(rng, alphabet);
    }
    let split = 1 + rng.gen_range(0..budget - 1);
    let rest = (budget - 1).saturating_sub(split).max(1);
    match rng.gen_range(0..10) {
        0..=2 => {
            let mut parts = vec![
                random_regex(rng, alphabet, split),
                random_regex(rng, alphabet, rest),
            ];
            parts.retain(|p| !matches!(p, RegexAst::Empty));
            match parts.len() {
                0 => RegexAst::Empty,
                1 => parts.pop().unwrap(),
                _ => RegexAst::Concat(parts),
            }
        }
        3..=4 => RegexAst::Alternation(vec![
            random_regex(rng, alphabet, split),
            random_regex(rng, alphabet, rest),
        ]),
        5 => RegexAst::Star(Box::new(random_regex(rng, alphabet, budget - 1))),
        6 => RegexAst::Plus(Box::new(random_regex(rng, alphabet, budget - 1))),
        7 => RegexAst::Optional(Box::new(random_regex(rng, alphabet, budget - 1))),
        _ => random_leaf(rng, alphabet),
    }
}

fn random_leaf<R: Rng>(rng: &mut R, alphabet: &[u8]) -> RegexAst {
    match rng.gen_range(0..8) {
        0 => RegexAst::Empty,
        1 => RegexAst::AnyByte,
        2 => {
            let mut set = ByteSet::new();
            for _ in 0..rng.gen_range(1..=2) {
                set.insert(*alphabet.choose(rng).unwrap());
            }
            RegexAst::Class {
                set,
                negated: rng.gen_bool(0.25),
            }
        }
        _ => RegexAst::Literal(*alphabet.choose(rng).unwrap()),
    }
}

/// A random query whose four components each stay within `budget`
/// nodes.
pub fn random_rewb<R: Rng>(rng: &mut R, alphabet: &[u8], budget: usize) -> RewbQuery {
    RewbQuery::new(
        random_regex(rng, alphabet, budget),
        random_regex(rng, alphabet, budget),
        random_regex(rng, alphabet, budget),
        random_regex(rng, alphabet, budget),
    )
}

/// A random subject of length 0..=`max_len` over `alphabet`.
pub fn random_subject<R: Rng>(rng: &mut R, alphabet: &[u8], max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}
