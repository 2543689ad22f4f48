//! Differential testing: the quadratic engine, the per-prefix cubic
//! engine, and the try-every-split search must return identical verdicts
//! on every instance either can express.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rewb::{
    match_rewb, match_rewb_with, right_maximal_repeats, MatchContext, MatchOptions, MatchStats,
    RegexAst, RewbQuery,
};
use rewb_oracle::gen::random_rewb;
use rewb_oracle::{brute_force_match, brute_force_matches, cubic_match, match_fixed, match_summarized};

use common::{ab, all_strings, ast_strategy, subject_strategy};

fn query_strategy() -> impl Strategy<Value = RewbQuery> {
    (
        ast_strategy(b"ab"),
        ast_strategy(b"ab"),
        ast_strategy(b"ab"),
        ast_strategy(b"ab"),
    )
        .prop_map(|(e0, e, e1, e2)| RewbQuery::new(e0, e, e1, e2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(384))]

    #[test]
    fn fast_equals_brute(query in query_strategy(), w in subject_strategy(10)) {
        let expected = brute_force_matches(&query, &w, &ab());
        prop_assert_eq!(
            match_rewb(&query, &w, &ab()),
            expected,
            "pattern {} on {:?}",
            query.to_pattern(),
            String::from_utf8_lossy(&w)
        );
    }

    #[test]
    fn fast_equals_cubic(query in query_strategy(), w in subject_strategy(10)) {
        let fast = match_rewb(&query, &w, &ab());
        let cubic = cubic_match(&query, &w, &ab(), false).matched;
        prop_assert_eq!(fast, cubic, "pattern {}", query.to_pattern());
    }

    // Scanning every repeat instead of stopping at the first hit must
    // never change the verdict, only the work counted.
    #[test]
    fn exhaustive_mode_only_changes_stats(query in query_strategy(), w in subject_strategy(10)) {
        let eager = match_rewb_with(&query, &w, &ab(), &MatchOptions::default());
        let full = match_rewb_with(&query, &w, &ab(), &MatchOptions { exhaustive: true });
        prop_assert_eq!(eager.matched, full.matched, "pattern {}", query.to_pattern());
        prop_assert!(full.stats.repeats >= eager.stats.repeats);
    }

    // On a repeat whose occurrences never overlap, the one-shot
    // summarized scan and the per-prefix scans answer alike.
    #[test]
    fn summarized_scan_equals_per_prefix_scans(
        query in query_strategy(),
        w in subject_strategy(12),
    ) {
        let ctx = MatchContext::new(&query, &w, &ab());
        for record in right_maximal_repeats(&w) {
            if record.max_overlap() != 0 {
                continue;
            }
            let alpha = record.repeat_in(&w);
            let mut steps = 0;
            let per_prefix = (1..=alpha.len())
                .any(|k| match_fixed(&ctx, &alpha[..k], &record.idx, &mut steps));
            prop_assert_eq!(
                match_summarized(&ctx, alpha, &record.idx),
                per_prefix,
                "pattern {} repeat {:?}",
                query.to_pattern(),
                String::from_utf8_lossy(alpha)
            );
        }
    }
}

/// A hand-picked corpus stressing the seams: empty components, captures
/// accepting ε, forced overlaps, anchors on both sides of the reference.
const CORPUS: &[&str] = &[
    "(a)\\1",
    "(a*)\\1",
    "(a+)b\\1",
    "(aa)\\1",
    "a?(aa)\\1",
    "(ab|ba)b*\\1",
    "b*(a+)b\\1b",
    "aa(ab)\\1",
    "aa(ab)\\1b",
    "((?:ab)+a?)x?\\1",
    "((?:a|b)*)\\1",
    "(a(?:a|b))(?:a|b)*\\1",
    "a*(.b)\\1a*",
    "([^a]a)b?\\1",
    "(?:a|b)(ba?)\\1(?:a|b)*",
    "(aba)(?:a|b)\\1",
    "((?:aa)+)\\1",
    "(a)b*\\1b*",
    "(?:)(ab*)\\1(?:)",
    "(b?)a\\1a",
    "((?:ab)*)(?:ba)*\\1",
    "a*(?:ba*)?(?:ba*)?((?:a|b)*)a*ba*ba*ba*(?:ba*ba*)*\\1(?:(?:a|b)(?:a|b))*",
];

#[test]
fn corpus_sweep_over_short_subjects() {
    let alphabet = ab();
    let subjects = all_strings(b"ab", 7);
    for pattern in CORPUS {
        let query = rewb::parse_rewb(pattern).unwrap();
        for w in &subjects {
            let brute = brute_force_matches(&query, w, &alphabet);
            let fast = match_rewb(&query, w, &alphabet);
            let cubic = cubic_match(&query, w, &alphabet, false).matched;
            assert_eq!(fast, brute, "pattern {pattern} on {:?}", String::from_utf8_lossy(w));
            assert_eq!(cubic, brute, "pattern {pattern} on {:?}", String::from_utf8_lossy(w));
        }
    }
}

#[test]
fn witnesses_always_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let alphabet = ab();
    let mut found = 0;
    for _ in 0..600 {
        let query = random_rewb(&mut rng, b"ab", 6);
        let w = rewb_oracle::gen::random_subject(&mut rng, b"ab", 9);
        if let Some(witness) = brute_force_match(&query, &w, &alphabet) {
            assert!(witness.validate(&query, &w, &alphabet));
            found += 1;
        }
    }
    assert!(found > 50, "witness sample too small: {found}");
}

#[test]
fn verdict_is_not_alphabet_order_dependent() {
    // swapping which byte plays "a" must commute with matching
    let swap = |w: &[u8]| -> Vec<u8> {
        w.iter().map(|&b| if b == b'a' { b'b' } else { b'a' }).collect()
    };
    fn swap_ast(ast: &RegexAst) -> RegexAst {
        match ast {
            RegexAst::Empty => RegexAst::Empty,
            RegexAst::Literal(b) => RegexAst::Literal(if *b == b'a' { b'b' } else { b'a' }),
            RegexAst::AnyByte => RegexAst::AnyByte,
            RegexAst::Class { set, negated } => {
                let mapped = set
                    .iter()
                    .map(|b| if b == b'a' { b'b' } else { b'a' })
                    .collect();
                RegexAst::Class { set: mapped, negated: *negated }
            }
            RegexAst::Concat(cs) => RegexAst::Concat(cs.iter().map(swap_ast).collect()),
            RegexAst::Alternation(cs) => RegexAst::Alternation(cs.iter().map(swap_ast).collect()),
            RegexAst::Star(c) => RegexAst::Star(Box::new(swap_ast(c))),
            RegexAst::Plus(c) => RegexAst::Plus(Box::new(swap_ast(c))),
            RegexAst::Optional(c) => RegexAst::Optional(Box::new(swap_ast(c))),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..300 {
        let query = random_rewb(&mut rng, b"ab", 6);
        let w = rewb_oracle::gen::random_subject(&mut rng, b"ab", 10);
        let swapped = RewbQuery::new(
            swap_ast(&query.e0),
            swap_ast(&query.e),
            swap_ast(&query.e1),
            swap_ast(&query.e2),
        );
        assert_eq!(
            match_rewb(&query, &w, &ab()),
            match_rewb(&swapped, &swap(&w), &ab()),
            "pattern {}",
            query.to_pattern()
        );
    }
}

#[test]
fn stats_track_positive_work_on_repetitive_subjects() {
    let query = rewb::parse_rewb("(a+)b\\1").unwrap();
    let w = b"aaaabaaaa";
    let verdict = match_rewb_with(&query, w, &ab(), &MatchOptions { exhaustive: true });
    assert!(verdict.matched);
    assert!(verdict.stats.repeats > 0);
    assert!(verdict.stats.delta_steps() > 0);
    let empty = MatchStats::default();
    assert_eq!(empty.delta_steps(), 0);
}
