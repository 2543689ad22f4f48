//! Per-candidate scan engines, slower but simpler than the main one.
//!
//! [`match_fixed`] decides, for one fixed candidate string and a list
//! of its occurrence starts, whether a match uses that exact string for
//! the backreference.  [`cubic_match`] runs it for every prefix of
//! every right-maximal repeat, giving an O(n^3 m)-style matcher whose
//! verdicts the fast engine must reproduce.

use std::collections::VecDeque;

use rewb::matcher::{MatchContext, MatchStats};
use rewb::repeats::right_maximal_repeats;
use rewb::{Alphabet, RewbQuery, SummaryVector};

/// Decides whether the subject matches with the backreferenced
/// substring equal to `alpha`, given the 1-based starts `idx` of (at
/// least) the usable occurrences of `alpha`.  One simulation of the
/// middle automaton scans the subject; it starts or restarts (by
/// injection) right after every occurrence whose left context satisfies
/// the head expression, and is tested at every later occurrence whose
/// right context satisfies the tail expression.
///
/// Injection positions are queued: with overlapping occurrences several
/// can be pending before the scan reaches the first of them, and
/// dropping one loses matches.
pub fn match_fixed(ctx: &MatchContext, alpha: &[u8], idx: &[usize], steps: &mut usize) -> bool {
    if !ctx.nfa_e().accepts(alpha) {
        return false;
    }
    let nfa = ctx.nfa_e1();
    let w = ctx.subject();
    let mut s = nfa.empty_set();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut armed = false;
    let mut i_prev = 0;
    for &i_next in idx {
        if armed {
            for i in i_prev..i_next {
                if !s.is_empty() {
                    *steps += 1;
                    s = nfa.step(&s, w[i - 1]);
                }
                if queue.front() == Some(&i) {
                    s.union_with(nfa.start_closure());
                    queue.pop_front();
                }
            }
            if nfa.is_accepting(&s) && ctx.suf(i_next + alpha.len()) {
                return true;
            }
        }
        i_prev = i_next;
        if ctx.pre(i_prev - 1) {
            armed = true;
            queue.push_back(i_prev + alpha.len() - 1);
        }
    }
    false
}

/// The summarized variant of [`match_fixed`] for one whole repeat: it
/// examines every prefix of `alpha` at once, but holds only a single
/// pending injection position, so it is sound only when the
/// occurrences in `idx` do not overlap.
pub fn match_summarized(ctx: &MatchContext, alpha: &[u8], idx: &[usize]) -> bool {
    let nfa = ctx.nfa_e1();
    let w = ctx.subject();
    let pre_alpha = ctx.build_pre_alpha(alpha);
    let mut summary = SummaryVector::new(nfa);
    let mut i_que: Option<usize> = None;
    let mut i_prev = 0;
    let mut scratch = MatchStats::default();
    for &i_next in idx {
        if let Some(que) = i_que {
            for i in i_prev..i_next {
                if !summary.all_empty() {
                    summary.step(nfa, w[i - 1]);
                }
                if i == que {
                    summary.inject();
                }
            }
            let t = ctx.int_med(i_next, i_next + alpha.len() - 1, &pre_alpha, &mut scratch);
            if t.iter().any(|l| nfa.is_accepting(summary.row(l))) {
                return true;
            }
        }
        i_prev = i_next;
        if ctx.pre(i_prev - 1) {
            i_que = Some(i_prev + alpha.len() - 1);
        }
    }
    false
}

#[derive(Clone, Copy, Debug)]
pub struct CubicVerdict {
    pub matched: bool,
    /// Simulation-set transitions performed across all scans.
    pub steps: usize,
}

/// Matches by scanning once per (right-maximal repeat, prefix length)
/// pair.  Every possible backreferenced substring is a prefix of some
/// right-maximal repeat with the same occurrence starts, so trying all
/// pairs is exhaustive; `exhaustive` additionally keeps scanning after
/// a hit so `steps` covers the full workload.
pub fn cubic_match(
    query: &RewbQuery,
    w: &[u8],
    alphabet: &Alphabet,
    exhaustive: bool,
) -> CubicVerdict {
    let ctx = MatchContext::new(query, w, alphabet);
    let mut steps = 0;
    let mut matched = ctx.epsilon_path();
    if matched && !exhaustive {
        return CubicVerdict { matched, steps };
    }
    for record in right_maximal_repeats(w) {
        let alpha = record.repeat_in(w);
        for k in 1..=record.len {
            if match_fixed(&ctx, &alpha[..k], &record.idx, &mut steps) {
                matched = true;
                if !exhaustive {
                    return CubicVerdict { matched, steps };
                }
            }
        }
    }
    CubicVerdict { matched, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::brute_force_matches;
    use rewb::parse_rewb;

    fn ab() -> Alphabet {
        Alphabet::from_bytes(b"ab")
    }

    fn cubic(pattern: &str, w: &[u8]) -> bool {
        cubic_match(&parse_rewb(pattern).unwrap(), w, &ab(), false).matched
    }

    #[test]
    fn agrees_on_basic_cases() {
        assert!(cubic("(a)\\1", b"aa"));
        assert!(!cubic("(aa)\\1", b"aaa"));
        assert!(cubic("a(b*)c\\1d", b"acd"));
        assert!(cubic("(ab|ba)b*\\1", b"abbbab"));
        assert!(!cubic("(ab|ba)b*\\1", b"abbbba"));
    }

    #[test]
    fn queued_injections_with_overlapping_occurrences() {
        // "aa" occurs at 1, 2 and 3; the injections for positions 1 and
        // 2 are both pending during the same stretch of the scan.  A
        // single pending slot would drop the first and miss the match.
        assert!(cubic("a?(aa)\\1", b"aaaa"));
    }

    #[test]
    fn agrees_with_brute_force_on_a_sweep() {
        let patterns = ["(a*)b\\1", "a?(aa)\\1", "(ab|ba)(?:a|b)?\\1", "(a|b)b*\\1a"];
        let subjects: Vec<Vec<u8>> = (0..6u32)
            .flat_map(|len| {
                (0..1u32 << len).map(move |bits| {
                    (0..len)
                        .map(|j| if bits >> j & 1 == 1 { b'b' } else { b'a' })
                        .collect()
                })
            })
            .collect();
        for pattern in patterns {
            let query = parse_rewb(pattern).unwrap();
            for w in &subjects {
                assert_eq!(
                    cubic_match(&query, w, &ab(), false).matched,
                    brute_force_matches(&query, w, &ab()),
                    "{} on {:?}",
                    pattern,
                    String::from_utf8_lossy(w)
                );
            }
        }
    }

    #[test]
    fn summarized_variant_agrees_on_nonoverlapping_repeats() {
        let query = parse_rewb("a*(?:ba*)?(?:ba*)?((?:a|b)*)a*ba*ba*ba*(?:ba*ba*)*\\1(?:(?:a|b)(?:a|b))*").unwrap();
        let w = b"abbabbabbabba";
        let ctx = MatchContext::new(&query, w, &ab());
        for record in right_maximal_repeats(w) {
            if record.max_overlap() == 0 {
                let alpha = record.repeat_in(w);
                // Prefix-by-prefix scans against the all-prefixes scan.
                let mut steps = 0;
                let fixed_any = (1..=record.len)
                    .any(|k| match_fixed(&ctx, &alpha[..k], &record.idx, &mut steps));
                assert_eq!(
                    match_summarized(&ctx, alpha, &record.idx),
                    fixed_any,
                    "repeat {:?}",
                    String::from_utf8_lossy(alpha)
                );
            }
        }
    }
}
