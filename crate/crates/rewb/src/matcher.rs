//! The matching engine for patterns of the form `e0 (e) e1 \1 e2`.
//!
//! A subject `w` matches when it splits as `w0 a w1 a w2` with each part
//! in the language of its subexpression and both `a` parts identical.
//! The engine never tries candidate substrings one by one.  Instead it
//! enumerates the right-maximal repeats of `w` (fewer than `|w|` of
//! them) and, for each repeat, examines every match whose backreferenced
//! substring is a prefix of that repeat, all in one scan of `w`:
//!
//! * a summarized simulation of `e1` runs over `w`, restarted by
//!   injection at each occurrence of the repeat whose left context
//!   satisfies `e0` ([`MatchContext::match3a`]);
//! * at each occurrence a short scalar simulation over the repeat
//!   itself collects the states reachable for every viable prefix
//!   ([`MatchContext::int_med`]), and composing the two answers all
//!   prefix candidates at once;
//! * matches whose two backreference occurrences sit inside overlapping
//!   occurrences of the repeat need a separate left-to-right pass
//!   ([`MatchContext::match3b`]).
//!
//! Positions are 1-based: `w[i..j]` in comments means the 1-based
//! inclusive slice, and `Pre`/`Suf` are indexed by positions 0..=n and
//! 1..=n+1 respectively.  The total work is O(n^2 m^2) for subject
//! length n and pattern size m.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::byteset::Alphabet;
use crate::nfa::{Nfa, StateSet, SummaryVector};
use crate::parse::{RegexAst, RewbQuery};
use crate::repeats::{enum_right_maximal_repeats, RepeatRecord, SuffixIndex};

/// Work counters, filled in by every matching routine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatchStats {
    /// Right-maximal repeats examined.
    pub repeats: usize,
    /// Summarized simulation steps (one per vector transition).
    pub vector_steps: usize,
    /// Rows actually advanced inside those vector transitions.
    pub row_steps: usize,
    /// Plain simulation-set transitions outside the summarized pass.
    pub scalar_steps: usize,
}

impl MatchStats {
    /// Total single-set transitions: the unit that grows quadratically
    /// in the subject length.
    pub fn delta_steps(&self) -> usize {
        self.row_steps + self.scalar_steps
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MatchOptions {
    /// Keep scanning after the first hit so the step counters cover the
    /// full workload.  The verdict is unchanged.
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct MatchVerdict {
    pub matched: bool,
    pub stats: MatchStats,
}

/// Everything about one (pattern, subject) pair that the per-repeat
/// routines share: the prefix and suffix acceptance tables and the
/// compiled automata for the capture and middle subexpressions.
pub struct MatchContext<'w> {
    w: &'w [u8],
    /// pre[i] means `e0` matches `w[..i]`, for 0 <= i <= n.
    pre: Vec<bool>,
    /// suf[j] means `e2` matches `w[j..]`, for 1 <= j <= n+1.
    suf: Vec<bool>,
    nfa_e: Nfa,
    nfa_e1: Nfa,
    /// The capture admits the empty string and `e0 e1 e2` matches `w`.
    epsilon_path: bool,
}

impl<'w> MatchContext<'w> {
    pub fn new(query: &RewbQuery, w: &'w [u8], alphabet: &Alphabet) -> MatchContext<'w> {
        let n = w.len();
        let nfa_e0 = Nfa::compile(&query.e0, alphabet);
        let pre = nfa_e0.prefix_acceptance(w);

        // suf comes from running the reversed tail expression over the
        // reversed subject: e2 matches w[j..] exactly when its reversal
        // matches the last n-j+1 characters of w read backwards.
        let nfa_e2_rev = Nfa::compile(&query.e2.reversed(), alphabet);
        let w_rev: Vec<u8> = w.iter().rev().copied().collect();
        let rev_pre = nfa_e2_rev.prefix_acceptance(&w_rev);
        let mut suf = vec![false; n + 2];
        for j in 1..=n + 1 {
            suf[j] = rev_pre[n + 1 - j];
        }

        let nfa_e = Nfa::compile(&query.e, alphabet);
        let nfa_e1 = Nfa::compile(&query.e1, alphabet);

        let epsilon_path = nfa_e.accepts(b"") && {
            let outer = RegexAst::Concat(vec![
                query.e0.clone(),
                query.e1.clone(),
                query.e2.clone(),
            ]);
            Nfa::compile(&outer, alphabet).accepts(w)
        };

        MatchContext {
            w,
            pre,
            suf,
            nfa_e,
            nfa_e1,
            epsilon_path,
        }
    }

    pub fn subject(&self) -> &'w [u8] {
        self.w
    }

    /// Whether `e0` matches `w[..i]`; `i` ranges over 0..=n.
    pub fn pre(&self, i: usize) -> bool {
        self.pre[i]
    }

    /// Whether `e2` matches `w[j..]`; `j` ranges over 1..=n+1.
    pub fn suf(&self, j: usize) -> bool {
        self.suf[j]
    }

    pub fn nfa_e(&self) -> &Nfa {
        &self.nfa_e
    }

    pub fn nfa_e1(&self) -> &Nfa {
        &self.nfa_e1
    }

    /// The match that uses the empty string for the backreference.
    pub fn epsilon_path(&self) -> bool {
        self.epsilon_path
    }

    /// pre_alpha[k] means the capture matches `alpha[..k]`; entry 0 is
    /// the empty prefix, which the scan routines never consult.
    pub fn build_pre_alpha(&self, alpha: &[u8]) -> Vec<bool> {
        self.nfa_e.prefix_acceptance(alpha)
    }

    /// Scans one occurrence of the repeat, ending at `i_end`, and
    /// returns every state of the middle automaton reachable from its
    /// start over `w[i+1..i_end]` for some split position `i` in
    /// `i_beg..=i_end` where the capture matches the prefix of the
    /// repeat ending at `i` and the tail expression matches `w[i+1..]`.
    ///
    /// `i_end` must be the right end of an occurrence and `i_beg` must
    /// lie inside that occurrence.
    pub fn int_med(
        &self,
        i_beg: usize,
        i_end: usize,
        pre_alpha: &[bool],
        stats: &mut MatchStats,
    ) -> StateSet {
        let alpha_len = pre_alpha.len() - 1;
        debug_assert!(i_end - alpha_len < i_beg && i_beg <= i_end);
        debug_assert!(i_end <= self.w.len());
        let nfa = &self.nfa_e1;
        let mut t = nfa.empty_set();
        let mut next = nfa.empty_set();
        let mut stack = Vec::new();
        for i in i_beg..=i_end {
            if pre_alpha[i - (i_end - alpha_len)] && self.suf(i + 1) {
                t.union_with(nfa.start_closure());
            }
            if !t.is_empty() && i < i_end {
                stats.scalar_steps += 1;
                nfa.step_into(&t, &mut next, self.w[i], &mut stack);
                std::mem::swap(&mut t, &mut next);
            }
        }
        t
    }

    /// Finds a match whose backreferenced substring is a prefix of the
    /// repeat and whose two occurrences lie in distinct, nonoverlapping
    /// occurrences of the repeat.
    ///
    /// One summarized simulation of the middle automaton runs across
    /// `w`.  Ends of qualifying occurrences are queued and injected
    /// when the scan reaches them; several can be pending at once when
    /// occurrences overlap, hence the queue.  At each occurrence the
    /// scan result is composed with [`MatchContext::int_med`] over that
    /// occurrence.  Prefixes no longer than the deepest overlap are
    /// skipped: such a prefix recurs inside the repeat itself, so its
    /// matches belong to a shorter right-maximal repeat.
    pub fn match3a(
        &self,
        record: &RepeatRecord,
        pre_alpha: &[bool],
        stats: &mut MatchStats,
    ) -> bool {
        let len = record.len;
        let nfa = &self.nfa_e1;
        let mut summary = SummaryVector::new(nfa);
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut armed = false;
        let mut i_prev = 0;
        let d = record.max_overlap();
        for &i_next in &record.idx {
            if armed {
                for i in i_prev..i_next {
                    if !summary.all_empty() {
                        stats.vector_steps += 1;
                        stats.row_steps += summary.step(nfa, self.w[i - 1]);
                    }
                    if queue.front() == Some(&i) {
                        summary.inject();
                        queue.pop_front();
                    }
                }
                let t = self.int_med(i_next + d, i_next + len - 1, pre_alpha, stats);
                if t.iter().any(|l| nfa.is_accepting(summary.row(l))) {
                    return true;
                }
            }
            i_prev = i_next;
            if self.pre(i_prev - 1) {
                armed = true;
                queue.push_back(i_prev + len - 1);
            }
        }
        false
    }

    /// Finds a match whose backreferenced substring is a prefix of the
    /// repeat occurring inside two overlapping occurrences of it.
    ///
    /// For each occurrence at `i_next`, only the farthest occurrence
    /// starting inside it (`f_next`) needs checking: a match into any
    /// nearer one extends to a match into `f_next` because the skipped
    /// span is a border of the repeat.  The scan walks the gap between
    /// `i_next` and `f_next` once, injecting wherever a prefix of the
    /// repeat ends viably on both sides.
    pub fn match3b(
        &self,
        record: &RepeatRecord,
        pre_alpha: &[bool],
        stats: &mut MatchStats,
    ) -> bool {
        let nfa = &self.nfa_e1;
        let forward = record.forward_map();
        let mut f_prev = 0;
        let mut s = nfa.empty_set();
        let mut next = nfa.empty_set();
        let mut stack = Vec::new();
        for (&i_next, &f_next) in record.idx.iter().zip(&forward) {
            if i_next < f_next && self.pre(i_next - 1) && f_prev < f_next {
                s.clear();
                for i in i_next.max(f_prev)..f_next {
                    if pre_alpha[i - i_next + 1] && self.suf(f_next + i - i_next + 1) {
                        s.union_with(nfa.start_closure());
                    }
                    if !s.is_empty() && i < f_next - 1 {
                        stats.scalar_steps += 1;
                        nfa.step_into(&s, &mut next, self.w[i], &mut stack);
                        std::mem::swap(&mut s, &mut next);
                    }
                }
                if nfa.is_accepting(&s) {
                    return true;
                }
            }
            f_prev = f_next;
        }
        false
    }

    /// Examines every match whose backreferenced substring is a viable
    /// prefix of this repeat.
    pub fn match_alpha(
        &self,
        record: &RepeatRecord,
        options: &MatchOptions,
        stats: &mut MatchStats,
    ) -> bool {
        let pre_alpha = self.build_pre_alpha(record.repeat_in(self.w));
        let a = self.match3a(record, &pre_alpha, stats);
        if a && !options.exhaustive {
            return true;
        }
        let b = self.match3b(record, &pre_alpha, stats);
        a || b
    }
}

/// Decides whether `w` is in the language of the query, and reports how
/// much simulation work that took.
pub fn match_rewb_with(
    query: &RewbQuery,
    w: &[u8],
    alphabet: &Alphabet,
    options: &MatchOptions,
) -> MatchVerdict {
    let ctx = MatchContext::new(query, w, alphabet);
    let mut stats = MatchStats::default();
    let mut matched = ctx.epsilon_path();
    if matched && !options.exhaustive {
        return MatchVerdict { matched, stats };
    }
    let index = SuffixIndex::new(w);
    let _ = enum_right_maximal_repeats(&index, |record| {
        stats.repeats += 1;
        if ctx.match_alpha(record, options, &mut stats) {
            matched = true;
            if !options.exhaustive {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    MatchVerdict { matched, stats }
}

/// Decides whether `w` is in the language of the query.
pub fn match_rewb(query: &RewbQuery, w: &[u8], alphabet: &Alphabet) -> bool {
    match_rewb_with(query, w, alphabet, &MatchOptions::default()).matched
}
