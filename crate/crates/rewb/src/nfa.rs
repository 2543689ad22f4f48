//! Thompson construction and set-based NFA simulation.
//!
//! [`Nfa::compile`] builds an automaton with one initial/accept pair per
//! operator, so the state count is linear in the AST size.  Simulation
//! works on [`StateSet`]s: `step` applies one character transition
//! followed by the ε-closure, written Δ(S, a) below.  Δ distributes over
//! unions and composes over concatenation, which is what lets the matcher
//! merge new start states into a running simulation mid-scan.
//!
//! [`SummaryVector`] is the simulation-set-per-state form used by the
//! matcher: row `l` simulates the automaton as if `l` were its initial
//! state, so one pass answers reachability questions for every possible
//! entry state at once.

use smallvec::SmallVec;
use std::fmt;

use crate::byteset::{Alphabet, ByteSet};
use crate::parse::RegexAst;

#[derive(Clone, Debug)]
enum Edge {
    Byte(u8),
    Set(ByteSet),
}

impl Edge {
    fn matches(&self, b: u8) -> bool {
        match self {
            Edge::Byte(x) => *x == b,
            Edge::Set(set) => set.contains(b),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct State {
    eps: SmallVec<[u32; 2]>,
    edge: Option<(Edge, u32)>,
}

/// A Thompson NFA with a single initial and a single accept state.
#[derive(Clone, Debug)]
pub struct Nfa {
    states: Vec<State>,
    start: u32,
    accept: u32,
    /// ε-closure of the initial state, precomputed.
    start_closure: StateSet,
}

impl Nfa {
    /// Builds the automaton for `ast`.  The alphabet resolves `.` and
    /// negated classes; everything else matches its bytes verbatim.
    pub fn compile(ast: &RegexAst, alphabet: &Alphabet) -> Nfa {
        let mut states = Vec::new();
        let (start, accept) = build(ast, alphabet, &mut states);
        assert!(states.len() <= 4 * ast.node_count());
        let mut nfa = Nfa {
            states,
            start,
            accept,
            start_closure: StateSet::with_capacity(0),
        };
        let mut closure = nfa.empty_set();
        closure.insert(start);
        nfa.close_into(&mut closure, &mut Vec::new());
        nfa.start_closure = closure;
        nfa
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start_state(&self) -> u32 {
        self.start
    }

    pub fn accept_state(&self) -> u32 {
        self.accept
    }

    /// ecl({q0}): the set the simulation starts from.
    pub fn start_closure(&self) -> &StateSet {
        &self.start_closure
    }

    /// An empty set sized for this automaton.
    pub fn empty_set(&self) -> StateSet {
        StateSet::with_capacity(self.states.len())
    }

    /// The ε-closure of `set`.
    pub fn eps_closure(&self, set: &StateSet) -> StateSet {
        let mut out = set.clone();
        self.close_into(&mut out, &mut Vec::new());
        out
    }

    /// Extends `set` with everything reachable by ε-edges.  `stack` is
    /// scratch; it is cleared before use.
    pub(crate) fn close_into(&self, set: &mut StateSet, stack: &mut Vec<u32>) {
        stack.clear();
        stack.extend(set.iter());
        while let Some(q) = stack.pop() {
            for &t in &self.states[q as usize].eps {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Δ(S, b): one character transition followed by the ε-closure.
    pub fn step(&self, set: &StateSet, b: u8) -> StateSet {
        let mut out = self.empty_set();
        self.step_into(set, &mut out, b, &mut Vec::new());
        out
    }

    /// Δ(S, b) into `out` without allocating.  `stack` is scratch.
    pub(crate) fn step_into(&self, set: &StateSet, out: &mut StateSet, b: u8, stack: &mut Vec<u32>) {
        out.clear();
        stack.clear();
        for q in set.iter() {
            if let Some((edge, t)) = &self.states[q as usize].edge {
                if edge.matches(b) && out.insert(*t) {
                    stack.push(*t);
                }
            }
        }
        while let Some(q) = stack.pop() {
            for &t in &self.states[q as usize].eps {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Δ(S, input): the simulation set after reading all of `input`.
    pub fn run(&self, set: &StateSet, input: &[u8]) -> StateSet {
        let mut cur = set.clone();
        let mut next = self.empty_set();
        let mut stack = Vec::new();
        for &b in input {
            self.step_into(&cur, &mut next, b, &mut stack);
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    pub fn is_accepting(&self, set: &StateSet) -> bool {
        set.contains(self.accept)
    }

    pub fn accepts(&self, input: &[u8]) -> bool {
        self.is_accepting(&self.run(&self.start_closure, input))
    }

    /// `out[i]` is whether the automaton accepts `input[..i]`, for every
    /// prefix length `i` in `0..=input.len()`.
    pub fn prefix_acceptance(&self, input: &[u8]) -> Vec<bool> {
        let mut out = Vec::with_capacity(input.len() + 1);
        let mut cur = self.start_closure.clone();
        let mut next = self.empty_set();
        let mut stack = Vec::new();
        out.push(self.is_accepting(&cur));
        for &b in input {
            self.step_into(&cur, &mut next, b, &mut stack);
            std::mem::swap(&mut cur, &mut next);
            out.push(self.is_accepting(&cur));
        }
        out
    }
}

fn new_state(states: &mut Vec<State>) -> u32 {
    states.push(State::default());
    (states.len() - 1) as u32
}

fn build(ast: &RegexAst, alphabet: &Alphabet, states: &mut Vec<State>) -> (u32, u32) {
    match ast {
        RegexAst::Empty => {
            let s = new_state(states);
            let f = new_state(states);
            states[s as usize].eps.push(f);
            (s, f)
        }
        RegexAst::Literal(b) => {
            let s = new_state(states);
            let f = new_state(states);
            states[s as usize].edge = Some((Edge::Byte(*b), f));
            (s, f)
        }
        RegexAst::AnyByte => {
            let s = new_state(states);
            let f = new_state(states);
            states[s as usize].edge = Some((Edge::Set(*alphabet.as_set()), f));
            (s, f)
        }
        RegexAst::Class { set, negated } => {
            let resolved = if *negated {
                alphabet.as_set().difference(set)
            } else {
                *set
            };
            let s = new_state(states);
            let f = new_state(states);
            states[s as usize].edge = Some((Edge::Set(resolved), f));
            (s, f)
        }
        RegexAst::Concat(children) => {
            let mut first: Option<u32> = None;
            let mut prev_accept: Option<u32> = None;
            for child in children {
                let (s, f) = build(child, alphabet, states);
                if let Some(p) = prev_accept {
                    states[p as usize].eps.push(s);
                } else {
                    first = Some(s);
                }
                prev_accept = Some(f);
            }
            match (first, prev_accept) {
                (Some(s), Some(f)) => (s, f),
                // An empty concatenation denotes the empty string.
                _ => build(&RegexAst::Empty, alphabet, states),
            }
        }
        RegexAst::Alternation(children) => {
            let s = new_state(states);
            let f = new_state(states);
            for child in children {
                let (cs, cf) = build(child, alphabet, states);
                states[s as usize].eps.push(cs);
                states[cf as usize].eps.push(f);
            }
            (s, f)
        }
        RegexAst::Star(child) => {
            let s = new_state(states);
            let f = new_state(states);
            let (cs, cf) = build(child, alphabet, states);
            states[s as usize].eps.push(cs);
            states[s as usize].eps.push(f);
            states[cf as usize].eps.push(cs);
            states[cf as usize].eps.push(f);
            (s, f)
        }
        RegexAst::Plus(child) => {
            let s = new_state(states);
            let f = new_state(states);
            let (cs, cf) = build(child, alphabet, states);
            states[s as usize].eps.push(cs);
            states[cf as usize].eps.push(cs);
            states[cf as usize].eps.push(f);
            (s, f)
        }
        RegexAst::Optional(child) => {
            let s = new_state(states);
            let f = new_state(states);
            let (cs, cf) = build(child, alphabet, states);
            states[s as usize].eps.push(cs);
            states[s as usize].eps.push(f);
            states[cf as usize].eps.push(f);
            (s, f)
        }
    }
}

/// A dense bitset over the states of one automaton.
#[derive(Clone, PartialEq, Eq)]
pub struct StateSet {
    words: Box<[u64]>,
}

impl StateSet {
    fn with_capacity(states: usize) -> StateSet {
        StateSet {
            words: vec![0; states.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Inserts `q`; returns whether it was newly added.
    pub fn insert(&mut self, q: u32) -> bool {
        let word = &mut self.words[(q / 64) as usize];
        let bit = 1u64 << (q % 64);
        let added = *word & bit == 0;
        *word |= bit;
        added
    }

    pub fn contains(&self, q: u32) -> bool {
        self.words[(q / 64) as usize] & (1u64 << (q % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            std::iter::successors((word != 0).then_some(word), |&w| {
                let rest = w & (w - 1);
                (rest != 0).then_some(rest)
            })
            .map(move |w| i as u32 * 64 + w.trailing_zeros())
        })
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One simulation set per state: row `l` is the simulation that treats
/// state `l` as initial.  Rows are advanced in lockstep and new start
/// points are added by injecting `{l}` into row `l`.
#[derive(Clone, Debug)]
pub struct SummaryVector {
    rows: Vec<StateSet>,
    live: usize,
}

impl SummaryVector {
    /// All rows empty.
    pub fn new(nfa: &Nfa) -> SummaryVector {
        SummaryVector {
            rows: vec![nfa.empty_set(); nfa.state_count()],
            live: 0,
        }
    }

    pub fn all_empty(&self) -> bool {
        self.live == 0
    }

    pub fn row(&self, l: u32) -> &StateSet {
        &self.rows[l as usize]
    }

    /// Unions `{l}` into row `l` for every state `l`.  The closure is not
    /// taken here: the first following step starts from the bare state,
    /// exactly as a fresh simulation from `l` would.
    pub fn inject(&mut self) {
        for (l, row) in self.rows.iter_mut().enumerate() {
            row.insert(l as u32);
        }
        self.live = self.rows.len();
    }

    /// Advances every row by Δ(·, b); empty rows stay empty and are
    /// skipped.  Returns the number of rows actually stepped.
    pub fn step(&mut self, nfa: &Nfa, b: u8) -> usize {
        let mut stepped = 0;
        let mut live = 0;
        let mut next = nfa.empty_set();
        let mut stack = Vec::new();
        for row in &mut self.rows {
            if row.is_empty() {
                continue;
            }
            stepped += 1;
            nfa.step_into(row, &mut next, b, &mut stack);
            std::mem::swap(row, &mut next);
            if !row.is_empty() {
                live += 1;
            }
        }
        self.live = live;
        stepped
    }
}
