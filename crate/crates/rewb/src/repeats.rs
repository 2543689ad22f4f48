//! Right-maximal repeat enumeration over a suffix array.
//!
//! A repeat is a substring that occurs at least twice; it is
//! right-maximal when two of its occurrences are followed by different
//! characters (or one ends the string).  Right-maximal repeats
//! correspond one-to-one with branching internal nodes of the suffix
//! tree, so a string of length `n` has fewer than `n` of them, and every
//! repeated substring extends to exactly one right-maximal repeat with
//! the same occurrence starts.
//!
//! [`SuffixIndex`] holds the suffix array and LCP array of `w` plus a
//! terminal sentinel that sorts below every byte.  Positions are
//! 1-based throughout, matching the matcher's position convention.
//! [`enum_right_maximal_repeats`] walks the LCP array with a stack,
//! emitting each repeat together with the sorted starting positions of
//! all its occurrences.

use std::ops::ControlFlow;

/// Suffix array and LCP array of a subject string.
///
/// Suffix positions are 1-based; the sentinel suffix is position
/// `n + 1`.  `sa` lists all `n + 1` suffix start positions in
/// lexicographic order (the sentinel first), and `lcp[j]` is the length
/// of the longest common prefix of the suffixes at `sa[j - 1]` and
/// `sa[j]`, with `lcp[0] = 0`.
#[derive(Clone, Debug)]
pub struct SuffixIndex {
    sa: Vec<usize>,
    lcp: Vec<usize>,
}

impl SuffixIndex {
    /// Builds the arrays by prefix doubling in O(n log^2 n) time.
    pub fn new(w: &[u8]) -> SuffixIndex {
        let n = w.len();
        let m = n + 1;
        // Byte code at 1-based position p; 0 is the sentinel, below all bytes.
        let at = |p: usize| if p <= n { w[p - 1] as usize + 1 } else { 0 };

        let mut rank: Vec<usize> = (1..=m).map(at).collect();
        let mut sa: Vec<usize> = (1..=m).collect();
        let mut width = 1;
        loop {
            // Order by (rank of first half, rank of second half); a
            // suffix too short for a second half sorts below all that
            // have one.
            let key = |rank: &[usize], p: usize| {
                let second = if p + width <= m { rank[p + width - 1] + 1 } else { 0 };
                (rank[p - 1], second)
            };
            sa.sort_unstable_by_key(|&p| key(&rank, p));
            let mut next = vec![0; m];
            for j in 1..m {
                next[sa[j] - 1] =
                    next[sa[j - 1] - 1] + usize::from(key(&rank, sa[j]) != key(&rank, sa[j - 1]));
            }
            rank = next;
            if rank[sa[m - 1] - 1] == m - 1 {
                break;
            }
            width *= 2;
        }

        // Kasai's algorithm: walk positions in text order, reusing all
        // but one character of the previous comparison.
        let mut inv = vec![0; m];
        for (j, &p) in sa.iter().enumerate() {
            inv[p - 1] = j;
        }
        let mut lcp = vec![0; m];
        let mut h = 0;
        for p in 1..=m {
            let j = inv[p - 1];
            if j == 0 {
                h = 0;
                continue;
            }
            let q = sa[j - 1];
            while at(p + h) != 0 && at(p + h) == at(q + h) {
                h += 1;
            }
            lcp[j] = h;
            h = h.saturating_sub(1);
        }

        SuffixIndex { sa, lcp }
    }

    /// Suffix start positions in lexicographic order, sentinel first.
    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    /// `lcp()[j]` is the common prefix length of the suffixes at
    /// `sa()[j - 1]` and `sa()[j]`; `lcp()[0]` is 0.
    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }
}

/// One right-maximal repeat: its length and the sorted 1-based starting
/// positions of all its occurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatRecord {
    pub len: usize,
    pub idx: Vec<usize>,
}

impl RepeatRecord {
    /// The repeated substring itself.
    pub fn repeat_in<'w>(&self, w: &'w [u8]) -> &'w [u8] {
        let start = self.idx[0] - 1;
        &w[start..start + self.len]
    }

    /// How deep any occurrence reaches into the one after it; 0 when no
    /// two occurrences overlap.
    pub fn max_overlap(&self) -> usize {
        self.idx
            .windows(2)
            .map(|pair| (pair[0] + self.len).saturating_sub(pair[1]))
            .max()
            .unwrap_or(0)
    }

    /// `map[j]` is the start of the last occurrence that begins inside
    /// occurrence `j` (that occurrence itself when nothing overlaps it).
    /// Computed with two pointers sweeping right to left.
    pub fn forward_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.idx.len()];
        let mut right = self.idx.len() - 1;
        for left in (0..self.idx.len()).rev() {
            while self.idx[right] > self.idx[left] + self.len - 1 {
                right -= 1;
            }
            map[left] = self.idx[right];
        }
        map
    }
}

/// Emits every right-maximal repeat of the indexed string, with its
/// sorted occurrence starts, to `process`.  Returns early if `process`
/// breaks.
///
/// The walk keeps a stack of open LCP-intervals as `(lcp, idx)` pairs.
/// At step `j` the upcoming LCP value decides whether suffix `sa[j]`
/// opens a deeper interval, extends the current one, or closes
/// intervals, and every closed interval is one right-maximal repeat.
/// Closed intervals fold their occurrence lists into the enclosing
/// interval, so outer repeats see the occurrences of inner ones.
pub fn enum_right_maximal_repeats<F>(index: &SuffixIndex, mut process: F) -> ControlFlow<()>
where
    F: FnMut(&RepeatRecord) -> ControlFlow<()>,
{
    let sa = index.sa();
    let lcp = index.lcp();
    let m = sa.len();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    for j in 1..m {
        let upcoming = if j + 1 < m { lcp[j + 1] } else { 0 };
        let top_lcp = stack.last().unwrap().0;
        if upcoming > top_lcp {
            stack.push((upcoming, vec![sa[j]]));
        } else if upcoming == top_lcp {
            if top_lcp != 0 {
                insert_sorted(&mut stack.last_mut().unwrap().1, sa[j]);
            }
        } else {
            insert_sorted(&mut stack.last_mut().unwrap().1, sa[j]);
            while upcoming < stack.last().unwrap().0 {
                let (len, idx) = stack.pop().unwrap();
                let record = RepeatRecord { len, idx };
                process(&record)?;
                let top = stack.last_mut().unwrap();
                if upcoming <= top.0 {
                    if top.0 != 0 {
                        merge_sorted(&mut top.1, &record.idx);
                    }
                } else {
                    stack.push((upcoming, record.idx));
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// All right-maximal repeats of `w`, in enumeration order.
pub fn right_maximal_repeats(w: &[u8]) -> Vec<RepeatRecord> {
    let index = SuffixIndex::new(w);
    let mut out = Vec::new();
    let _ = enum_right_maximal_repeats(&index, |record| {
        out.push(record.clone());
        ControlFlow::Continue(())
    });
    out
}

fn insert_sorted(idx: &mut Vec<usize>, value: usize) {
    let pos = idx.partition_point(|&x| x < value);
    idx.insert(pos, value);
}

fn merge_sorted(into: &mut Vec<usize>, from: &[usize]) {
    let mut merged = Vec::with_capacity(into.len() + from.len());
    let (mut a, mut b) = (0, 0);
    while a < into.len() && b < from.len() {
        if into[a] <= from[b] {
            merged.push(into[a]);
            a += 1;
        } else {
            merged.push(from[b]);
            b += 1;
        }
    }
    merged.extend_from_slice(&into[a..]);
    merged.extend_from_slice(&from[b..]);
    *into = merged;
}
