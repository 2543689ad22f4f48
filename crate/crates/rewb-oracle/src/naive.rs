//! Definition-level stringology, used to validate the indexed versions.
//!
//! Everything here works straight from the definitions with no index
//! structures, so it is quadratic or worse and only suitable for small
//! subjects.

use std::collections::HashMap;

/// 1-based starting positions of every occurrence of `alpha` in `w`.
pub fn occurrences(w: &[u8], alpha: &[u8]) -> Vec<usize> {
    if alpha.is_empty() || alpha.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - alpha.len())
        .filter(|&a| &w[a..a + alpha.len()] == alpha)
        .map(|a| a + 1)
        .collect()
}

/// A repeat is right-maximal when two of its occurrences are followed
/// by different characters, counting "end of string" as a character.
pub fn is_right_maximal(w: &[u8], alpha: &[u8]) -> bool {
    let occ = occurrences(w, alpha);
    if occ.len() < 2 {
        return false;
    }
    let mut followers: Vec<Option<u8>> = occ
        .iter()
        .map(|&i| w.get(i - 1 + alpha.len()).copied())
        .collect();
    followers.dedup();
    followers.len() > 1
}

/// Extends a repeat to the right while every occurrence agrees on the
/// next character.  The result is the unique right-maximal repeat with
/// the same occurrence starts.
pub fn right_maximal_extension(w: &[u8], beta: &[u8]) -> Vec<u8> {
    assert!(occurrences(w, beta).len() >= 2, "not a repeat");
    let mut cur = beta.to_vec();
    loop {
        let occ = occurrences(w, &cur);
        let followers: Vec<Option<u8>> = occ
            .iter()
            .map(|&i| w.get(i - 1 + cur.len()).copied())
            .collect();
        match followers.first().copied().flatten() {
            Some(c) if followers.iter().all(|&f| f == Some(c)) => cur.push(c),
            _ => return cur,
        }
    }
}

/// Longest common extension table: `lce[a][b]` is the length of the
/// longest common prefix of `w[a..]` and `w[b..]` (0-based).
pub fn lce_table(w: &[u8]) -> Vec<Vec<usize>> {
    let n = w.len();
    let mut lce = vec![vec![0; n + 1]; n + 1];
    for a in (0..n).rev() {
        for b in (0..n).rev() {
            if w[a] == w[b] {
                lce[a][b] = lce[a + 1][b + 1] + 1;
            }
        }
    }
    lce
}

/// Every right-maximal repeat of `w` with its sorted occurrence starts.
///
/// The longest common prefix of two distinct suffixes is right-maximal
/// whenever it is nonempty (the suffixes diverge right after it), and
/// conversely every right-maximal repeat arises that way, so collecting
/// over all suffix pairs is exhaustive.
pub fn right_maximal_repeats_naive(w: &[u8]) -> HashMap<Vec<u8>, Vec<usize>> {
    let lce = lce_table(w);
    let mut out = HashMap::new();
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            let len = lce[a][b];
            if len > 0 {
                let alpha = w[a..a + len].to_vec();
                out.entry(alpha.clone())
                    .or_insert_with(|| occurrences(w, &alpha));
            }
        }
    }
    out
}

/// Suffix start positions (1-based, sentinel `n + 1` included) sorted
/// by direct suffix comparison; the sentinel sorts below every byte.
pub fn suffix_array_naive(w: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (1..=w.len() + 1).collect();
    sa.sort_by_key(|&p| &w[p - 1..]);
    sa
}
