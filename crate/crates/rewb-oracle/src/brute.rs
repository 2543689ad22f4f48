//! Exhaustive matcher: try every split of the subject directly.
//!
//! A subject matches `e0 (e) e1 \1 e2` exactly when some choice of
//! capture start `i`, capture length `k` and reference start `j` makes
//! all five parts accept.  This module enumerates all O(n^3) choices,
//! with per-part acceptance memoized so each check is constant time.
//! It is the ground truth the fast engine is compared against.

use rewb::{Alphabet, Nfa, RewbQuery};

/// A concrete split witnessing a match: the capture matches
/// `w[i..i+k-1]`, the reference matches `w[j..j+k-1]` (1-based,
/// inclusive), possibly empty when `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub k: usize,
    pub j: usize,
}

impl Witness {
    /// Rechecks every part of the split from scratch.
    pub fn validate(&self, query: &RewbQuery, w: &[u8], alphabet: &Alphabet) -> bool {
        let n = w.len();
        let (a, k, b) = (self.i - 1, self.k, self.j - 1);
        if a + k > b || b + k > n {
            return false;
        }
        let accepts = |ast, input: &[u8]| Nfa::compile(ast, alphabet).accepts(input);
        w[a..a + k] == w[b..b + k]
            && accepts(&query.e0, &w[..a])
            && accepts(&query.e, &w[a..a + k])
            && accepts(&query.e1, &w[a + k..b])
            && accepts(&query.e2, &w[b + k..])
    }
}

/// Finds the lexicographically least witness `(i, k, j)`, or None when
/// the subject does not match.
pub fn brute_force_match(query: &RewbQuery, w: &[u8], alphabet: &Alphabet) -> Option<Witness> {
    search(query, w, alphabet, 0)
}

/// Like [`brute_force_match`] but only admits witnesses whose captured
/// string is nonempty.  Distinguishes matches that need a real repeat
/// from those that hold with an empty capture.
pub fn brute_force_match_nonempty(
    query: &RewbQuery,
    w: &[u8],
    alphabet: &Alphabet,
) -> Option<Witness> {
    search(query, w, alphabet, 1)
}

fn search(query: &RewbQuery, w: &[u8], alphabet: &Alphabet, min_k: usize) -> Option<Witness> {
    let n = w.len();
    let nfa_e0 = Nfa::compile(&query.e0, alphabet);
    let nfa_e = Nfa::compile(&query.e, alphabet);
    let nfa_e1 = Nfa::compile(&query.e1, alphabet);
    let nfa_e2_rev = Nfa::compile(&query.e2.reversed(), alphabet);

    // pre0[a]: e0 accepts w[..a].  suf2[b]: e2 accepts w[b..] (0-based).
    let pre0 = nfa_e0.prefix_acceptance(w);
    let w_rev: Vec<u8> = w.iter().rev().copied().collect();
    let rev_pre = nfa_e2_rev.prefix_acceptance(&w_rev);
    let suf2: Vec<bool> = (0..=n).map(|b| rev_pre[n - b]).collect();

    // cape[a][k]: e accepts w[a..a+k].  mid1[a][l]: e1 accepts w[a..a+l].
    let cape: Vec<Vec<bool>> = (0..=n).map(|a| nfa_e.prefix_acceptance(&w[a..])).collect();
    let mid1: Vec<Vec<bool>> = (0..=n).map(|a| nfa_e1.prefix_acceptance(&w[a..])).collect();
    let lce = crate::naive::lce_table(w);

    for a in 0..=n {
        if !pre0[a] {
            continue;
        }
        for k in min_k..=n - a {
            if !cape[a][k] {
                continue;
            }
            for b in a + k..=n - k {
                if k > 0 && lce[a][b] < k {
                    continue;
                }
                if mid1[a + k][b - (a + k)] && suf2[b + k] {
                    return Some(Witness {
                        i: a + 1,
                        k,
                        j: b + 1,
                    });
                }
            }
        }
    }
    None
}

/// Whether the subject matches, by exhaustive search.
pub fn brute_force_matches(query: &RewbQuery, w: &[u8], alphabet: &Alphabet) -> bool {
    brute_force_match(query, w, alphabet).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rewb::parse_rewb;

    fn ab() -> Alphabet {
        Alphabet::from_bytes(b"ab")
    }

    fn witness(pattern: &str, w: &[u8]) -> Option<Witness> {
        let query = parse_rewb(pattern).unwrap();
        let found = brute_force_match(&query, w, &ab());
        if let Some(wit) = found {
            assert!(wit.validate(&query, w, &ab()));
        }
        found
    }

    #[test]
    fn simple_square() {
        assert_eq!(witness("(a)\\1", b"aa"), Some(Witness { i: 1, k: 1, j: 2 }));
        assert_eq!(witness("(aa)\\1", b"aaa"), None);
        assert_eq!(
            witness("(aa)\\1", b"aaaa"),
            Some(Witness { i: 1, k: 2, j: 3 })
        );
    }

    #[test]
    fn empty_capture_witness() {
        let query_str = "a(b*)(?:ab)*\\1b";
        // "ab" splits as a, empty capture, empty middle, empty
        // reference, then b.
        assert_eq!(witness(query_str, b"ab"), Some(Witness { i: 2, k: 0, j: 2 }));
    }

    #[test]
    fn least_witness_order() {
        // Many splits work; the least i wins, then the least k, then
        // the least j.
        assert_eq!(
            witness("(?:a|b)*(a+)b*\\1(?:a|b)*", b"aaaa"),
            Some(Witness { i: 1, k: 1, j: 2 })
        );
        assert_eq!(
            witness("(?:a|b)*(a+)b\\1(?:a|b)*", b"aabaa"),
            Some(Witness { i: 1, k: 2, j: 4 })
        );
    }

    #[test]
    fn respects_all_parts() {
        assert!(witness("aa(ab)\\1", b"aaabab").is_some());
        assert!(witness("aa(ab)\\1", b"abaaab").is_none());
        assert!(witness("aa(ab)\\1b", b"aaabab").is_none());
    }

    #[test]
    fn validate_rejects_wrong_splits() {
        let query = parse_rewb("(a)\\1").unwrap();
        assert!(!Witness { i: 1, k: 1, j: 3 }.validate(&query, b"aab", &ab()));
        assert!(!Witness { i: 1, k: 2, j: 3 }.validate(&query, b"aaaa", &ab()));
        assert!(Witness { i: 1, k: 1, j: 2 }.validate(&query, b"aa", &ab()));
    }
}
