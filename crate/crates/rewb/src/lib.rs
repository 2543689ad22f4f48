//! Matching for regular expressions extended with a single backreference.

pub mod byteset;
pub mod matcher;
pub mod nfa;
pub mod parse;
pub mod repeats;

pub use byteset::Alphabet;
pub use matcher::{
    match_rewb, match_rewb_with, MatchContext, MatchOptions, MatchStats, MatchVerdict,
};
pub use nfa::{Nfa, StateSet, SummaryVector};
pub use parse::{parse_regex, parse_rewb, ParseError, RegexAst, RewbQuery};
pub use repeats::{enum_right_maximal_repeats, right_maximal_repeats, RepeatRecord, SuffixIndex};

// Compiles every fenced Rust snippet in the guide as a doctest, so the
// book cannot drift from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/nfa-simulation.md")]
    mod nfa_simulation {}
    #[doc = include_str!("../../../book/src/repeats.md")]
    mod repeats {}
    #[doc = include_str!("../../../book/src/matching.md")]
    mod matching {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
}
