//! Slow reference engines and generators used to cross-check the
//! matcher in `rewb`.
//!
//! * [`brute`]: exhaustive split enumeration, the ground truth.
//! * [`cubic`]: one scan per candidate backreference string.
//! * [`naive`]: definition-level suffix/repeat computations.
//! * [`gen`]: seeded random patterns and subjects.

pub mod brute;
pub mod cubic;
pub mod gen;
pub mod naive;

pub use brute::{brute_force_match, brute_force_match_nonempty, brute_force_matches, Witness};
pub use cubic::{cubic_match, match_fixed, match_summarized, CubicVerdict};
