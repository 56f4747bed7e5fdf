//! Hyper pattern matching: find every tuple of subwords, drawn from a set of
//! logs, that a nondeterministic asynchronous automaton (NAA) accepts.
//!
//! Four engines share one trial loop: [`engine::Algorithm::Naive`],
//! FJS-style skipping, projection pruning, and both together. The
//! [`oracle`] module enumerates the definition directly and is what the
//! engines are tested against.
//!
//! Word ids are 0-based in input order; positions inside words are 1-based
//! and slices are inclusive, with `(w, i, i - 1)` for the empty slice.

pub mod alphabet;
pub mod automata;
pub mod engine;
pub mod error;
pub mod families;
pub mod io;
pub mod matches;
pub mod oracle;
pub mod prune;
pub mod rng;
pub mod skip;

pub use alphabet::{Alphabet, Letter, LetterId, Word, WordSet};
pub use automata::{Dfa, Naa, NaaBuilder, Nfa, StateId};
pub use engine::{hpm_fjs, hpm_fjs_proj, hpm_naive, hpm_proj, run, Algorithm, EngineOptions, MatchOutcome, TrialStats};
pub use error::{Error, Result};
pub use matches::{MatchSet, MatchTuple, Slice};
pub use prune::QueueMode;
pub use skip::SkipTables;
