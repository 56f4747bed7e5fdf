//! Automata representations and the semantics everything else is defined on.

mod dfa;
mod naa;
mod nfa;

pub use dfa::{determinize, Dfa};
pub use naa::{project_extended_word, DirectedLetter, Naa, NaaBuilder, Transition};
pub use nfa::Nfa;

/// Dense state index.
pub type StateId = u32;
