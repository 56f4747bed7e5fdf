#![allow(dead_code)]

use hyperpm::automata::Transition;
use hyperpm::{Alphabet, Dfa, Naa, Word, WordSet};
use proptest::prelude::*;

/// A small random NAA and word set, small enough for the brute-force oracle.
#[derive(Clone, Debug)]
pub struct Instance {
    pub naa: Naa,
    pub ws: WordSet,
}

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"].into_iter().take(n)).unwrap()
}

prop_compose! {
    pub fn naa_strategy(max_states: usize, max_k: usize, max_sigma: usize)
        (n in 1..=max_states, k in 1..=max_k, sigma in 1..=max_sigma)
        (edges in prop::collection::vec((0..n, 0..sigma, 0..k, 0..n), 0..=3 * n + 2),
         initial in prop::collection::vec(0..n, 1..=2),
         accepting in prop::collection::vec(0..n, 0..=2),
         n in Just(n), k in Just(k), sigma in Just(sigma))
        -> Naa
    {
        let names = (0..n).map(|i| format!("q{i}")).collect();
        let transitions = edges
            .into_iter()
            .map(|(from, letter, direction, to)| Transition { from: from as u32, letter: letter as u32, direction, to: to as u32 })
            .collect();
        let init = initial.into_iter().map(|s| s as u32).collect();
        let acc = accepting.into_iter().map(|s| s as u32).collect();
        Naa::new(alphabet(sigma), k, names, init, acc, transitions).unwrap()
    }
}

pub fn words_strategy(sigma: usize, max_words: usize, max_len: usize) -> impl Strategy<Value = WordSet> {
    prop::collection::vec(prop::collection::vec(0..sigma as u32, 1..=max_len), 1..=max_words)
        .prop_map(|ws| ws.into_iter().map(Word::new).collect())
}

/// `|S| <= 5`, `k <= 3`, `|Σ| <= 3`, at most two words of length at most 6.
pub fn instance() -> impl Strategy<Value = Instance> {
    naa_strategy(5, 3, 3).prop_flat_map(|naa| {
        let sigma = naa.alphabet().len();
        (Just(naa), words_strategy(sigma, 2, 6)).prop_map(|(naa, ws)| Instance { naa, ws })
    })
}

prop_compose! {
    /// Complete DFA with at most `max_states` states.
    pub fn dfa_strategy(max_states: usize, sigma: usize)
        (n in 1..=max_states)
        (delta in prop::collection::vec(0..n as u32, n * sigma),
         accepting in prop::collection::vec(any::<bool>(), n),
         initial in 0..n as u32)
        -> Dfa
    {
        Dfa::new(sigma, initial, accepting, delta).unwrap()
    }
}

prop_compose! {
    /// A path `q0 -> q1 -> ... -> q(n-1)` on random directed letters plus a
    /// few extra edges, accepting at the end. These behave like literal
    /// patterns and make both skip rules fire often.
    pub fn chain_naa(max_len: usize, max_k: usize, sigma: usize)
        (n in 2..=max_len + 1, k in 1..=max_k)
        (path in prop::collection::vec((0..sigma, 0..k), n - 1),
         extra in prop::collection::vec((0..n, 0..sigma, 0..k, 0..n), 0..=2),
         n in Just(n), k in Just(k))
        -> Naa
    {
        let names = (0..n).map(|i| format!("q{i}")).collect();
        let mut transitions: Vec<Transition> = path
            .into_iter()
            .enumerate()
            .map(|(i, (letter, direction))| Transition { from: i as u32, letter: letter as u32, direction, to: i as u32 + 1 })
            .collect();
        transitions.extend(extra.into_iter().map(|(from, letter, direction, to)| Transition {
            from: from as u32, letter: letter as u32, direction, to: to as u32,
        }));
        Naa::new(alphabet(sigma), k, names, vec![0], vec![n as u32 - 1], transitions).unwrap()
    }
}

/// Chain automata over two or three letters with words long enough to skip in.
pub fn chain_instance() -> impl Strategy<Value = Instance> {
    (2..=3usize).prop_flat_map(|sigma| {
        (chain_naa(4, 2, sigma), words_strategy(sigma, 2, 6)).prop_map(|(naa, ws)| Instance { naa, ws })
    })
}
