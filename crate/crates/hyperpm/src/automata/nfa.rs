use std::collections::VecDeque;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use super::StateId;
use crate::error::{Error, Result};

/// A nondeterministic automaton over labels of type `L`.
///
/// `Nfa<DirectedLetter>` is the underlying automaton of an NAA and
/// `Nfa<Option<LetterId>>` is an ε-automaton (`None` is ε).
#[derive(Clone, Debug)]
pub struct Nfa<L> {
    num_states: usize,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    transitions: Vec<(StateId, L, StateId)>,
}

impl<L: Copy + Eq + Hash> Nfa<L> {
    pub fn new(
        num_states: usize,
        initial: Vec<StateId>,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: Vec<(StateId, L, StateId)>,
    ) -> Result<Self> {
        let check = |s: StateId| {
            if (s as usize) < num_states {
                Ok(())
            } else {
                Err(Error::StateOutOfRange(s as usize))
            }
        };
        let mut acc = vec![false; num_states];
        for s in accepting {
            check(s)?;
            acc[s as usize] = true;
        }
        for &s in &initial {
            check(s)?;
        }
        for &(from, _, to) in &transitions {
            check(from)?;
            check(to)?;
        }
        Ok(Nfa { num_states, initial, accepting: acc, transitions })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s as usize]
    }

    pub fn accepting_states(&self) -> Vec<StateId> {
        (0..self.num_states as StateId).filter(|&s| self.is_accepting(s)).collect()
    }

    pub fn transitions(&self) -> &[(StateId, L, StateId)] {
        &self.transitions
    }

    fn forward(&self) -> Vec<Vec<(L, StateId)>> {
        let mut out = vec![Vec::new(); self.num_states];
        for &(from, l, to) in &self.transitions {
            out[from as usize].push((l, to));
        }
        out
    }

    /// Length of a shortest accepted word, or `None` for the empty language.
    pub fn shortest_accepted_length(&self) -> Option<usize> {
        let out = self.forward();
        let mut dist = vec![usize::MAX; self.num_states];
        let mut queue = VecDeque::new();
        for &s in &self.initial {
            if dist[s as usize] == usize::MAX {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            if self.is_accepting(s) {
                return Some(dist[s as usize]);
            }
            for &(_, t) in &out[s as usize] {
                if dist[t as usize] == usize::MAX {
                    dist[t as usize] = dist[s as usize] + 1;
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// States from which an accepting state is reachable.
    pub fn coaccessible_states(&self) -> Vec<bool> {
        let mut back = vec![Vec::new(); self.num_states];
        for &(from, _, to) in &self.transitions {
            back[to as usize].push(from);
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<StateId> = self.accepting_states();
        while let Some(s) = stack.pop() {
            for &p in &back[s as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States reachable from an initial state.
    pub fn accessible_states(&self) -> Vec<bool> {
        let out = self.forward();
        let mut seen = vec![false; self.num_states];
        let mut stack = Vec::new();
        for &s in &self.initial {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(s) = stack.pop() {
            for &(_, t) in &out[s as usize] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Membership by subset simulation.
    pub fn accepts(&self, word: &[L]) -> bool {
        let mut by_label: FxHashMap<(StateId, L), Vec<StateId>> = FxHashMap::default();
        for &(from, l, to) in &self.transitions {
            by_label.entry((from, l)).or_default().push(to);
        }
        let mut current = vec![false; self.num_states];
        for &s in &self.initial {
            current[s as usize] = true;
        }
        for &l in word {
            let mut next = vec![false; self.num_states];
            for s in 0..self.num_states {
                if current[s] {
                    if let Some(ts) = by_label.get(&(s as StateId, l)) {
                        for &t in ts {
                            next[t as usize] = true;
                        }
                    }
                }
            }
            current = next;
        }
        (0..self.num_states).any(|s| current[s] && self.accepting[s])
    }

    /// The same automaton with accepting set replaced by `accepting`.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = StateId>) -> Result<Self> {
        Nfa::new(self.num_states, self.initial.clone(), accepting, self.transitions.clone())
    }

    pub fn map_labels<M: Copy + Eq + Hash>(&self, f: impl Fn(L) -> M) -> Nfa<M> {
        Nfa {
            num_states: self.num_states,
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            transitions: self.transitions.iter().map(|&(a, l, b)| (a, f(l), b)).collect(),
        }
    }
}
