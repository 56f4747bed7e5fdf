use std::fmt;

use rustc_hash::FxHashMap;

use super::{determinize, Dfa, Nfa, StateId};
use crate::alphabet::{Alphabet, LetterId};
use crate::error::{Error, Result};

/// A letter tagged with the direction (0-based) that reads it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedLetter {
    pub letter: LetterId,
    pub direction: usize,
}

impl DirectedLetter {
    pub fn new(letter: LetterId, direction: usize) -> Self {
        DirectedLetter { letter, direction }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: StateId,
    pub letter: LetterId,
    pub direction: usize,
    pub to: StateId,
}

/// A nondeterministic asynchronous automaton with `k` directions.
///
/// Directions are 0-based in this API; file formats and reports number
/// them from 1.
#[derive(Clone, Debug)]
pub struct Naa {
    alphabet: Alphabet,
    k: usize,
    state_names: Vec<String>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    transitions: Vec<Transition>,
    offsets: Vec<u32>,
    targets: Vec<StateId>,
}

impl Naa {
    pub fn new(
        alphabet: Alphabet,
        k: usize,
        state_names: Vec<String>,
        initial: Vec<StateId>,
        accepting: Vec<StateId>,
        transitions: Vec<Transition>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::NoDirections);
        }
        let n = state_names.len();
        let mut seen = FxHashMap::default();
        for name in &state_names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        let check = |s: StateId| {
            if (s as usize) < n {
                Ok(())
            } else {
                Err(Error::StateOutOfRange(s as usize))
            }
        };
        let mut acc = vec![false; n];
        for &s in &accepting {
            check(s)?;
            acc[s as usize] = true;
        }
        let mut init = Vec::new();
        for &s in &initial {
            check(s)?;
            if !init.contains(&s) {
                init.push(s);
            }
        }
        let mut transitions = transitions;
        for t in &transitions {
            check(t.from)?;
            check(t.to)?;
            if t.direction >= k {
                return Err(Error::UnknownDirection { direction: t.direction + 1, k });
            }
            if (t.letter as usize) >= alphabet.len() {
                return Err(Error::LetterOutOfRange(t.letter as usize));
            }
        }
        transitions.sort();
        transitions.dedup();

        let sigma = alphabet.len();
        let slots = n * k * sigma;
        let mut counts = vec![0u32; slots + 1];
        for t in &transitions {
            counts[(t.from as usize * k + t.direction) * sigma + t.letter as usize + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        // transitions are sorted by (from, letter, direction, to); fill by slot
        let mut fill = counts.clone();
        let mut targets = vec![0; transitions.len()];
        for t in &transitions {
            let slot = (t.from as usize * k + t.direction) * sigma + t.letter as usize;
            targets[fill[slot] as usize] = t.to;
            fill[slot] += 1;
        }
        Ok(Naa { alphabet, k, state_names, initial: init, accepting: acc, transitions, offsets: counts, targets })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of directions.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s as usize]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name).map(|i| i as StateId)
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s as usize]
    }

    pub fn accepting_states(&self) -> Vec<StateId> {
        (0..self.num_states() as StateId).filter(|&s| self.is_accepting(s)).collect()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Successors of `s` reading `letter` on `direction`.
    #[inline]
    pub fn successors(&self, s: StateId, direction: usize, letter: LetterId) -> &[StateId] {
        let slot = (s as usize * self.k + direction) * self.alphabet.len() + letter as usize;
        &self.targets[self.offsets[slot] as usize..self.offsets[slot + 1] as usize]
    }

    /// The NAA read as an NFA over `Σ × K`.
    pub fn underlying_nfa(&self) -> Nfa<DirectedLetter> {
        let transitions = self
            .transitions
            .iter()
            .map(|t| (t.from, DirectedLetter::new(t.letter, t.direction), t.to))
            .collect();
        Nfa::new(self.num_states(), self.initial.clone(), self.accepting_states(), transitions)
            .expect("naa invariants carry over")
    }

    /// ε-automaton for the projection onto `direction`, with the given
    /// accepting states (all NAA accepting states when `None`).
    pub fn epsilon_projection(&self, direction: usize, accepting: Option<&[StateId]>) -> Result<Nfa<Option<LetterId>>> {
        if direction >= self.k {
            return Err(Error::UnknownDirection { direction: direction + 1, k: self.k });
        }
        let accepting = match accepting {
            Some(a) => a.to_vec(),
            None => self.accepting_states(),
        };
        let transitions = self
            .transitions
            .iter()
            .map(|t| (t.from, (t.direction == direction).then_some(t.letter), t.to))
            .collect();
        Nfa::new(self.num_states(), self.initial.clone(), accepting, transitions)
    }

    /// Complete DFA for `π(L)|direction`.
    pub fn project(&self, direction: usize) -> Result<Dfa> {
        determinize(&self.epsilon_projection(direction, None)?, self.alphabet.len())
    }

    /// Complete DFA for the projection of the runs ending in `state`.
    pub fn project_to_state(&self, direction: usize, state: StateId) -> Result<Dfa> {
        determinize(&self.epsilon_projection(direction, Some(&[state]))?, self.alphabet.len())
    }

    /// Tuple acceptance by reachability over (positions, state).
    pub fn accepts_tuple(&self, tuple: &[&[LetterId]]) -> Result<bool> {
        if tuple.len() != self.k {
            return Err(Error::Arity { expected: self.k, got: tuple.len() });
        }
        let n = self.num_states();
        let mut stride = Vec::with_capacity(self.k);
        let mut size = n;
        for w in tuple {
            stride.push(size);
            size = size.checked_mul(w.len() + 1).ok_or_else(|| Error::Guard("tuple too large".into()))?;
        }
        let mut seen = vec![false; size];
        let mut pos = vec![0usize; self.k];
        let mut stack: Vec<usize> = Vec::new();
        for &s in &self.initial {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s as usize);
            }
        }
        while let Some(code) = stack.pop() {
            let s = (code % n) as StateId;
            let mut rest = code;
            for m in (0..self.k).rev() {
                pos[m] = rest / stride[m];
                rest %= stride[m];
            }
            if self.is_accepting(s) && (0..self.k).all(|m| pos[m] == tuple[m].len()) {
                return Ok(true);
            }
            for m in 0..self.k {
                if pos[m] < tuple[m].len() {
                    for &t in self.successors(s, m, tuple[m][pos[m]]) {
                        let next = code - s as usize + t as usize + stride[m];
                        if !seen[next] {
                            seen[next] = true;
                            stack.push(next);
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// Renders a directed letter as `⟨a,1⟩`.
    pub fn format_directed(&self, d: DirectedLetter) -> String {
        format!("⟨{},{}⟩", self.alphabet.token(d.letter), d.direction + 1)
    }
}

/// Erases letters of other directions and drops the direction tag.
pub fn project_extended_word(word: &[DirectedLetter], direction: usize) -> Vec<LetterId> {
    word.iter().filter(|d| d.direction == direction).map(|d| d.letter).collect()
}

/// Name-based construction helper used by the benchmark families and tests.
#[derive(Clone, Debug)]
pub struct NaaBuilder {
    alphabet: Alphabet,
    k: usize,
    names: Vec<String>,
    initial: Vec<String>,
    accepting: Vec<String>,
    edges: Vec<(String, String, usize, String)>,
}

impl NaaBuilder {
    pub fn new(alphabet: Alphabet, k: usize) -> Self {
        NaaBuilder { alphabet, k, names: Vec::new(), initial: Vec::new(), accepting: Vec::new(), edges: Vec::new() }
    }

    pub fn state(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        if !self.names.contains(&name) {
            self.names.push(name);
        }
        self
    }

    pub fn initial(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        self = self.state(name.clone());
        self.initial.push(name);
        self
    }

    pub fn accepting(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        self = self.state(name.clone());
        self.accepting.push(name);
        self
    }

    /// Adds `from --⟨letter, direction⟩--> to` (direction 0-based).
    pub fn edge(mut self, from: impl Into<String>, letter: &str, direction: usize, to: impl Into<String>) -> Self {
        let (from, to) = (from.into(), to.into());
        self = self.state(from.clone()).state(to.clone());
        self.edges.push((from, letter.to_string(), direction, to));
        self
    }

    pub fn build(self) -> Result<Naa> {
        let id = |name: &str| -> Result<StateId> {
            self.names
                .iter()
                .position(|n| n == name)
                .map(|i| i as StateId)
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };
        let initial = self.initial.iter().map(|n| id(n)).collect::<Result<Vec<_>>>()?;
        let accepting = self.accepting.iter().map(|n| id(n)).collect::<Result<Vec<_>>>()?;
        let mut transitions = Vec::with_capacity(self.edges.len());
        for (from, letter, direction, to) in &self.edges {
            let letter = self.alphabet.id(letter).ok_or_else(|| Error::UnknownLetter(letter.clone()))?;
            transitions.push(Transition { from: id(from)?, letter, direction: *direction, to: id(to)? });
        }
        Naa::new(self.alphabet, self.k, self.names, initial, accepting, transitions)
    }
}

impl fmt::Display for Naa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "naa k={} states={}", self.k, self.num_states())?;
        for t in &self.transitions {
            writeln!(
                f,
                "  {} --⟨{},{}⟩--> {}",
                self.state_name(t.from),
                self.alphabet.token(t.letter),
                t.direction + 1,
                self.state_name(t.to)
            )?;
        }
        Ok(())
    }
}
