use rustc_hash::FxHashMap;

use super::{Nfa, StateId};
use crate::alphabet::LetterId;
use crate::error::{Error, Result};

/// A complete deterministic automaton over letter ids `0..num_letters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    num_letters: usize,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<StateId>,
    sink: Option<StateId>,
}

impl Dfa {
    /// Builds a DFA from a complete row-major table `delta[s * num_letters + a]`.
    pub fn new(num_letters: usize, initial: StateId, accepting: Vec<bool>, delta: Vec<StateId>) -> Result<Self> {
        let n = accepting.len();
        if (initial as usize) >= n {
            return Err(Error::StateOutOfRange(initial as usize));
        }
        if delta.len() != n * num_letters {
            let missing = delta.len().min(n * num_letters);
            return Err(Error::IncompleteDfa {
                state: missing / num_letters.max(1),
                letter: missing % num_letters.max(1),
            });
        }
        if let Some(&t) = delta.iter().find(|&&t| (t as usize) >= n) {
            return Err(Error::StateOutOfRange(t as usize));
        }
        let mut dfa = Dfa { num_letters, initial, accepting, delta, sink: None };
        dfa.sink = (0..n as StateId).find(|&s| dfa.is_dead(s));
        Ok(dfa)
    }

    /// Builds a DFA from a partial deterministic transition list, adding a
    /// non-accepting sink state when some successor is missing.
    pub fn from_partial(
        num_letters: usize,
        num_states: usize,
        initial: StateId,
        accepting: Vec<bool>,
        transitions: &[(StateId, LetterId, StateId)],
    ) -> Result<Self> {
        let mut table = vec![None; num_states * num_letters];
        for &(s, a, t) in transitions {
            if (s as usize) >= num_states || (t as usize) >= num_states {
                return Err(Error::StateOutOfRange(s.max(t) as usize));
            }
            if (a as usize) >= num_letters {
                return Err(Error::LetterOutOfRange(a as usize));
            }
            table[s as usize * num_letters + a as usize] = Some(t);
        }
        let mut accepting = accepting;
        accepting.resize(num_states, false);
        let needs_sink = table.iter().any(Option::is_none);
        let sink = num_states as StateId;
        let mut delta: Vec<StateId> = table.into_iter().map(|t| t.unwrap_or(sink)).collect();
        if needs_sink {
            accepting.push(false);
            delta.extend(std::iter::repeat_n(sink, num_letters));
        }
        Dfa::new(num_letters, initial, accepting, delta)
    }

    fn is_dead(&self, s: StateId) -> bool {
        !self.accepting[s as usize] && (0..self.num_letters).all(|a| self.step(s, a as LetterId) == s)
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s as usize]
    }

    /// A non-accepting state with only self-loops, if there is one.
    pub fn sink(&self) -> Option<StateId> {
        self.sink
    }

    #[inline]
    pub fn step(&self, s: StateId, a: LetterId) -> StateId {
        self.delta[s as usize * self.num_letters + a as usize]
    }

    pub fn run(&self, word: &[LetterId]) -> StateId {
        word.iter().fold(self.initial, |s, &a| self.step(s, a))
    }

    pub fn accepts(&self, word: &[LetterId]) -> bool {
        self.is_accepting(self.run(word))
    }

    pub fn accepts_empty(&self) -> bool {
        self.is_accepting(self.initial)
    }

    /// True iff the language is empty.
    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial as usize] = true;
        while let Some(s) = stack.pop() {
            if self.is_accepting(s) {
                return false;
            }
            for a in 0..self.num_letters {
                let t = self.step(s, a as LetterId);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        true
    }
}

fn closure(eps: &[Vec<StateId>], set: &mut [bool]) {
    let mut stack: Vec<StateId> = (0..set.len()).filter(|&s| set[s]).map(|s| s as StateId).collect();
    while let Some(s) = stack.pop() {
        for &t in &eps[s as usize] {
            if !set[t as usize] {
                set[t as usize] = true;
                stack.push(t);
            }
        }
    }
}

/// ε-closure plus subset construction; the result is complete and the empty
/// subset (if reachable) becomes the sink.
pub fn determinize(nfa: &Nfa<Option<LetterId>>, num_letters: usize) -> Result<Dfa> {
    let n = nfa.num_states();
    let limit: u128 = if n >= 127 { u128::MAX } else { 1u128 << n };
    let mut eps = vec![Vec::new(); n];
    let mut moves = vec![vec![Vec::new(); num_letters]; n];
    for &(from, label, to) in nfa.transitions() {
        match label {
            None => eps[from as usize].push(to),
            Some(a) => {
                if (a as usize) >= num_letters {
                    return Err(Error::LetterOutOfRange(a as usize));
                }
                moves[from as usize][a as usize].push(to)
            }
        }
    }
    let mut start = vec![false; n];
    for &s in nfa.initial() {
        start[s as usize] = true;
    }
    closure(&eps, &mut start);

    let mut ids: FxHashMap<Vec<bool>, StateId> = FxHashMap::default();
    let mut subsets: Vec<Vec<bool>> = Vec::new();
    let mut delta: Vec<StateId> = Vec::new();
    ids.insert(start.clone(), 0);
    subsets.push(start);
    let mut next = 0;
    while next < subsets.len() {
        for a in 0..num_letters {
            let mut target = vec![false; n];
            for s in 0..n {
                if subsets[next][s] {
                    for &t in &moves[s][a] {
                        target[t as usize] = true;
                    }
                }
            }
            closure(&eps, &mut target);
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    if subsets.len() as u128 >= limit {
                        return Err(Error::SubsetLimit { limit });
                    }
                    let id = subsets.len() as StateId;
                    ids.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            delta.push(id);
        }
        next += 1;
    }
    let accepting = subsets
        .iter()
        .map(|set| (0..n).any(|s| set[s] && nfa.is_accepting(s as StateId)))
        .collect();
    Dfa::new(num_letters, 0, accepting, delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_gets_sink() {
        // accepts exactly "ab" over {a, b}
        let d = Dfa::from_partial(2, 3, 0, vec![false, false, true], &[(0, 0, 1), (1, 1, 2)]).unwrap();
        assert_eq!(d.num_states(), 4);
        assert_eq!(d.sink(), Some(3));
        assert!(d.accepts(&[0, 1]));
        assert!(!d.accepts(&[0, 1, 1]));
        assert!(!d.accepts_empty());
        for s in 0..4 {
            for a in 0..2 {
                assert!((d.step(s, a) as usize) < 4);
            }
        }
    }

    #[test]
    fn incomplete_table_rejected() {
        assert!(matches!(Dfa::new(2, 0, vec![false], vec![0]), Err(Error::IncompleteDfa { .. })));
    }

    #[test]
    fn determinize_with_epsilon() {
        // 0 -ε-> 1 -a-> 2(acc), 0 -b-> 2
        let nfa = Nfa::new(3, vec![0], [2], vec![(0, None, 1), (1, Some(0), 2), (0, Some(1), 2)]).unwrap();
        let d = determinize(&nfa, 2).unwrap();
        assert!(d.accepts(&[0]));
        assert!(d.accepts(&[1]));
        assert!(!d.accepts(&[]));
        assert!(!d.accepts(&[0, 0]));
        assert!(d.sink().is_some());
        assert!(!d.is_empty());
    }

    #[test]
    fn empty_language() {
        let nfa = Nfa::<Option<LetterId>>::new(1, vec![0], [], vec![]).unwrap();
        assert!(determinize(&nfa, 1).unwrap().is_empty());
    }
}
