//! Projection-based pruning of trial starts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, LetterId, Word, WordSet};
use crate::automata::{Dfa, Naa};
use crate::engine::TrialQueue;
use crate::error::{Error, Result};

/// A word with letters outside every projected match replaced by `None` (⊥).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredWord {
    pub original: usize,
    pub masked: Vec<Option<LetterId>>,
}

impl FilteredWord {
    /// Whether 1-based position `h` survived the filter.
    pub fn is_relevant(&self, h: usize) -> bool {
        self.masked[h - 1].is_some()
    }

    /// Surviving positions, 1-based.
    pub fn support(&self) -> BTreeSet<usize> {
        (1..=self.masked.len()).filter(|&h| self.is_relevant(h)).collect()
    }

    /// Tokens separated by spaces, `_` for ⊥.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.masked
            .iter()
            .map(|l| l.map_or("_", |l| alphabet.token(l)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// All `(i, j)` with `w|i..j ∈ L(dfa)`, including `(i, i - 1)` for
/// `1 <= i <= |w|` when the empty word is accepted.
pub fn dfa_pattern_match(dfa: &Dfa, w: &Word) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 1..=w.len() {
        let mut s = dfa.initial();
        if dfa.is_accepting(s) {
            out.insert((i, i - 1));
        }
        for j in i..=w.len() {
            s = dfa.step(s, w.at(j));
            if dfa.is_accepting(s) {
                out.insert((i, j));
            }
            if Some(s) == dfa.sink() {
                break;
            }
        }
    }
    out
}

/// Marked intervals that all end at or before the current position, kept
/// as a bitmap plus the start of the run ending at each run's right end.
struct Marks {
    marked: Vec<bool>,
    run_start: Vec<usize>,
}

impl Marks {
    fn new(len: usize) -> Self {
        Marks { marked: vec![false; len + 2], run_start: vec![0; len + 2] }
    }

    /// Marks `[a, j]` where `j` is at least every marked position.
    fn mark(&mut self, a: usize, j: usize) {
        let mut start = a;
        let mut h = j;
        while h >= a {
            if self.marked[h] {
                let s = self.run_start[h];
                start = start.min(s);
                if s <= a {
                    self.run_start[j] = start;
                    return;
                }
                h = s - 1;
            } else {
                self.marked[h] = true;
                h -= 1;
            }
        }
        // `a` was unmarked, so a marked `a - 1` is the right end of a run
        if a >= 2 && self.marked[a - 1] {
            start = start.min(self.run_start[a - 1]);
        }
        self.run_start[j] = start;
    }

    fn contains(&self, h: usize) -> bool {
        self.marked[h]
    }
}

/// Result of [`filter_irrelevant_counted`]: the mask plus the number of
/// per-letter state-map updates performed.
pub struct FilterRun {
    pub filtered: FilteredWord,
    pub updates: usize,
}

pub fn filter_irrelevant(dfa: &Dfa, w: &Word, word_id: usize) -> FilteredWord {
    filter_irrelevant_counted(dfa, w, word_id).filtered
}

/// Single pass over `w` tracking, for each DFA state, the least start index
/// of a factor ending at the current position that reaches it.
pub fn filter_irrelevant_counted(dfa: &Dfa, w: &Word, word_id: usize) -> FilterRun {
    let n = dfa.num_states();
    let mut c: Vec<Option<usize>> = vec![None; n];
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut u = Marks::new(w.len());
    let mut masked: Vec<Option<LetterId>> = Vec::with_capacity(w.len());
    let mut updates = 0;
    let accepting: Vec<usize> = (0..n).filter(|&s| dfa.is_accepting(s as u32)).collect();
    for j in 1..=w.len() {
        let init = dfa.initial() as usize;
        if c[init].is_none() {
            c[init] = Some(j);
        }
        next.iter_mut().for_each(|x| *x = None);
        let a = w.at(j);
        for s in 0..n {
            if let Some(cs) = c[s] {
                let t = dfa.step(s as u32, a) as usize;
                next[t] = Some(next[t].map_or(cs, |ct| ct.min(cs)));
                updates += 1;
            }
        }
        std::mem::swap(&mut c, &mut next);
        for &f in &accepting {
            if let Some(cf) = c[f] {
                u.mark(cf, j);
            }
        }
        let low = c.iter().flatten().min().copied().unwrap_or(j + 1);
        for h in masked.len() + 1..low {
            masked.push(u.contains(h).then(|| w.at(h)));
        }
    }
    for h in masked.len() + 1..=w.len() {
        masked.push(u.contains(h).then(|| w.at(h)));
    }
    debug_assert!(updates <= w.len() * n);
    FilterRun { filtered: FilteredWord { original: word_id, masked }, updates }
}

/// Which projected positions may start a trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum QueueMode {
    /// Begins of exact projected matches.
    Exact,
    /// Positions not masked by the linear filter.
    #[default]
    Filtered,
}

impl FromStr for QueueMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(QueueMode::Exact),
            "filtered" => Ok(QueueMode::Filtered),
            _ => Err(Error::Guard(format!("unknown queue mode {s:?}"))),
        }
    }
}

impl fmt::Display for QueueMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueueMode::Exact => "exact",
            QueueMode::Filtered => "filtered",
        })
    }
}

/// `allowed[m][w][h - 1]` for each direction `m`, word `w` and position `h`.
///
/// A direction whose projection accepts ε allows every position, since an
/// empty slice may sit at any start.
pub fn projected_starts(naa: &Naa, ws: &WordSet, mode: QueueMode) -> Result<Vec<Vec<Vec<bool>>>> {
    (0..naa.k())
        .map(|m| {
            let dfa = naa.project(m)?;
            Ok(ws
                .words()
                .iter()
                .enumerate()
                .map(|(id, w)| {
                    let mut allowed = vec![false; w.len()];
                    if dfa.accepts_empty() {
                        allowed.iter_mut().for_each(|x| *x = true);
                        return allowed;
                    }
                    match mode {
                        QueueMode::Exact => {
                            for (i, _) in dfa_pattern_match(&dfa, w) {
                                allowed[i - 1] = true;
                            }
                        }
                        QueueMode::Filtered => {
                            let f = filter_irrelevant(&dfa, w, id);
                            for (h, l) in f.masked.iter().enumerate() {
                                allowed[h] = l.is_some();
                            }
                        }
                    }
                    allowed
                })
                .collect())
        })
        .collect()
}

/// The trial queue restricted to projected starts.
pub fn init_queue_projected(naa: &Naa, ws: &WordSet, mode: QueueMode) -> Result<TrialQueue> {
    let allowed = projected_starts(naa, ws, mode)?;
    Ok(TrialQueue::from_fn(naa.k(), ws, |m, w, h| allowed[m][w][h - 1]))
}
