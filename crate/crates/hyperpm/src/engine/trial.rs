use std::collections::BTreeSet;

use rustc_hash::FxHashSet;
use smallvec::SmallVec;

use super::queue::TrialStart;
use super::TrialStats;
use crate::alphabet::{LetterId, WordSet};
use crate::automata::{Naa, StateId};
use crate::matches::{MatchSet, MatchTuple, Slice};

/// A configuration with explicit buffers, for callers outside the hot loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub buffers: Vec<Vec<LetterId>>,
    pub state: StateId,
}

/// Every configuration one step away from `c`.
pub fn successors(naa: &Naa, c: &Configuration) -> BTreeSet<Configuration> {
    let mut out = BTreeSet::new();
    for (d, buf) in c.buffers.iter().enumerate() {
        let Some(&head) = buf.first() else { continue };
        for &t in naa.successors(c.state, d, head) {
            let mut next = c.clone();
            next.buffers[d].remove(0);
            next.state = t;
            out.insert(next);
        }
    }
    out
}

// Buffers are views: direction m holds word[cur[m]..read[m]] (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Cfg {
    state: StateId,
    cur: SmallVec<[u32; 4]>,
}

/// Reusable per-worker trial state.
pub struct TrialRunner<'a> {
    naa: &'a Naa,
    ws: &'a WordSet,
    prune_non_waiting: bool,
    configs: Vec<Cfg>,
    seen: FxHashSet<Cfg>,
    work: Vec<usize>,
    reached: Vec<bool>,
    reached_list: Vec<StateId>,
}

impl<'a> TrialRunner<'a> {
    pub fn new(naa: &'a Naa, ws: &'a WordSet, prune_non_waiting: bool) -> Self {
        TrialRunner {
            naa,
            ws,
            prune_non_waiting,
            configs: Vec::new(),
            seen: FxHashSet::default(),
            work: Vec::new(),
            reached: vec![false; naa.num_states()],
            reached_list: Vec::new(),
        }
    }

    /// States visited by the last trial.
    pub fn reached(&self) -> &[StateId] {
        &self.reached_list
    }

    /// Runs one trial, adding its matches to `out`.
    pub fn run(&mut self, start: &TrialStart, out: &mut MatchSet, stats: &mut TrialStats) {
        let k = self.naa.k();
        let words: SmallVec<[&[LetterId]; 4]> =
            start.words.iter().map(|&w| self.ws.word(w as usize).letters()).collect();
        let mut read: SmallVec<[u32; 4]> = start.starts.clone();
        for &s in &self.reached_list {
            self.reached[s as usize] = false;
        }
        self.reached_list.clear();
        self.configs.clear();
        self.seen.clear();
        self.work.clear();

        let cur0: SmallVec<[u32; 4]> = start.starts.iter().map(|&i| i - 1).collect();
        for &s in self.naa.initial() {
            let c = Cfg { state: s, cur: cur0.clone() };
            if self.seen.insert(c.clone()) {
                self.configs.push(c);
                self.work.push(self.configs.len() - 1);
            }
        }
        self.step(start, &words, &read, out, stats);

        while !self.configs.is_empty() {
            let mut advanced = false;
            for m in 0..k {
                if read[m] as usize >= words[m].len() {
                    continue;
                }
                advanced = true;
                read[m] += 1;
                let edge = read[m] - 1;
                self.work.extend(self.configs.iter().enumerate().filter(|(_, c)| c.cur[m] == edge).map(|(i, _)| i));
                self.step(start, &words, &read, out, stats);
                if self.configs.is_empty() {
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }

    /// Saturates from the worklist, detects on new configurations, then
    /// drops configurations with no empty buffer.
    fn step(
        &mut self,
        start: &TrialStart,
        words: &[&[LetterId]],
        read: &[u32],
        out: &mut MatchSet,
        stats: &mut TrialStats,
    ) {
        let naa = self.naa;
        while let Some(idx) = self.work.pop() {
            let c = self.configs[idx].clone();
            if !self.reached[c.state as usize] {
                self.reached[c.state as usize] = true;
                self.reached_list.push(c.state);
            }
            if naa.is_accepting(c.state) {
                stats.detections += 1;
                let t = MatchTuple::new(
                    (0..words.len()).map(|m| Slice::new(start.words[m], start.starts[m], c.cur[m])),
                );
                if !out.contains(&t) {
                    debug_assert!(t.is_accepted(naa, self.ws).unwrap_or(false), "unsound match {t}");
                    out.insert(t);
                }
            }
            for d in 0..words.len() {
                let p = c.cur[d];
                if p >= read[d] {
                    continue;
                }
                for &t in naa.successors(c.state, d, words[d][p as usize]) {
                    let mut next = Cfg { state: t, cur: c.cur.clone() };
                    next.cur[d] += 1;
                    if !self.seen.contains(&next) {
                        self.seen.insert(next.clone());
                        self.configs.push(next);
                        self.work.push(self.configs.len() - 1);
                    }
                }
            }
        }
        stats.configurations_peak = stats.configurations_peak.max(self.configs.len() as u64);
        if self.prune_non_waiting {
            let waiting = |c: &Cfg| c.cur.iter().zip(read).any(|(a, b)| a == b);
            self.configs.retain(waiting);
            self.seen.retain(waiting);
        }
    }
}

/// One trial from `start`: its matches and the states it visited.
pub fn run_trial(naa: &Naa, ws: &WordSet, start: &TrialStart) -> (MatchSet, BTreeSet<StateId>) {
    let mut runner = TrialRunner::new(naa, ws, true);
    let mut out = MatchSet::new();
    runner.run(start, &mut out, &mut TrialStats::default());
    let reached = runner.reached().iter().copied().collect();
    (out, reached)
}
