//! The matching engines: naive trials, FJS skipping and projection pruning.

mod queue;
mod trial;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use queue::{PositionMask, QueueIter, TrialQueue, TrialStart};
pub use trial::{run_trial, successors, Configuration, TrialRunner};

use crate::alphabet::WordSet;
use crate::automata::Naa;
use crate::error::{Error, Result};
use crate::matches::MatchSet;
use crate::prune::{projected_starts, QueueMode};
use crate::skip::SkipTables;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Naive,
    Fjs,
    Proj,
    FjsProj,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Naive, Algorithm::Fjs, Algorithm::Proj, Algorithm::FjsProj];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Fjs => "fjs",
            Algorithm::Proj => "proj",
            Algorithm::FjsProj => "fjs-proj",
        }
    }

    pub fn skips(self) -> bool {
        matches!(self, Algorithm::Fjs | Algorithm::FjsProj)
    }

    pub fn projects(self) -> bool {
        matches!(self, Algorithm::Proj | Algorithm::FjsProj)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Guard(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub queue_mode: QueueMode,
    /// Worker threads; 1 runs on the calling thread.
    pub workers: usize,
    /// Drop configurations with no empty buffer after each step.
    pub prune_non_waiting: bool,
    /// Keep every invalidated range in the outcome.
    pub record_skips: bool,
    pub deadline: Option<Instant>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            queue_mode: QueueMode::Filtered,
            workers: 1,
            prune_non_waiting: true,
            record_skips: false,
            deadline: None,
        }
    }
}

/// Counters for one engine run. Skip and pruning counts are in
/// (word, direction, position) units except `pruned_by_projection`, which
/// counts queue entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrialStats {
    pub trials: u64,
    pub configurations_peak: u64,
    pub detections: u64,
    pub skipped_qs: u64,
    pub skipped_kmp: u64,
    pub pruned_by_projection: u128,
    pub queue_entries: u128,
    pub elapsed: Duration,
}

impl TrialStats {
    fn merge(mut self, o: TrialStats) -> TrialStats {
        self.trials += o.trials;
        self.configurations_peak = self.configurations_peak.max(o.configurations_peak);
        self.detections += o.detections;
        self.skipped_qs += o.skipped_qs;
        self.skipped_kmp += o.skipped_kmp;
        self
    }

    /// `key=value` pairs in a fixed order.
    pub fn render(&self, algorithm: Algorithm, matches: usize) -> String {
        format!(
            "algorithm={} matches={} trials={} configurations_peak={} detections={} skipped_qs={} skipped_kmp={} \
             pruned_by_projection={} queue_entries={} elapsed_us={}",
            algorithm,
            matches,
            self.trials,
            self.configurations_peak,
            self.detections,
            self.skipped_qs,
            self.skipped_kmp,
            self.pruned_by_projection,
            self.queue_entries,
            self.elapsed.as_micros()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkipCause {
    Qs,
    Kmp,
}

/// Positions `lo..=hi` of `word` invalidated for `direction` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkipRecord {
    pub word: u32,
    pub direction: u32,
    pub lo: u32,
    pub hi: u32,
    pub cause: SkipCause,
}

#[derive(Clone, Debug)]
pub struct MatchOutcome {
    pub matches: MatchSet,
    pub stats: TrialStats,
    pub skips: Vec<SkipRecord>,
}

/// Builds the initial queue for `algorithm` and returns it with the
/// skip tables FJS needs (None when the language is empty).
fn prepare(
    naa: &Naa,
    ws: &WordSet,
    algorithm: Algorithm,
    opts: &EngineOptions,
    stats: &mut TrialStats,
) -> Result<Option<(TrialQueue, Option<SkipTables>)>> {
    let k = naa.k();
    let tables = if algorithm.skips() {
        match SkipTables::compute(naa) {
            Ok(t) => Some(t),
            Err(Error::EmptyPatternLanguage) => return Ok(None),
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let bound: Vec<usize> = match &tables {
        Some(t) => t.qs.sm_per_dir.clone(),
        None => vec![0; k],
    };
    let base = TrialQueue::bounded(k, ws, &bound);
    let queue = if algorithm.projects() {
        let allowed = projected_starts(naa, ws, opts.queue_mode)?;
        let q = TrialQueue::from_fn(k, ws, |m, w, h| h + bound[m] <= ws.word(w).len() + 1 && allowed[m][w][h - 1]);
        stats.pruned_by_projection = base.len() - q.len();
        q
    } else {
        base
    };
    stats.queue_entries = queue.len();
    Ok(Some((queue, tables)))
}

/// Per-worker state.
struct Worker<'a> {
    naa: &'a Naa,
    ws: &'a WordSet,
    queue: &'a TrialQueue,
    tables: Option<&'a SkipTables>,
    runner: TrialRunner<'a>,
    matches: MatchSet,
    stats: TrialStats,
    skips: Vec<SkipRecord>,
    record: bool,
    deadline: Option<Instant>,
}

impl<'a> Worker<'a> {
    fn new(naa: &'a Naa, ws: &'a WordSet, queue: &'a TrialQueue, tables: Option<&'a SkipTables>, opts: &EngineOptions) -> Self {
        Worker {
            naa,
            ws,
            queue,
            tables,
            runner: TrialRunner::new(naa, ws, opts.prune_non_waiting),
            matches: MatchSet::new(),
            stats: TrialStats::default(),
            skips: Vec::new(),
            record: opts.record_skips,
            deadline: opts.deadline,
        }
    }

    fn invalidate(&mut self, word: u32, m: usize, lo: usize, hi: usize, cause: SkipCause) {
        if lo > hi {
            return;
        }
        let n = self.queue.invalidate_range(word as usize, m, lo, hi) as u64;
        match cause {
            SkipCause::Qs => self.stats.skipped_qs += n,
            SkipCause::Kmp => self.stats.skipped_kmp += n,
        }
        if self.record {
            self.skips.push(SkipRecord { word, direction: m as u32, lo: lo as u32, hi: hi as u32, cause });
        }
    }

    /// False when the QS test rejects `start`.
    fn qs_pass(&mut self, start: &TrialStart) -> bool {
        let Some(t) = self.tables else { return true };
        let mut pass = true;
        for m in 0..self.naa.k() {
            let sm = t.qs.sm_per_dir[m];
            if sm == 0 {
                continue;
            }
            let (w, i) = (start.words[m], start.starts[m] as usize);
            let word = self.ws.word(w as usize);
            if t.qs.last_qs[m][word.at(i + sm - 1) as usize] {
                continue;
            }
            pass = false;
            let hi = if i + sm <= word.len() { i + t.qs.delta_qs[m][word.at(i + sm) as usize] - 1 } else { i };
            self.invalidate(w, m, i, hi, SkipCause::Qs);
        }
        pass
    }

    fn kmp(&mut self, start: &TrialStart) {
        let Some(t) = self.tables else { return };
        for m in 0..self.naa.k() {
            let delta = self.runner.reached().iter().map(|&s| t.kmp.delta_kmp[m][s as usize]).max().unwrap_or(1);
            let i = start.starts[m] as usize;
            self.invalidate(start.words[m], m, i + 1, i + delta - 1, SkipCause::Kmp);
        }
    }

    fn process(&mut self, start: TrialStart) -> Result<()> {
        if !self.qs_pass(&start) {
            return Ok(());
        }
        self.stats.trials += 1;
        if self.stats.trials.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout);
                }
            }
        }
        self.runner.run(&start, &mut self.matches, &mut self.stats);
        self.kmp(&start);
        Ok(())
    }
}

/// Runs `algorithm` and returns the match set with statistics.
pub fn run(naa: &Naa, ws: &WordSet, algorithm: Algorithm, opts: &EngineOptions) -> Result<MatchOutcome> {
    let t0 = Instant::now();
    let mut stats = TrialStats::default();
    let Some((queue, tables)) = prepare(naa, ws, algorithm, opts, &mut stats)? else {
        stats.elapsed = t0.elapsed();
        return Ok(MatchOutcome { matches: MatchSet::new(), stats, skips: Vec::new() });
    };
    let (matches, run_stats, mut skips) = if opts.workers <= 1 {
        let mut w = Worker::new(naa, ws, &queue, tables.as_ref(), opts);
        for start in queue.iter() {
            w.process(start)?;
        }
        (w.matches, w.stats, w.skips)
    } else {
        run_parallel(naa, ws, &queue, tables.as_ref(), opts)?
    };
    let mut stats = stats.merge(run_stats);
    skips.sort();
    stats.elapsed = t0.elapsed();
    Ok(MatchOutcome { matches, stats, skips })
}

type Partial = (MatchSet, TrialStats, Vec<SkipRecord>);

#[cfg(feature = "parallel")]
fn run_parallel(naa: &Naa, ws: &WordSet, queue: &TrialQueue, tables: Option<&SkipTables>, opts: &EngineOptions) -> Result<Partial> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().map_err(|e| Error::Pool(e.to_string()))?;
    pool.install(|| {
        (1..=queue.max_first())
            .into_par_iter()
            .try_fold(
                || Worker::new(naa, ws, queue, tables, opts),
                |mut w, first| {
                    for start in queue.iter_first(first) {
                        w.process(start)?;
                    }
                    Ok(w)
                },
            )
            .map(|w: Result<Worker>| w.map(|w| (w.matches, w.stats, w.skips)))
            .try_reduce(
                || (MatchSet::new(), TrialStats::default(), Vec::new()),
                |mut a, mut b| {
                    if a.0.len() < b.0.len() {
                        std::mem::swap(&mut a.0, &mut b.0);
                    }
                    a.0.append(&mut b.0);
                    a.2.append(&mut b.2);
                    Ok((a.0, a.1.merge(b.1), a.2))
                },
            )
    })
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(naa: &Naa, ws: &WordSet, queue: &TrialQueue, tables: Option<&SkipTables>, opts: &EngineOptions) -> Result<Partial> {
    let mut w = Worker::new(naa, ws, queue, tables, opts);
    for start in queue.iter() {
        w.process(start)?;
    }
    Ok((w.matches, w.stats, w.skips))
}

fn run_default(naa: &Naa, ws: &WordSet, algorithm: Algorithm) -> Result<(MatchSet, TrialStats)> {
    run(naa, ws, algorithm, &EngineOptions::default()).map(|o| (o.matches, o.stats))
}

pub fn hpm_naive(naa: &Naa, ws: &WordSet) -> Result<(MatchSet, TrialStats)> {
    run_default(naa, ws, Algorithm::Naive)
}

pub fn hpm_fjs(naa: &Naa, ws: &WordSet) -> Result<(MatchSet, TrialStats)> {
    run_default(naa, ws, Algorithm::Fjs)
}

pub fn hpm_proj(naa: &Naa, ws: &WordSet) -> Result<(MatchSet, TrialStats)> {
    run_default(naa, ws, Algorithm::Proj)
}

pub fn hpm_fjs_proj(naa: &Naa, ws: &WordSet) -> Result<(MatchSet, TrialStats)> {
    run_default(naa, ws, Algorithm::FjsProj)
}
