use std::sync::atomic::{AtomicU64, Ordering};

use smallvec::SmallVec;

use crate::alphabet::WordSet;

/// Starting positions `i_1..i_k` (1-based) and word ids `w_1..w_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrialStart {
    pub starts: SmallVec<[u32; 4]>,
    pub words: SmallVec<[u32; 4]>,
}

impl TrialStart {
    pub fn new(starts: &[u32], words: &[u32]) -> Self {
        TrialStart { starts: starts.into(), words: words.into() }
    }
}

/// Set of live 1-based positions of one (word, direction) pair.
///
/// Removal is a single atomic `fetch_and`, so concurrent invalidations are
/// never lost and a removed position stays removed.
#[derive(Debug)]
pub struct PositionMask {
    bits: Vec<AtomicU64>,
    len: usize,
}

impl PositionMask {
    pub fn new(len: usize, allowed: impl Fn(usize) -> bool) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for h in 1..=len {
            if allowed(h) {
                words[(h - 1) / 64] |= 1 << ((h - 1) % 64);
            }
        }
        PositionMask { bits: words.into_iter().map(AtomicU64::new).collect(), len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    #[inline]
    pub fn contains(&self, h: usize) -> bool {
        h >= 1 && h <= self.len && self.bits[(h - 1) / 64].load(Ordering::Relaxed) >> ((h - 1) % 64) & 1 == 1
    }

    /// Removes `h`; true if it was live.
    pub fn remove(&self, h: usize) -> bool {
        if h < 1 || h > self.len {
            return false;
        }
        let bit = 1u64 << ((h - 1) % 64);
        self.bits[(h - 1) / 64].fetch_and(!bit, Ordering::Relaxed) & bit != 0
    }

    /// Removes `lo..=hi` (clamped); returns how many were live.
    pub fn remove_range(&self, lo: usize, hi: usize) -> usize {
        let (lo, hi) = (lo.max(1), hi.min(self.len));
        let mut removed = 0;
        let mut h = lo;
        while h <= hi {
            let word = (h - 1) / 64;
            let from = (h - 1) % 64;
            let to = ((hi - 1) - word * 64).min(63);
            let span = to - from + 1;
            let mask = if span == 64 { u64::MAX } else { ((1u64 << span) - 1) << from };
            let old = self.bits[word].fetch_and(!mask, Ordering::Relaxed);
            removed += (old & mask).count_ones() as usize;
            h = (word + 1) * 64 + 1;
        }
        removed
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.load(Ordering::Relaxed).count_ones() as usize).sum()
    }

    pub fn max_live(&self) -> usize {
        (1..=self.len).rev().find(|&h| self.contains(h)).unwrap_or(0)
    }
}

/// The lazy trial queue: the product over directions of live
/// (word, position) pairs, yielded positions-major then word ids, both
/// lexicographically. Entries are never materialized.
#[derive(Debug)]
pub struct TrialQueue {
    k: usize,
    num_words: usize,
    masks: Vec<PositionMask>,
    max_pos: Vec<usize>,
}

impl TrialQueue {
    /// Every `1 <= i_m <= |w_m|`.
    pub fn naive(k: usize, ws: &WordSet) -> Self {
        Self::from_fn(k, ws, |_, _, _| true)
    }

    /// Every `1 <= i_m <= |w_m| - bound_m + 1`.
    pub fn bounded(k: usize, ws: &WordSet, bound: &[usize]) -> Self {
        Self::from_fn(k, ws, |m, w, h| h + bound[m] <= ws.word(w).len() + 1)
    }

    /// Live iff `allowed(direction, word, position)`.
    pub fn from_fn(k: usize, ws: &WordSet, allowed: impl Fn(usize, usize, usize) -> bool) -> Self {
        let mut masks = Vec::with_capacity(k * ws.len());
        for m in 0..k {
            for (w, word) in ws.words().iter().enumerate() {
                masks.push(PositionMask::new(word.len(), |h| allowed(m, w, h)));
            }
        }
        let max_pos = (0..k)
            .map(|m| masks[m * ws.len()..(m + 1) * ws.len()].iter().map(PositionMask::max_live).max().unwrap_or(0))
            .collect();
        TrialQueue { k, num_words: ws.len(), masks, max_pos }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn mask(&self, direction: usize, word: usize) -> &PositionMask {
        &self.masks[direction * self.num_words + word]
    }

    #[inline]
    pub fn is_live(&self, word: usize, direction: usize, position: usize) -> bool {
        self.mask(direction, word).contains(position)
    }

    pub fn invalidate(&self, word: usize, direction: usize, position: usize) -> bool {
        self.mask(direction, word).remove(position)
    }

    pub fn invalidate_range(&self, word: usize, direction: usize, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        self.mask(direction, word).remove_range(lo, hi)
    }

    /// Live positions per direction, summed over words.
    pub fn live_per_direction(&self) -> Vec<usize> {
        (0..self.k).map(|m| (0..self.num_words).map(|w| self.mask(m, w).count()).sum()).collect()
    }

    /// Number of live entries.
    pub fn len(&self) -> u128 {
        self.live_per_direction().into_iter().fold(1u128, |acc, n| acc.saturating_mul(n as u128))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest initially live first-direction position.
    pub fn max_first(&self) -> usize {
        self.max_pos.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> QueueIter<'_> {
        QueueIter::new(self, 1, self.max_first())
    }

    /// Entries whose first-direction position is `first`.
    pub fn iter_first(&self, first: usize) -> QueueIter<'_> {
        QueueIter::new(self, first, first.min(self.max_first()))
    }
}

/// Odometer over positions (outer) and candidate words (inner). Every
/// yielded entry is re-checked against the masks at yield time.
pub struct QueueIter<'q> {
    q: &'q TrialQueue,
    lo: usize,
    hi: usize,
    pos: Vec<usize>,
    cands: Vec<Vec<u32>>,
    widx: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'q> QueueIter<'q> {
    fn new(q: &'q TrialQueue, lo: usize, hi: usize) -> Self {
        QueueIter {
            q,
            lo,
            hi,
            pos: vec![0; q.k],
            cands: vec![Vec::new(); q.k],
            widx: vec![0; q.k],
            started: false,
            done: q.k == 0 || q.num_words == 0,
        }
    }

    fn level_max(&self, level: usize) -> usize {
        if level == 0 {
            self.hi
        } else {
            self.q.max_pos[level]
        }
    }

    fn fill(&mut self, level: usize, p: usize) -> bool {
        let q = self.q;
        let c = &mut self.cands[level];
        c.clear();
        c.extend((0..q.num_words as u32).filter(|&w| q.mask(level, w as usize).contains(p)));
        !c.is_empty()
    }

    /// Moves to the next position tuple whose candidate lists are all
    /// non-empty, starting at `level` (fresh: from its minimum, else
    /// strictly after its current position).
    fn advance_pos(&mut self, mut level: usize, mut fresh: bool) -> bool {
        loop {
            let start = if fresh {
                if level == 0 {
                    self.lo
                } else {
                    1
                }
            } else {
                self.pos[level] + 1
            };
            let max = self.level_max(level);
            let found = (start..=max).find(|&p| self.fill(level, p));
            match found {
                Some(p) => {
                    self.pos[level] = p;
                    if level + 1 == self.q.k {
                        self.widx.iter_mut().for_each(|x| *x = 0);
                        return true;
                    }
                    level += 1;
                    fresh = true;
                }
                None => {
                    if level == 0 {
                        return false;
                    }
                    level -= 1;
                    fresh = false;
                }
            }
        }
    }

    fn advance_words(&mut self) -> bool {
        for level in (0..self.q.k).rev() {
            self.widx[level] += 1;
            if self.widx[level] < self.cands[level].len() {
                return true;
            }
            self.widx[level] = 0;
        }
        false
    }

    /// Drops invalidated candidates above the deepest level; returns the
    /// shallowest level left without candidates.
    fn refilter(&mut self) -> Option<usize> {
        let q = self.q;
        for level in 0..q.k - 1 {
            let p = self.pos[level];
            self.cands[level].retain(|&w| q.mask(level, w as usize).contains(p));
            if self.cands[level].is_empty() {
                return Some(level);
            }
        }
        None
    }

    fn current_live(&self) -> bool {
        (0..self.q.k).all(|m| self.q.mask(m, self.cands[m][self.widx[m]] as usize).contains(self.pos[m]))
    }
}

impl Iterator for QueueIter<'_> {
    type Item = TrialStart;

    fn next(&mut self) -> Option<TrialStart> {
        if self.done {
            return None;
        }
        loop {
            let ok = if !self.started {
                self.started = true;
                self.advance_pos(0, true)
            } else if self.advance_words() {
                true
            } else {
                match self.refilter() {
                    Some(level) => self.advance_pos(level, false),
                    None => self.advance_pos(self.q.k - 1, false),
                }
            };
            if !ok {
                self.done = true;
                return None;
            }
            if self.current_live() {
                let k = self.q.k;
                return Some(TrialStart {
                    starts: (0..k).map(|m| self.pos[m] as u32).collect(),
                    words: (0..k).map(|m| self.cands[m][self.widx[m]]).collect(),
                });
            }
        }
    }
}
