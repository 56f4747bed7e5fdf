//! Match tuples and match sets.

use std::collections::BTreeSet;
use std::fmt;

use smallvec::SmallVec;

use crate::alphabet::{LetterId, WordSet};
use crate::automata::Naa;
use crate::error::Result;

/// One slice `(word, begin, end)`: 0-based word id, 1-based inclusive
/// positions, `end == begin - 1` for the empty slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice {
    pub word: u32,
    pub begin: u32,
    pub end: u32,
}

impl Slice {
    pub fn new(word: u32, begin: u32, end: u32) -> Self {
        Slice { word, begin, end }
    }

    pub fn is_empty(&self) -> bool {
        self.end + 1 == self.begin
    }

    pub fn letters<'w>(&self, ws: &'w WordSet) -> &'w [LetterId] {
        ws.word(self.word as usize).slice(self.begin as usize, self.end as usize)
    }
}

/// A k-tuple of slices in direction order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchTuple(pub SmallVec<[Slice; 4]>);

impl MatchTuple {
    pub fn new(entries: impl IntoIterator<Item = Slice>) -> Self {
        MatchTuple(entries.into_iter().collect())
    }

    pub fn entries(&self) -> &[Slice] {
        &self.0
    }

    /// Whether the sliced subwords are accepted as a tuple.
    pub fn is_accepted(&self, naa: &Naa, ws: &WordSet) -> Result<bool> {
        let parts: SmallVec<[&[LetterId]; 4]> = self.0.iter().map(|s| s.letters(ws)).collect();
        naa.accepts_tuple(&parts)
    }
}

impl fmt::Display for MatchTuple {
    /// `[(0,1,3),(0,3,4)]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{},{})", s.word, s.begin, s.end)?;
        }
        f.write_str("]")
    }
}

/// A duplicate-free set of match tuples, iterated in lexicographic order.
pub type MatchSet = BTreeSet<MatchTuple>;

/// Shorthand for tests and examples: `tuple(&[(0, 1, 3), (0, 3, 4)])`.
pub fn tuple(entries: &[(u32, u32, u32)]) -> MatchTuple {
    MatchTuple::new(entries.iter().map(|&(w, b, e)| Slice::new(w, b, e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_order() {
        let a = tuple(&[(0, 1, 3), (0, 3, 4)]);
        assert_eq!(a.to_string(), "[(0,1,3),(0,3,4)]");
        let b = tuple(&[(0, 1, 3), (0, 3, 3)]);
        let set: MatchSet = [a.clone(), b.clone(), a.clone()].into_iter().collect();
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![b, a]);
        assert!(Slice::new(0, 3, 2).is_empty());
    }
}
