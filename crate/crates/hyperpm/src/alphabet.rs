//! Letters, alphabets and words.
//!
//! Letters are interned: a [`Word`] stores dense [`LetterId`]s into its
//! [`Alphabet`]. Slice arithmetic is 1-indexed and inclusive, with
//! `(i, i - 1)` standing for the empty slice at position `i`.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub type LetterId = u32;

/// An opaque letter token such as `a`, `sQ` or `aT`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(String);

impl Letter {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() || token.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::InvalidToken(token));
        }
        Ok(Letter(token))
    }

    pub fn token(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A non-empty ordered set of letters.
#[derive(Clone, Debug)]
pub struct Alphabet {
    letters: Vec<Letter>,
    index: FxHashMap<String, LetterId>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut letters = Vec::new();
        let mut index = FxHashMap::default();
        for token in tokens {
            let letter = Letter::new(token)?;
            let id = letters.len() as LetterId;
            if index.insert(letter.0.clone(), id).is_some() {
                return Err(Error::DuplicateLetter(letter.0));
            }
            letters.push(letter);
        }
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet { letters, index })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, id: LetterId) -> &Letter {
        &self.letters[id as usize]
    }

    pub fn token(&self, id: LetterId) -> &str {
        self.letters[id as usize].token()
    }

    pub fn id(&self, token: &str) -> Option<LetterId> {
        self.index.get(token).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = LetterId> {
        0..self.letters.len() as LetterId
    }

    /// Letter ids ordered by token bytes, for deterministic reports.
    pub fn ids_by_token(&self) -> Vec<LetterId> {
        let mut ids: Vec<LetterId> = self.ids().collect();
        ids.sort_by(|a, b| self.token(*a).cmp(self.token(*b)));
        ids
    }

    /// Parses whitespace-separated tokens into a word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|t| self.id(t).ok_or_else(|| Error::UnknownLetter(t.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn format_word(&self, word: &Word) -> String {
        self.format_letters(word.letters())
    }

    pub fn format_letters(&self, letters: &[LetterId]) -> String {
        letters.iter().map(|&l| self.token(l)).collect::<Vec<_>>().join(" ")
    }
}

/// A finite word over some alphabet, stored as letter ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<LetterId>);

impl Word {
    pub fn new(letters: Vec<LetterId>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[LetterId] {
        &self.0
    }

    /// The letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> LetterId {
        self.0[i - 1]
    }

    /// The subword `w|i..j` (1-based, inclusive); `slice(i, i - 1)` is empty.
    pub fn slice(&self, i: usize, j: usize) -> &[LetterId] {
        assert!(i >= 1 && j + 1 >= i && j <= self.len(), "slice ({i},{j}) out of range");
        &self.0[i - 1..j]
    }
}

impl From<Vec<LetterId>> for Word {
    fn from(v: Vec<LetterId>) -> Self {
        Word(v)
    }
}

/// An ordered list of words; a word's id is its index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSet {
    words: Vec<Word>,
}

impl WordSet {
    pub fn new(words: Vec<Word>) -> Self {
        WordSet { words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, id: usize) -> &Word {
        &self.words[id]
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }
}

impl FromIterator<Word> for WordSet {
    fn from_iter<T: IntoIterator<Item = Word>>(iter: T) -> Self {
        WordSet::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tokens() {
        assert!(Letter::new("a b").is_err());
        assert!(Letter::new("a,b").is_err());
        assert!(Letter::new("").is_err());
        assert!(Letter::new("(a|T)").is_ok());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn parse_and_slice() {
        let sigma = Alphabet::new(["⋈", "a", "b"]).unwrap();
        let w = sigma.parse_word("⋈ a ⋈ b").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.slice(1, 3), &[0, 1, 0]);
        assert!(w.slice(3, 2).is_empty());
        assert_eq!(sigma.format_letters(w.slice(2, 4)), "a ⋈ b");
        assert!(sigma.parse_word("a c").is_err());
    }

    #[test]
    fn token_order() {
        let sigma = Alphabet::new(["⋈", "b", "a"]).unwrap();
        let order: Vec<&str> = sigma.ids_by_token().into_iter().map(|i| sigma.token(i)).collect();
        assert_eq!(order, ["a", "b", "⋈"]);
    }
}
