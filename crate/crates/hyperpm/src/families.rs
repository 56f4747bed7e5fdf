//! Builders for the benchmark automata and seeded instance generation.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, LetterId, Word, WordSet};
use crate::automata::{Naa, NaaBuilder};
use crate::error::{Error, Result};
use crate::oracle::{naa_from_cnf, Cnf};
use crate::rng::{random_words, XorShift64Star};

/// Letter tokens for input/output pairs: `aT` is `(a, ⊤)`, `aF` is `(a, ⊥)`.
pub const IO_LETTERS: [&str; 4] = ["aF", "aT", "bF", "bT"];

fn alphabet(tokens: &[&str]) -> Alphabet {
    Alphabet::new(tokens.iter().copied()).expect("static alphabet")
}

/// The counting automaton: `⟨⋈,1⟩⟨⋈,2⟩(⟨a,1⟩⟨b,2⟩)*⟨⋈,1⟩`.
pub fn build_counting_naa() -> Naa {
    build_counting_naa_with(&[]).expect("counting automaton")
}

/// The counting automaton over `⋈ a b` plus `extra` letters that no
/// transition reads.
pub fn build_counting_naa_with(extra: &[&str]) -> Result<Naa> {
    NaaBuilder::new(Alphabet::new(["⋈", "a", "b"].iter().chain(extra).copied())?, 2)
        .initial("l0")
        .state("l1")
        .state("l2")
        .state("l3")
        .accepting("lf")
        .edge("l0", "⋈", 0, "l1")
        .edge("l1", "⋈", 1, "l2")
        .edge("l2", "a", 0, "l3")
        .edge("l3", "b", 1, "l2")
        .edge("l2", "⋈", 0, "lf")
        .build()
}

/// Pairs of runs agreeing on inputs and initial output but ending with
/// different outputs.
pub fn build_interference_naa() -> Naa {
    let mut b = NaaBuilder::new(alphabet(&IO_LETTERS), 2).initial("s0");
    for i in 1..=10 {
        b = b.state(format!("s{i}"));
    }
    b = b.accepting("s10");
    // s1..s4 and s6..s9 follow the order (a,⊥) (a,⊤) (b,⊥) (b,⊤)
    for (i, x) in IO_LETTERS.iter().enumerate() {
        let (first, inner) = (format!("s{}", i + 1), format!("s{}", i + 6));
        b = b
            .edge("s0", x, 0, first.clone())
            .edge(first, x, 1, "s5")
            .edge("s5", x, 0, inner.clone())
            .edge(inner.clone(), x, 1, "s5")
            .edge(inner, flip_output(x), 1, "s10");
    }
    b.build().expect("interference automaton")
}

fn flip_output(x: &str) -> &'static str {
    match x {
        "aF" => "aT",
        "aT" => "aF",
        "bF" => "bT",
        "bT" => "bF",
        _ => unreachable!("not an io letter"),
    }
}

fn input_of(x: &str) -> char {
    x.chars().next().unwrap()
}

fn output_of(x: &str) -> char {
    x.chars().nth(1).unwrap()
}

/// Stutter-robustness violations.
///
/// States: `e` (unlabeled initial), `x` for each io letter (first block of
/// direction 1), `x_2` (both directions synchronized on block `x`),
/// `y_x` (direction 1 moved on to `y` after block `x`) and the accepting `f`.
/// Every labeled state loops on its label in the direction of its incoming
/// edges; accepting edges read `(σ, ¬γ)` on direction 2 from a state labeled
/// `(σ, γ)` entered from `e` or from a state labeled `(σ', γ)` with `σ' ≠ σ`.
pub fn build_robustness_naa() -> Naa {
    let mut b = NaaBuilder::new(alphabet(&IO_LETTERS), 2).initial("e");
    for x in IO_LETTERS {
        b = b.state(x);
    }
    for x in IO_LETTERS {
        b = b.state(format!("{x}_2"));
    }
    for x in IO_LETTERS {
        for y in IO_LETTERS.iter().filter(|&&y| y != x) {
            b = b.state(format!("{y}_{x}"));
        }
    }
    b = b.accepting("f");
    for x in IO_LETTERS {
        let synced = format!("{x}_2");
        b = b
            .edge("e", x, 0, x)
            .edge(x, x, 0, x)
            .edge(x, x, 1, synced.clone())
            .edge(synced.clone(), x, 1, synced.clone())
            .edge(x, flip_output(x), 1, "f");
        for y in IO_LETTERS.iter().copied().filter(|&y| y != x) {
            let moved = format!("{y}_{x}");
            b = b
                .edge(synced.clone(), y, 0, moved.clone())
                .edge(moved.clone(), y, 0, moved.clone())
                .edge(moved.clone(), y, 1, format!("{y}_2"));
            if output_of(y) == output_of(x) && input_of(y) != input_of(x) {
                b = b.edge(moved, flip_output(y), 1, "f");
            }
        }
    }
    b.build().expect("robustness automaton")
}

/// Requests on direction 1 matched with responses of twice the size on
/// direction 2.
pub fn build_packet_pairs_naa() -> Naa {
    let mut b = NaaBuilder::new(alphabet(&["sQ", "Q", "eQ", "sP", "P", "eP"]), 2)
        .initial("l0")
        .state("l1")
        .state("l2")
        .state("l3")
        .state("l4")
        .state("l5")
        .accepting("lf")
        .edge("l0", "sQ", 0, "l1")
        .edge("l1", "sP", 1, "l2")
        .edge("l2", "Q", 0, "l3")
        .edge("l3", "P", 1, "l4")
        .edge("l4", "P", 1, "l2")
        .edge("l2", "eQ", 0, "l5")
        .edge("l5", "eP", 1, "lf");
    for s in ["l2", "l3", "l4"] {
        for x in ["sP", "P", "eP"] {
            b = b.edge(s, x, 0, s);
        }
        for x in ["sQ", "Q", "eQ"] {
            b = b.edge(s, x, 1, s);
        }
    }
    b.build().expect("packet-pairs automaton")
}

/// Three `a_m` followed by `b` on each direction `m`, directions in order.
pub fn build_blowup_naa(k: usize) -> Result<Naa> {
    if k == 0 {
        return Err(Error::NoDirections);
    }
    let mut tokens: Vec<String> = (1..=k).map(|m| format!("a{m}")).collect();
    tokens.push("b".into());
    let mut b = NaaBuilder::new(Alphabet::new(tokens)?, k).initial("s1_1");
    for m in 1..=k {
        let a = format!("a{m}");
        for j in 1..=3 {
            b = b.edge(format!("s{m}_{j}"), &a, m - 1, format!("s{m}_{}", j + 1));
        }
        let next = if m == k { "f".to_string() } else { format!("s{}_1", m + 1) };
        b = b.edge(format!("s{m}_4"), "b", m - 1, next);
    }
    b.accepting("f").build()
}

/// Letter read on direction `m` (0-based) inside the loop of the
/// many-directions automaton.
pub fn many_dirs_letter(m: usize) -> String {
    ((b'a' + m as u8) as char).to_string()
}

/// Opening `⋈` on each direction in order, a round-robin loop reading the
/// m-th letter on direction m, and a closing `⋈` on direction 1.
pub fn build_many_dirs_naa(k: usize) -> Result<Naa> {
    if !(2..=26).contains(&k) {
        return Err(Error::Guard(format!("many-dirs needs 2 <= k <= 26, got {k}")));
    }
    let mut tokens = vec!["⋈".to_string()];
    tokens.extend((0..k).map(many_dirs_letter));
    let mut b = NaaBuilder::new(Alphabet::new(tokens)?, k).initial("l0");
    for m in 0..k {
        b = b.edge(format!("l{m}"), "⋈", m, format!("l{}", m + 1));
    }
    let head = format!("l{k}");
    let mut prev = head.clone();
    for m in 0..k {
        let next = if m + 1 == k { head.clone() } else { format!("l{}", k + 1 + m) };
        b = b.edge(prev, &many_dirs_letter(m), m, next.clone());
        prev = next;
    }
    b.edge(head, "⋈", 0, "lf").accepting("lf").build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Counting,
    Interference,
    Robustness,
    PacketPairs,
    ManyDirs,
    Blowup,
    Cnf,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Counting,
        Family::Interference,
        Family::Robustness,
        Family::PacketPairs,
        Family::ManyDirs,
        Family::Blowup,
        Family::Cnf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Counting => "counting",
            Family::Interference => "interference",
            Family::Robustness => "robustness",
            Family::PacketPairs => "packet-pairs",
            Family::ManyDirs => "many-dirs",
            Family::Blowup => "blowup",
            Family::Cnf => "cnf",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Guard(format!("unknown family {s:?}")))
    }
}

/// A generated benchmark instance.
///
/// For `blowup`, the words are `a_m^len b` for each direction and `count` is
/// ignored. For `cnf`, `k` is the number of variables, `word_len` the number
/// of clauses, and the words are those of the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub family: Family,
    pub k: usize,
    pub word_len: usize,
    pub word_count: usize,
    pub seed: u64,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<()> {
        if matches!(self.family, Family::ManyDirs | Family::Blowup) && self.k < 2 {
            return Err(Error::Guard(format!("{} needs k >= 2", self.family)));
        }
        if self.word_len == 0 {
            return Err(Error::Guard("word length must be at least 1".into()));
        }
        Ok(())
    }

    pub fn naa(&self) -> Result<Naa> {
        self.validate()?;
        Ok(match self.family {
            Family::Counting => build_counting_naa(),
            Family::Interference => build_interference_naa(),
            Family::Robustness => build_robustness_naa(),
            Family::PacketPairs => build_packet_pairs_naa(),
            Family::ManyDirs => build_many_dirs_naa(self.k)?,
            Family::Blowup => build_blowup_naa(self.k)?,
            Family::Cnf => naa_from_cnf(&self.cnf()).0,
        })
    }

    fn cnf(&self) -> Cnf {
        random_cnf(self.k.max(1), self.word_len, self.seed)
    }

    pub fn generate(&self) -> Result<(Naa, WordSet)> {
        let naa = self.naa()?;
        let words = match self.family {
            Family::Blowup => {
                let b = naa.alphabet().id("b").expect("b");
                (0..self.k as LetterId)
                    .map(|m| {
                        let mut w = vec![m; self.word_len];
                        w.push(b);
                        Word::new(w)
                    })
                    .collect()
            }
            Family::Cnf => naa_from_cnf(&self.cnf()).1,
            _ => random_words(naa.alphabet(), self.word_count, self.word_len, self.seed),
        };
        Ok((naa, words))
    }
}

/// A seeded CNF with `clauses` clauses of one to three distinct literals.
pub fn random_cnf(num_vars: usize, clauses: usize, seed: u64) -> Cnf {
    let mut rng = XorShift64Star::new(seed);
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let size = 1 + rng.below(num_vars.min(3) as u32) as usize;
        let mut vars: Vec<i32> = Vec::new();
        while vars.len() < size {
            let v = 1 + rng.below(num_vars as u32) as i32;
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        out.push(vars.into_iter().map(|v| if rng.below(2) == 0 { v } else { -v }).collect());
    }
    Cnf::new(num_vars, out).expect("generated cnf is well-formed")
}
