//! Brute-force reference implementations.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, LetterId, Word, WordSet};
use crate::automata::{Dfa, Naa, Transition};
use crate::error::{Error, Result};
use crate::matches::{MatchSet, MatchTuple, Slice};

/// Largest number of slice tuples the oracle will enumerate.
pub const ORACLE_LIMIT: u128 = 10_000_000;

/// Every slice of every word, empty slices `(i, i - 1)` for `1 <= i <= |w|`.
fn all_slices(ws: &WordSet) -> Vec<Slice> {
    let mut out = Vec::new();
    for (id, w) in ws.words().iter().enumerate() {
        for i in 1..=w.len() as u32 {
            for j in i - 1..=w.len() as u32 {
                out.push(Slice::new(id as u32, i, j));
            }
        }
    }
    out
}

/// `𝓜(naa, ws)` by enumerating all slice tuples and testing acceptance.
pub fn brute_force_match_set(naa: &Naa, ws: &WordSet) -> Result<MatchSet> {
    let slices = all_slices(ws);
    let k = naa.k();
    let total = (slices.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > ORACLE_LIMIT {
        return Err(Error::Guard(format!("{total} slice tuples exceed the oracle limit {ORACLE_LIMIT}")));
    }
    if slices.is_empty() {
        return Ok(MatchSet::new());
    }
    let per_first = |first: &Slice| -> Result<Vec<MatchTuple>> {
        let mut found = Vec::new();
        let mut idx = vec![0usize; k - 1];
        loop {
            let t = MatchTuple::new(std::iter::once(*first).chain(idx.iter().map(|&i| slices[i])));
            if t.is_accepted(naa, ws)? {
                found.push(t);
            }
            // odometer over directions 2..k
            let mut m = idx.len();
            loop {
                if m == 0 {
                    return Ok(found);
                }
                m -= 1;
                idx[m] += 1;
                if idx[m] < slices.len() {
                    break;
                }
                idx[m] = 0;
            }
        }
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<MatchTuple>> = {
        use rayon::prelude::*;
        slices.par_iter().map(per_first).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<MatchTuple>> = slices.iter().map(per_first).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Union of `[i, j]` over all non-empty `w|i..j` accepted by `dfa` (1-based).
pub fn relevant_indices_oracle(dfa: &Dfa, w: &Word) -> Result<BTreeSet<usize>> {
    if w.len() > 64 {
        return Err(Error::Guard(format!("word of length {} exceeds 64", w.len())));
    }
    let mut out = BTreeSet::new();
    for i in 1..=w.len() {
        for j in i..=w.len() {
            if dfa.accepts(w.slice(i, j)) {
                out.extend(i..=j);
            }
        }
    }
    Ok(out)
}

/// A CNF formula; literal `v` is `p_v`, `-v` is `¬p_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for c in &clauses {
            if c.is_empty() {
                return Err(Error::Guard("empty clause".into()));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::Guard(format!("literal {l} out of range 1..={num_vars}")));
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_literals(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    /// Parses DIMACS-style text: `c` comment lines, an optional
    /// `p cnf <vars> <clauses>` header, clauses terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { location: format!("line {}", n + 1), message };
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(parse_err("expected `p cnf <vars> <clauses>`".into()));
                }
                declared = Some(fields[1].parse::<usize>().map_err(|e| parse_err(e.to_string()))?);
                continue;
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| parse_err(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let used = clauses.iter().flatten().map(|l: &i32| l.unsigned_abs() as usize).max().unwrap_or(0);
        Cnf::new(declared.unwrap_or(used).max(used), clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Truth-table satisfiability.
pub fn sat_brute_force(cnf: &Cnf) -> Result<bool> {
    if cnf.num_vars > 20 {
        return Err(Error::Guard(format!("{} variables exceed 20", cnf.num_vars)));
    }
    Ok((0u32..1 << cnf.num_vars).any(|assign| {
        cnf.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let value = assign >> (l.unsigned_abs() - 1) & 1 == 1;
                value == (l > 0)
            })
        })
    }))
}

/// The reduction from satisfiability: states `l0..ln`, one direction per
/// variable, letters `T` and `F`, and the words `σ^i` for `1 <= i <= n`
/// (all `T` words first).
pub fn naa_from_cnf(cnf: &Cnf) -> (Naa, WordSet) {
    let sigma = Alphabet::new(["T", "F"]).expect("static alphabet");
    let n = cnf.clauses.len();
    let names: Vec<String> = (0..=n).map(|i| format!("l{i}")).collect();
    let transitions = cnf
        .clauses
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            c.iter().map(move |&l| Transition {
                from: i as u32,
                letter: if l > 0 { 0 } else { 1 },
                direction: l.unsigned_abs() as usize - 1,
                to: i as u32 + 1,
            })
        })
        .collect();
    let naa = Naa::new(sigma, cnf.num_vars.max(1), names, vec![0], vec![n as u32], transitions)
        .expect("reduction is well-formed");
    let words = [0 as LetterId, 1]
        .into_iter()
        .flat_map(|l| (1..=n).map(move |i| Word::new(vec![l; i])))
        .collect();
    (naa, words)
}
