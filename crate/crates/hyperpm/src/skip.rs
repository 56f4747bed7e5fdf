//! Quick-Search and KMP style skip values.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::alphabet::LetterId;
use crate::automata::{Dfa, Naa, StateId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QsTable {
    /// Length of a shortest accepted extended word.
    pub sm: usize,
    /// Least number of direction-m letters among the first `sm` letters of
    /// an accepted extended word.
    pub sm_per_dir: Vec<usize>,
    /// `last_qs[m][σ]`: σ can be the `sm_per_dir[m]`-th letter of a
    /// projected word.
    pub last_qs: Vec<Vec<bool>>,
    pub delta_qs: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmpTable {
    /// `delta_kmp[m][s]`
    pub delta_kmp: Vec<Vec<usize>>,
    /// Search bound used for each `(m, s)`.
    pub cap: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkipTables {
    pub qs: QsTable,
    pub kmp: KmpTable,
}

impl SkipTables {
    pub fn compute(naa: &Naa) -> Result<Self> {
        Ok(SkipTables { qs: compute_qs_table(naa)?, kmp: compute_kmp_delta(naa)? })
    }

    /// Line-oriented dump: `SM`, `SM_m`, `LastQS_m`, `DeltaQS_m` and
    /// `DeltaKMP_m` for each direction m (1-based). Letter sets and maps are
    /// ordered by token, KMP maps by state id.
    pub fn render(&self, naa: &Naa) -> String {
        let sigma = naa.alphabet();
        let order = sigma.ids_by_token();
        let mut out = String::new();
        let _ = writeln!(out, "SM={}", self.qs.sm);
        for (m, v) in self.qs.sm_per_dir.iter().enumerate() {
            let _ = writeln!(out, "SM_{}={}", m + 1, v);
        }
        for m in 0..naa.k() {
            let set: Vec<&str> = order.iter().filter(|&&a| self.qs.last_qs[m][a as usize]).map(|&a| sigma.token(a)).collect();
            let _ = writeln!(out, "LastQS_{}={{{}}}", m + 1, set.join(","));
        }
        for m in 0..naa.k() {
            let map: Vec<String> =
                order.iter().map(|&a| format!("{}:{}", sigma.token(a), self.qs.delta_qs[m][a as usize])).collect();
            let _ = writeln!(out, "DeltaQS_{}={{{}}}", m + 1, map.join(","));
        }
        for m in 0..naa.k() {
            let map: Vec<String> = (0..naa.num_states())
                .map(|s| format!("{}:{}", naa.state_name(s as StateId), self.kmp.delta_kmp[m][s]))
                .collect();
            let _ = writeln!(out, "DeltaKMP_{}={{{}}}", m + 1, map.join(","));
        }
        out
    }
}

fn coaccessible(naa: &Naa) -> Vec<bool> {
    naa.underlying_nfa().coaccessible_states()
}

/// `(SM, [SM_m])`.
pub fn compute_sm_per_dir(naa: &Naa) -> Result<(usize, Vec<usize>)> {
    let sm = naa.underlying_nfa().shortest_accepted_length().ok_or(Error::EmptyPatternLanguage)?;
    let co = coaccessible(naa);
    let n = naa.num_states();
    let per_dir = (0..naa.k())
        .map(|m| {
            // best[s]: least direction-m count over length-d paths ending in s
            let mut best = vec![usize::MAX; n];
            for &s in naa.initial() {
                if co[s as usize] {
                    best[s as usize] = 0;
                }
            }
            for _ in 0..sm {
                let mut next = vec![usize::MAX; n];
                for t in naa.transitions() {
                    let b = best[t.from as usize];
                    if b != usize::MAX && co[t.to as usize] {
                        let c = b + usize::from(t.direction == m);
                        let slot = &mut next[t.to as usize];
                        *slot = (*slot).min(c);
                    }
                }
                best = next;
            }
            best.into_iter().min().expect("a shortest accepted word exists")
        })
        .collect();
    Ok((sm, per_dir))
}

/// `letters[p - 1][σ]`: σ occurs at projected position `p` (1..=depth) of
/// some word in `π(L)|m`.
fn projected_letter_sets(naa: &Naa, m: usize, depth: usize, co: &[bool]) -> Vec<Vec<bool>> {
    let n = naa.num_states();
    let sigma = naa.alphabet().len();
    let mut letters = vec![vec![false; sigma]; depth];
    if depth == 0 {
        return letters;
    }
    let mut out: Vec<Vec<(LetterId, usize, StateId)>> = vec![Vec::new(); n];
    for t in naa.transitions() {
        if co[t.to as usize] {
            out[t.from as usize].push((t.letter, t.direction, t.to));
        }
    }
    // (state, projected depth) with depth < `depth`
    let mut seen = vec![false; n * depth];
    let mut queue = VecDeque::new();
    for &s in naa.initial() {
        if co[s as usize] && !seen[s as usize * depth] {
            seen[s as usize * depth] = true;
            queue.push_back((s, 0usize));
        }
    }
    while let Some((s, d)) = queue.pop_front() {
        for &(a, dir, t) in &out[s as usize] {
            let nd = if dir == m {
                letters[d][a as usize] = true;
                d + 1
            } else {
                d
            };
            if nd < depth && !seen[t as usize * depth + nd] {
                seen[t as usize * depth + nd] = true;
                queue.push_back((t, nd));
            }
        }
    }
    letters
}

pub fn compute_last_qs(naa: &Naa) -> Result<Vec<Vec<bool>>> {
    Ok(compute_qs_table(naa)?.last_qs)
}

pub fn compute_qs_delta(naa: &Naa) -> Result<Vec<Vec<usize>>> {
    Ok(compute_qs_table(naa)?.delta_qs)
}

pub fn compute_qs_table(naa: &Naa) -> Result<QsTable> {
    let (sm, sm_per_dir) = compute_sm_per_dir(naa)?;
    let co = coaccessible(naa);
    let sigma = naa.alphabet().len();
    let mut last_qs = Vec::with_capacity(naa.k());
    let mut delta_qs = Vec::with_capacity(naa.k());
    for (m, &smm) in sm_per_dir.iter().enumerate() {
        let sets = projected_letter_sets(naa, m, smm, &co);
        last_qs.push(if smm == 0 { vec![false; sigma] } else { sets[smm - 1].clone() });
        let mut delta = vec![smm + 1; sigma];
        for (p, set) in sets.iter().enumerate() {
            for a in 0..sigma {
                if set[a] {
                    // position p + 1 gives shift smm + 1 - (p + 1)
                    delta[a] = delta[a].min(smm - p);
                }
            }
        }
        delta_qs.push(delta);
    }
    Ok(QsTable { sm, sm_per_dir, last_qs, delta_qs })
}

/// Whether `(L(d1)·Σ*) ∩ (Σⁿ·L(d2)·Σ*)` is non-empty.
pub fn shifted_prefix_overlap(d1: &Dfa, d2: &Dfa, n: usize) -> bool {
    assert!(n >= 1);
    let sigma = d1.num_letters();
    let done1 = d1.num_states();
    let done2 = n + d2.num_states();
    let width = done2 + 1;
    let enter1 = |s: StateId| if d1.is_accepting(s) { done1 } else { s as usize };
    let enter2 = |s: StateId| if d2.is_accepting(s) { done2 } else { n + s as usize };
    let start = (enter1(d1.initial()), 0usize);
    let mut seen = vec![false; (done1 + 1) * width];
    let mut stack = vec![start];
    seen[start.0 * width + start.1] = true;
    while let Some((x, y)) = stack.pop() {
        if x == done1 && y == done2 {
            return true;
        }
        for a in 0..sigma as LetterId {
            let nx = if x == done1 { done1 } else { enter1(d1.step(x as StateId, a)) };
            let ny = if y < n {
                if y + 1 < n {
                    y + 1
                } else {
                    enter2(d2.initial())
                }
            } else if y == done2 {
                done2
            } else {
                enter2(d2.step((y - n) as StateId, a))
            };
            if !seen[nx * width + ny] {
                seen[nx * width + ny] = true;
                stack.push((nx, ny));
            }
        }
    }
    false
}

pub fn compute_kmp_delta(naa: &Naa) -> Result<KmpTable> {
    let mut delta_kmp = Vec::with_capacity(naa.k());
    let mut cap = Vec::with_capacity(naa.k());
    for m in 0..naa.k() {
        let whole = naa.project(m)?;
        let mut deltas = Vec::with_capacity(naa.num_states());
        let mut caps = Vec::with_capacity(naa.num_states());
        for s in 0..naa.num_states() as StateId {
            let upto_s = naa.project_to_state(m, s)?;
            let bound = upto_s.num_states() * whole.num_states() + 1;
            let delta = (1..bound).find(|&n| shifted_prefix_overlap(&upto_s, &whole, n)).unwrap_or(bound);
            deltas.push(delta);
            caps.push(bound);
        }
        delta_kmp.push(deltas);
        cap.push(caps);
    }
    Ok(KmpTable { delta_kmp, cap })
}
