//! Greedy reduction of positive words by `k`-th power deletion.
//!
//! The current element is read as `Δ^p W` with `W` the factor word of its
//! left normal form. Cyclic words `D · W_s` (with `D` an expansion of `Δ^p`
//! and `W_s` a twisted rotation of `W`) are all closure-equivalent to the
//! current word; any cyclic run of length `≥ k` in one of them is deleted.
//! When none exists, a central block `Δ^P` with a known deletion script is
//! peeled, and otherwise a single letter is removed, chosen by the length
//! left over after the cascade it triggers. Short words are finished by
//! [`ExactTable`].

use std::collections::HashSet;
use std::sync::Arc;

use crate::braid::{BraidWord, Gen};
use crate::error::Result;
use crate::garside::{conjugate_by_cycling_equal, GarsideForm};

use super::exact::ExactTable;
use super::tracker::Tracker;

/// One step of a block script, addressed inside the block prefix.
#[derive(Debug, Clone)]
pub(crate) enum ScriptStep {
    /// Replace the block prefix by an equal word.
    Rewrite(BraidWord),
    /// First letters of `k`-blocks to delete, in any order.
    Powers(Vec<usize>),
}

/// A central power `Δ^P` with a deletion script using no single deletions.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub delta_power: i64,
    pub word: BraidWord,
    pub script: Vec<ScriptStep>,
}

impl Block {
    fn powers(&self) -> u32 {
        self.script
            .iter()
            .map(|s| match s {
                ScriptStep::Powers(v) => v.len() as u32,
                ScriptStep::Rewrite(_) => 0,
            })
            .sum()
    }

    /// `Δ⁴ = (ab)⁶ = bab³ab³ab²`, four cubes.
    pub fn cubes() -> Block {
        Block {
            delta_power: 4,
            word: word("bab^3ab^3ab^2"),
            script: vec![ScriptStep::Powers(vec![2, 6]), ScriptStep::Powers(vec![1]), ScriptStep::Powers(vec![0])],
        }
    }

    /// `Δ⁸ = (ab)¹² = ab³ab⁵ab³ab⁴ab⁴`, six fourth powers.
    pub fn fourth_powers() -> Block {
        Block {
            delta_power: 8,
            word: word("ab^3ab^5ab^3ab^4ab^4"),
            script: vec![
                ScriptStep::Powers(vec![5, 15, 20]),
                ScriptStep::Rewrite(word("ab^4ab^4a^2")),
                ScriptStep::Powers(vec![1, 6]),
                ScriptStep::Powers(vec![0]),
            ],
        }
    }

    /// Applies the script to the first letters of the tracker's word.
    pub fn apply(&self, t: &mut Tracker) -> Result<()> {
        let nf = GarsideForm::of(t.cur());
        debug_assert!(nf.delta_power >= self.delta_power);
        let rest = GarsideForm {
            delta_power: nf.delta_power - self.delta_power,
            factors: nf.factors,
        }
        .expand();
        t.rewrite(self.word.concat(&rest))?;
        let mut prefix_len = self.word.length() as usize;
        for step in &self.script {
            match step {
                ScriptStep::Rewrite(p) => {
                    let tail = t.cur().letter_vec().split_off(prefix_len);
                    let target = p.concat(&BraidWord::from_letters(tail));
                    prefix_len = p.length() as usize;
                    t.rewrite(target)?;
                }
                ScriptStep::Powers(ps) => {
                    t.delete_positions(ps, &[])?;
                    prefix_len -= ps.len() * t.k() as usize;
                }
            }
        }
        Ok(())
    }
}

fn word(s: &str) -> BraidWord {
    s.parse().expect("static braid word")
}

fn flip_word(letters: &[Gen]) -> Vec<Gen> {
    letters.iter().map(|g| g.flip()).collect()
}

fn to_word(letters: &[Gen]) -> BraidWord {
    BraidWord::from_runs(letters.iter().map(|&g| (g, 1)))
}

/// Expansions of `Δ^p` as letter sequences.
fn delta_expansions(p: usize) -> Vec<Vec<Gen>> {
    use Gen::{A, B};
    if p == 0 {
        return vec![Vec::new()];
    }
    let aba: Vec<Gen> = (0..p).flat_map(|_| [A, B, A]).collect();
    let bab = flip_word(&aba);
    let alt_a: Vec<Gen> = (0..3 * p).map(|i| if i % 2 == 0 { A } else { B }).collect();
    let alt_b = flip_word(&alt_a);
    let mut out = vec![aba, bab, alt_a, alt_b];
    out.dedup();
    out
}

/// A candidate cyclic word together with the chain of rewrite targets that
/// reaches it from the current word.
#[derive(Debug, Clone)]
pub(crate) struct View {
    chain: Vec<BraidWord>,
    letters: Vec<Gen>,
}

impl View {
    fn target(&self) -> BraidWord {
        to_word(&self.letters)
    }
}

/// All views of `w` considered by the search.
pub(crate) fn views(w: &BraidWord) -> Vec<View> {
    let mut out = vec![View {
        chain: Vec::new(),
        letters: w.letters().map(|l| l.gen).collect(),
    }];
    let nf = GarsideForm::of(w);
    let p = nf.delta_power.max(0) as usize;
    let wl: Vec<Gen> = nf.factor_word().letters().map(|l| l.gen).collect();
    let base_d: Vec<Gen> = delta_expansions(p)[0].clone();
    let base: Vec<Gen> = base_d.iter().chain(wl.iter()).copied().collect();
    let base_word = to_word(&base);
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    seen.insert(out[0].letters.clone());
    let n = wl.len().max(1);
    for s in 0..n {
        // W = xY with |x| = s; W_s = τ^p(Y)·x.
        let (x, y) = wl.split_at(s.min(wl.len()));
        let y_twisted = if p % 2 == 1 { flip_word(y) } else { y.to_vec() };
        let ws: Vec<Gen> = y_twisted.iter().chain(x.iter()).copied().collect();
        let canonical: Vec<Gen> = base_d.iter().chain(ws.iter()).copied().collect();
        let flips: &[bool] = if p == 0 { &[false] } else { &[false, true] };
        for &flip in flips {
            let body = if flip { flip_word(&ws) } else { ws.clone() };
            for d in delta_expansions(p) {
                let letters: Vec<Gen> = d.iter().chain(body.iter()).copied().collect();
                if !seen.insert(letters.clone()) {
                    continue;
                }
                out.push(View {
                    chain: vec![base_word.clone(), to_word(&canonical)],
                    letters,
                });
            }
        }
    }
    out
}

/// A cyclic run of length `≥ k`: the rotation that makes it linear and the
/// position of its first letter.
fn cyclic_power(letters: &[Gen], k: usize) -> Option<(usize, usize)> {
    let n = letters.len();
    if n < k || k == 0 {
        return None;
    }
    let start = (0..n).find(|&i| letters[i] != letters[(i + n - 1) % n]);
    let Some(start) = start else {
        return Some((0, 0));
    };
    let mut i = 0;
    while i < n {
        let g = letters[(start + i) % n];
        let mut len = 1;
        while i + len < n && letters[(start + i + len) % n] == g {
            len += 1;
        }
        if len >= k {
            return Some((start, i));
        }
        i += len;
    }
    None
}

#[derive(Debug, Clone)]
pub(crate) struct Found {
    view: View,
    rotation: usize,
    pos: usize,
}

impl Found {
    fn final_word(&self) -> BraidWord {
        let mut l = self.view.letters.clone();
        l.rotate_left(self.rotation);
        to_word(&l)
    }

    fn result_letters(&self, count: usize) -> Vec<Gen> {
        let mut l = self.view.letters.clone();
        l.rotate_left(self.rotation);
        l.drain(self.pos..self.pos + count);
        l
    }
}

pub(crate) fn find_power(w: &BraidWord, k: usize) -> Option<Found> {
    views(w).into_iter().find_map(|v| {
        cyclic_power(&v.letters, k).map(|(rotation, pos)| Found {
            view: v,
            rotation,
            pos,
        })
    })
}

/// Moves the tracker to the rotated view, preferring a single rewrite.
fn commit_view(t: &mut Tracker, view: &View, rotation: usize) -> Result<()> {
    let mut l = view.letters.clone();
    l.rotate_left(rotation);
    let target = to_word(&l);
    if target == *t.cur() || conjugate_by_cycling_equal(t.cur(), &target) {
        return t.rewrite(target);
    }
    for c in &view.chain {
        t.rewrite(c.clone())?;
    }
    let unrotated = view.target();
    t.rewrite(unrotated)?;
    t.rewrite(target)
}

pub(crate) struct Peeler {
    pub k: u32,
    pub block: Option<Block>,
    pub table: Arc<ExactTable>,
    /// Upper limit on distinct single-deletion candidates scored per step.
    pub candidate_limit: usize,
}

impl Peeler {
    pub fn new(k: u32, block: Option<Block>) -> Self {
        Peeler {
            k,
            block,
            table: ExactTable::shared(k),
            candidate_limit: 96,
        }
    }

    fn short(&self, w: &BraidWord) -> bool {
        w.length() as usize <= self.table.max_len()
    }

    /// Letters left uncovered by powers after the free cascade from `w`.
    fn cascade_cost(&self, w: &BraidWord) -> u64 {
        let mut w = w.clone();
        loop {
            if self.short(&w) {
                let n = self.table.optimum(&w).unwrap_or(0) as u64;
                return w.length() - self.k as u64 * n;
            }
            if let Some(f) = find_power(&w, self.k as usize) {
                w = to_word(&f.result_letters(self.k as usize));
                continue;
            }
            if let Some(b) = &self.block {
                let nf = GarsideForm::of(&w);
                if nf.delta_power >= b.delta_power {
                    let _ = b.powers();
                    w = GarsideForm {
                        delta_power: nf.delta_power - b.delta_power,
                        factors: nf.factors,
                    }
                    .expand();
                    continue;
                }
            }
            return w.length();
        }
    }

    /// Best single deletion: the rotated view and the position to delete.
    fn choose_single(&self, w: &BraidWord) -> (View, usize, usize) {
        let mut seen: HashSet<GarsideForm> = HashSet::new();
        let mut best: Option<(u64, View, usize, usize)> = None;
        let mut scored = 0;
        'outer: for v in views(w) {
            let n = v.letters.len();
            let rotation = (0..n)
                .find(|&i| n > 0 && v.letters[i] != v.letters[(i + n - 1) % n])
                .unwrap_or(0);
            let mut l = v.letters.clone();
            l.rotate_left(rotation);
            for pos in 0..n {
                let mut r = l.clone();
                r.remove(pos);
                let rw = to_word(&r);
                if !seen.insert(GarsideForm::of(&rw)) {
                    continue;
                }
                let cost = self.cascade_cost(&rw);
                if best.as_ref().is_none_or(|b| cost < b.0) {
                    best = Some((cost, v.clone(), rotation, pos));
                }
                scored += 1;
                if scored >= self.candidate_limit {
                    break 'outer;
                }
            }
        }
        let (_, v, rotation, pos) = best.expect("non-empty word has a letter");
        (v, rotation, pos)
    }

    pub fn run(&self, t: &mut Tracker) -> Result<()> {
        loop {
            let cur = t.cur().clone();
            if cur.is_empty() {
                return Ok(());
            }
            if self.short(&cur) {
                return self.table.finish(t);
            }
            if let Some(f) = find_power(&cur, self.k as usize) {
                commit_view(t, &f.view, f.rotation)?;
                debug_assert_eq!(*t.cur(), f.final_word());
                t.delete_power_at(f.pos)?;
                continue;
            }
            if let Some(b) = &self.block {
                if GarsideForm::of(&cur).delta_power >= b.delta_power {
                    b.apply(t)?;
                    continue;
                }
            }
            let (v, rotation, pos) = self.choose_single(&cur);
            commit_view(t, &v, rotation)?;
            t.delete_single_at(pos)?;
        }
    }
}
