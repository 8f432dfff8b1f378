//! Exhaustive optimal reductions of short positive words.
//!
//! Every positive word of length at most [`EXACT_MAX_LEN`] is grouped into
//! classes closed under `aba ↔ bab` and cyclic rotation; a dynamic program
//! over increasing length finds, per class, the largest number of `k`-th
//! powers that can be deleted on the way to the trivial word.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::braid::{BraidWord, Gen};
use crate::error::Result;
use crate::garside::conjugate_by_cycling_equal;

use super::tracker::Tracker;

pub const EXACT_MAX_LEN: usize = 14;

#[derive(Debug, Clone, Copy)]
enum Step {
    Single(usize),
    Power(usize),
}

#[derive(Debug, Clone, Copy)]
struct Best {
    n: u32,
    witness: u32,
    step: Option<Step>,
}

/// Optimal deletion counts for all positive words up to a fixed length.
pub struct ExactTable {
    k: u32,
    max_len: usize,
    class_of: Vec<u32>,
    best: Vec<Best>,
}

fn index(len: usize, bits: u32) -> usize {
    (1usize << len) - 1 + bits as usize
}

fn bit(bits: u32, i: usize) -> u32 {
    (bits >> i) & 1
}

fn delete_range(bits: u32, len: usize, i: usize, count: usize) -> u32 {
    let low = bits & ((1u32 << i) - 1);
    let high = if i + count >= len { 0 } else { bits >> (i + count) };
    low | (high << i)
}

fn rotate(bits: u32, len: usize) -> u32 {
    if len == 0 {
        return 0;
    }
    (bits >> 1) | ((bits & 1) << (len - 1))
}

/// Words reachable by one `aba ↔ bab` move.
fn relation_moves(bits: u32, len: usize) -> impl Iterator<Item = u32> {
    (0..len.saturating_sub(2)).filter_map(move |i| {
        let (x, y, z) = (bit(bits, i), bit(bits, i + 1), bit(bits, i + 2));
        (x == z && x != y).then(|| bits ^ (0b111 << i))
    })
}

fn find(parent: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut c = x;
    while parent[c as usize] != r {
        let next = parent[c as usize];
        parent[c as usize] = r;
        c = next;
    }
    r
}

impl ExactTable {
    pub fn build(k: u32, max_len: usize) -> Self {
        assert!(max_len < 31 && k >= 1);
        let total = index(max_len + 1, 0);
        let mut parent: Vec<u32> = (0..total as u32).collect();
        for len in 1..=max_len {
            for bits in 0..(1u32 << len) {
                let me = index(len, bits) as u32;
                let others = relation_moves(bits, len).chain(std::iter::once(rotate(bits, len)));
                for o in others.collect::<Vec<_>>() {
                    let (a, b) = (find(&mut parent, me), find(&mut parent, index(len, o) as u32));
                    if a != b {
                        parent[a.max(b) as usize] = a.min(b);
                    }
                }
            }
        }
        let class_of: Vec<u32> = (0..total as u32).map(|x| find(&mut parent, x)).collect();
        let mut best = vec![
            Best {
                n: 0,
                witness: 0,
                step: None,
            };
            total
        ];
        let k_len = k as usize;
        for len in 1..=max_len {
            for bits in 0..(1u32 << len) {
                let me = index(len, bits);
                let c = class_of[me] as usize;
                let consider = |n: u32, step: Step, best: &mut Vec<Best>| {
                    let slot = &mut best[c];
                    if slot.step.is_none() || n > slot.n {
                        *slot = Best {
                            n,
                            witness: me as u32,
                            step: Some(step),
                        };
                    }
                };
                for i in 0..len {
                    let rest = index(len - 1, delete_range(bits, len, i, 1));
                    let n = best[class_of[rest] as usize].n;
                    consider(n, Step::Single(i), &mut best);
                    if i + k_len <= len && (i..i + k_len).all(|t| bit(bits, t) == bit(bits, i)) {
                        let rest = index(len - k_len, delete_range(bits, len, i, k_len));
                        let n = best[class_of[rest] as usize].n + 1;
                        consider(n, Step::Power(i), &mut best);
                    }
                }
            }
        }
        ExactTable {
            k,
            max_len,
            class_of,
            best,
        }
    }

    /// Shared table for `k`, built on first use.
    pub fn shared(k: u32) -> Arc<ExactTable> {
        static TABLES: OnceLock<Mutex<HashMap<u32, Arc<ExactTable>>>> = OnceLock::new();
        let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(k)
            .or_insert_with(|| Arc::new(ExactTable::build(k, EXACT_MAX_LEN)))
            .clone()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn encode(w: &BraidWord) -> Option<(usize, u32)> {
        if !w.is_positive() || w.length() as usize > EXACT_MAX_LEN.max(1) * 2 {
            return None;
        }
        let mut bits = 0u32;
        let mut len = 0usize;
        for l in w.letters() {
            if l.gen == Gen::B {
                bits |= 1 << len;
            }
            len += 1;
        }
        Some((len, bits))
    }

    fn decode(len: usize, bits: u32) -> BraidWord {
        BraidWord::from_runs((0..len).map(|i| (if bit(bits, i) == 1 { Gen::B } else { Gen::A }, 1)))
    }

    /// Maximal number of `k`-th powers for a positive word in range.
    pub fn optimum(&self, w: &BraidWord) -> Option<u32> {
        let (len, bits) = Self::encode(w)?;
        (len <= self.max_len).then(|| self.best[self.class_of[index(len, bits)] as usize].n)
    }

    /// Shortest chain of rotations and relation moves from one word to
    /// another inside a class.
    fn path(&self, len: usize, from: u32, to: u32) -> Vec<u32> {
        let mut prev: HashMap<u32, u32> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for y in relation_moves(x, len).chain(std::iter::once(rotate(x, len))) {
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[&cur];
            out.push(cur);
        }
        out.reverse();
        out
    }

    /// Finishes the tracker's current (short, positive) word optimally.
    pub(crate) fn finish(&self, t: &mut Tracker) -> Result<()> {
        assert_eq!(t.k(), self.k);
        while !t.cur().is_empty() {
            let (len, bits) = Self::encode(t.cur()).expect("short positive word");
            assert!(len <= self.max_len);
            let b = self.best[self.class_of[index(len, bits)] as usize];
            let (wlen, wbits) = (len, b.witness - index(len, 0) as u32);
            let chain = self.path(wlen, bits, wbits);
            // Merge consecutive steps into as few rewrites as the validator allows.
            let mut anchor = Self::decode(len, chain[0]);
            let mut last = anchor.clone();
            for &x in &chain[1..] {
                let next = Self::decode(len, x);
                if !conjugate_by_cycling_equal(&anchor, &next) {
                    t.rewrite(last.clone())?;
                    anchor = last.clone();
                }
                last = next;
            }
            t.rewrite(last)?;
            match b.step.expect("non-empty word has a move") {
                Step::Single(i) => t.delete_single_at(i)?,
                Step::Power(i) => t.delete_power_at(i)?,
            }
        }
        Ok(())
    }
}

/// Largest number of `k`-th powers removable from a short positive word
/// (length at most [`EXACT_MAX_LEN`]) using rotations, relations and deletions.
pub fn optimal_deletions(w: &BraidWord, k: u32) -> Option<u32> {
    ExactTable::shared(k).optimum(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn small_optima() {
        let t = ExactTable::build(3, 12);
        assert_eq!(t.optimum(&w("(ab)^6")), Some(4));
        assert_eq!(t.optimum(&w("a^3")), Some(1));
        assert_eq!(t.optimum(&w("ab")), Some(0));
        assert_eq!(t.optimum(&w("(ab)^4")), Some(2));
        let t4 = ExactTable::build(4, 12);
        assert_eq!(t4.optimum(&w("(ab)^3")), Some(1));
        assert_eq!(t4.optimum(&w("(ab)^5")), Some(2));
    }

    #[test]
    fn finish_produces_valid_certificates() {
        let table = ExactTable::shared(3);
        for s in ["(ab)^5", "a^2b^2a^2b^2", "ab", "bab^3ab^3ab^2", "(ab)^7"] {
            let mut t = Tracker::new(3, w(s), false);
            table.finish(&mut t).unwrap();
            let cert = t.finish().unwrap();
            let s = cert.summary.unwrap();
            assert_eq!(s.n, table.optimum(&cert.initial).unwrap());
        }
    }
}
