//! Seifert matrices of the canonical surface of a positive 3-braid.
//!
//! The surface is three stacked disks joined by one twisted band per letter.
//! A *brick* is a pair of consecutive occurrences `(s, t)` of the same
//! generator; the loop through the two bands of a brick is a basis element of
//! the first homology. Bricks of column `a` come first (in word order), then
//! bricks of column `b`.

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, Result};

/// A brick: consecutive positions `start < end` of `gen` in the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Brick {
    pub gen: Gen,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub bricks: Vec<Brick>,
    /// Row-major `n × n` integer entries.
    pub entries: Vec<i64>,
}

/// Value of `V[x, y]` for an `a`-brick `x = (s, t)` and a `b`-brick
/// `y = (s', t')` interleaved as `s < s' < t < t'`. The mirrored pattern
/// `s' < s < t' < t` gives `V[x, y] = -INTERLEAVED_LINK`; all other entries
/// between the columns vanish. Of the four consistent choices (entry above
/// or below the diagonal, either sign) all are congruent; this one is fixed
/// so that matrices are reproducible.
pub(crate) const INTERLEAVED_LINK: i64 = -1;

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.bricks.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size() + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        let n = self.size();
        self.entries[i * n + j] = v;
    }

    /// `V + Vᵀ`, the symmetrised form.
    pub fn symmetrized(&self) -> Vec<i64> {
        let n = self.size();
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j) + self.get(j, i);
            }
        }
        out
    }
}

pub fn bricks(w: &BraidWord) -> Vec<Brick> {
    let mut last: [Option<usize>; 2] = [None, None];
    let mut per_column: [Vec<Brick>; 2] = [Vec::new(), Vec::new()];
    for (pos, l) in w.letters().enumerate() {
        let c = l.gen.index();
        if let Some(prev) = last[c] {
            per_column[c].push(Brick {
                gen: l.gen,
                start: prev,
                end: pos,
            });
        }
        last[c] = Some(pos);
    }
    let [mut col_a, col_b] = per_column;
    col_a.extend(col_b);
    col_a
}

/// Seifert matrix of the canonical surface of a positive braid word in
/// which `a` occurs. Words without `b` are read as 2-braids (column `a`
/// only); callers describing links go through `LinkDescriptor`, which
/// stabilises those to non-split 3-braids.
pub fn seifert_matrix(w: &BraidWord) -> Result<SeifertMatrix> {
    if !w.is_positive() || !w.contains(Gen::A) {
        return Err(Error::NotNonSplitPositive(w.to_string()));
    }
    Ok(seifert_matrix_unchecked(w))
}

pub(crate) fn seifert_matrix_unchecked(w: &BraidWord) -> SeifertMatrix {
    let bricks = bricks(w);
    let n = bricks.len();
    let mut v = SeifertMatrix {
        bricks,
        entries: vec![0; n * n],
    };
    for i in 0..n {
        v.set(i, i, -1);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (x, y) = (v.bricks[i], v.bricks[j]);
            if x.gen == y.gen {
                if x.end == y.start {
                    v.set(i, j, 1);
                }
            } else if x.gen == Gen::A {
                if x.start < y.start && y.start < x.end && x.end < y.end {
                    v.set(i, j, INTERLEAVED_LINK);
                }
            } else if x.start < y.start && y.start < x.end && x.end < y.end {
                // x is the b-brick and starts first
                v.set(j, i, -INTERLEAVED_LINK);
            }
        }
    }
    v
}
