//! Incremental certificate construction with letter-position addressing.

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, Result};
use crate::garside::{conjugate_by_cycling_equal, words_equal};

use super::{validate, DeletionCertificate, DeletionMove, RewriteKind};

pub(crate) struct Tracker {
    k: u32,
    initial: BraidWord,
    cur: BraidWord,
    moves: Vec<DeletionMove>,
    allow_group_deletion: bool,
}

impl Tracker {
    pub fn new(k: u32, initial: BraidWord, allow_group_deletion: bool) -> Self {
        Tracker {
            k,
            cur: initial.clone(),
            initial,
            moves: Vec::new(),
            allow_group_deletion,
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn cur(&self) -> &BraidWord {
        &self.cur
    }

    fn fail(&self, reason: String) -> Error {
        Error::InvalidMove {
            index: self.moves.len(),
            reason,
        }
    }

    /// Moves to `target`, which must equal the current word or one of its
    /// rotations in `B₃`.
    pub fn rewrite(&mut self, target: BraidWord) -> Result<()> {
        if target == self.cur {
            return Ok(());
        }
        let via = if words_equal(&self.cur, &target) {
            RewriteKind::Equality
        } else if conjugate_by_cycling_equal(&self.cur, &target) {
            RewriteKind::Cycling
        } else {
            return Err(self.fail(format!("planner rewrite {} -> {target} is unjustified", self.cur)));
        };
        self.moves.push(DeletionMove::Rewrite {
            target: target.clone(),
            via,
        });
        self.cur = target;
        Ok(())
    }

    /// Run index and generator of the letter at position `pos`.
    pub fn run_at(&self, pos: usize) -> Result<(usize, Gen, i64)> {
        let mut start = 0usize;
        for (i, r) in self.cur.runs().iter().enumerate() {
            let len = r.exp.unsigned_abs() as usize;
            if pos < start + len {
                return Ok((i, r.gen, r.exp));
            }
            start += len;
        }
        Err(self.fail(format!("letter {pos} is past the end of {}", self.cur)))
    }

    pub fn delete_power_run(&mut self, run: usize) -> Result<()> {
        let r = *self
            .cur
            .runs()
            .get(run)
            .ok_or_else(|| self.fail(format!("no run {run} in {}", self.cur)))?;
        if r.exp <= 0 || (r.exp < self.k as i64 && !self.allow_group_deletion) {
            return Err(self.fail(format!("cannot remove a {}-th power from {}^{}", self.k, r.gen, r.exp)));
        }
        self.moves.push(DeletionMove::DeletePower {
            run,
            gen: r.gen,
            k: self.k,
        });
        self.cur = set_run(&self.cur, run, r.exp - self.k as i64);
        Ok(())
    }

    pub fn delete_single_run(&mut self, run: usize) -> Result<()> {
        let r = *self
            .cur
            .runs()
            .get(run)
            .ok_or_else(|| self.fail(format!("no run {run} in {}", self.cur)))?;
        self.moves.push(DeletionMove::DeleteSingle { run, gen: r.gen });
        self.cur = set_run(&self.cur, run, r.exp - r.exp.signum());
        Ok(())
    }

    /// Removes `k` letters from the run containing letter `pos`.
    pub fn delete_power_at(&mut self, pos: usize) -> Result<()> {
        let (run, _, _) = self.run_at(pos)?;
        self.delete_power_run(run)
    }

    pub fn delete_single_at(&mut self, pos: usize) -> Result<()> {
        let (run, _, _) = self.run_at(pos)?;
        self.delete_single_run(run)
    }

    /// Deletes at the given letter positions of the current word, highest
    /// position first so earlier positions stay valid. `powers` holds the
    /// first letter of each `k`-block.
    pub fn delete_positions(&mut self, powers: &[usize], singles: &[usize]) -> Result<()> {
        let mut all: Vec<(usize, bool)> = powers
            .iter()
            .map(|&p| (p, true))
            .chain(singles.iter().map(|&p| (p, false)))
            .collect();
        all.sort_by_key(|x| std::cmp::Reverse(x.0));
        for (p, is_power) in all {
            if is_power {
                self.delete_power_at(p)?;
            } else {
                self.delete_single_at(p)?;
            }
        }
        Ok(())
    }

    /// Deletes every remaining letter singly.
    pub fn delete_all_singly(&mut self) -> Result<()> {
        while !self.cur.is_empty() {
            self.delete_single_run(0)?;
        }
        Ok(())
    }

    pub fn slice_tail(&mut self, j: u32) -> Result<()> {
        self.moves.push(DeletionMove::SliceTail { j });
        self.cur = BraidWord::empty();
        Ok(())
    }

    /// The certificate, validated, with its summary filled in.
    pub fn finish(self) -> Result<DeletionCertificate> {
        let mut cert = DeletionCertificate {
            k: self.k,
            initial: self.initial,
            moves: self.moves,
            allow_group_deletion: self.allow_group_deletion,
            summary: None,
        };
        let report = validate(&cert)?;
        cert.summary = Some(super::Summary {
            n: report.n,
            j: report.j,
            tail_cost: report.tail_cost,
        });
        Ok(cert)
    }
}

pub(crate) fn set_run(w: &BraidWord, run: usize, exp: i64) -> BraidWord {
    BraidWord::from_runs(
        w.runs()
            .iter()
            .enumerate()
            .map(|(i, r)| (r.gen, if i == run { exp } else { r.exp })),
    )
}
