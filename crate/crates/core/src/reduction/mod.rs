//! Deletion certificates: replayable sequences of rewrites and deletions of
//! `k`-th powers and single letters, taking a braid word to the trivial word.
//!
//! Deleting `n` powers and `j` single letters costs at most `n + j + 2`
//! (the last two being either the saddles merging the split unlinks or the
//! slice-tail cobordism), which equals `ℓ - (k-1)n + 2` when only positive
//! letters are removed.

mod exact;
mod peel;
mod planners;
mod tracker;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, Result};
use crate::garside::{conjugate_by_cycling_equal, words_equal};

pub use exact::{optimal_deletions, ExactTable};
pub use planners::{plan, plan_greedy, plan_k3, plan_torus, plan_torus_large_k};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewriteKind {
    /// Same element of `B₃`.
    Equality,
    /// A cyclic rotation of the current word equals the target in `B₃`.
    Cycling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum DeletionMove {
    Rewrite { target: BraidWord, via: RewriteKind },
    DeletePower { run: usize, gen: Gen, k: u32 },
    DeleteSingle { run: usize, gen: Gen },
    /// The current word is `(ab⁻¹)^{2j}` up to cycling; its closure is
    /// within distance 2 of the unknot.
    SliceTail { j: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub n: u32,
    pub j: u32,
    pub tail_cost: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionCertificate {
    pub k: u32,
    pub initial: BraidWord,
    pub moves: Vec<DeletionMove>,
    #[serde(default)]
    pub allow_group_deletion: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: u32,
    pub j: u32,
    pub tail_cost: u32,
    /// Letters consumed by the slice tail (0 without one).
    pub tail_letters: u64,
    /// `n + j + 2`: the cobordism the certificate actually builds.
    pub bound: u64,
    /// `ℓ(initial) - (k-1)n + 2`; equals `bound` when `ℓ = kn + j`.
    pub lemma_bound: i64,
    pub initial_length: u64,
}

impl DeletionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        validate(self)
    }
}

fn bad(index: usize, reason: impl Into<String>) -> Error {
    Error::InvalidMove {
        index,
        reason: reason.into(),
    }
}

/// Replays a certificate, checking every move.
pub fn validate(cert: &DeletionCertificate) -> Result<ValidationReport> {
    if cert.k == 0 {
        return Err(Error::Format("k must be at least 1".into()));
    }
    let mut cur = cert.initial.clone();
    let (mut n, mut j, mut tail_cost, mut tail_letters) = (0u32, 0u32, 0u32, 0u64);
    let mut tail_seen = false;
    for (index, mv) in cert.moves.iter().enumerate() {
        if tail_seen {
            return Err(bad(index, "move after the slice tail"));
        }
        match mv {
            DeletionMove::Rewrite { target, via } => {
                let ok = match via {
                    RewriteKind::Equality => words_equal(&cur, target),
                    RewriteKind::Cycling => conjugate_by_cycling_equal(&cur, target),
                };
                if !ok {
                    let what = match via {
                        RewriteKind::Equality => "is not equal to",
                        RewriteKind::Cycling => "is not a cyclic rotation (up to equality) of",
                    };
                    return Err(bad(index, format!("{target} {what} {cur}")));
                }
                cur = target.clone();
            }
            DeletionMove::DeletePower { run, gen, k } => {
                if *k != cert.k {
                    return Err(bad(index, format!("power {k} differs from certificate k = {}", cert.k)));
                }
                let r = address(&cur, *run, *gen, index)?;
                if r.exp <= 0 {
                    return Err(bad(index, format!("run {run} = {}^{} is not positive", r.gen, r.exp)));
                }
                if r.exp < *k as i64 && !cert.allow_group_deletion {
                    return Err(bad(
                        index,
                        format!("illegal negative exponent: {}^{} minus {k} without group deletion", r.gen, r.exp),
                    ));
                }
                cur = replace_run(&cur, *run, r.exp - *k as i64);
                n += 1;
            }
            DeletionMove::DeleteSingle { run, gen } => {
                let r = address(&cur, *run, *gen, index)?;
                cur = replace_run(&cur, *run, r.exp - r.exp.signum());
                j += 1;
            }
            DeletionMove::SliceTail { j: t } => {
                let pattern = BraidWord::from_runs((0..2 * *t).flat_map(|_| [(Gen::A, 1), (Gen::B, -1)]));
                if !conjugate_by_cycling_equal(&cur, &pattern) {
                    return Err(bad(index, format!("malformed tail: {cur} is not (ab^-1)^{} up to cycling", 2 * t)));
                }
                tail_letters = cur.length();
                tail_cost = 2;
                tail_seen = true;
                cur = BraidWord::empty();
            }
        }
    }
    if !cur.is_empty() {
        return Err(bad(cert.moves.len(), format!("replay ends at {cur}, not the trivial word")));
    }
    let l = cert.initial.length();
    Ok(ValidationReport {
        n,
        j,
        tail_cost,
        tail_letters,
        bound: n as u64 + j as u64 + 2,
        lemma_bound: l as i64 - (cert.k as i64 - 1) * n as i64 + 2,
        initial_length: l,
    })
}

fn address(w: &BraidWord, run: usize, gen: Gen, index: usize) -> Result<crate::braid::Run> {
    let r = *w
        .runs()
        .get(run)
        .ok_or_else(|| bad(index, format!("bad address: run {run} of {w} ({} runs)", w.runs().len())))?;
    if r.gen != gen {
        return Err(bad(index, format!("bad address: run {run} of {w} is {}, not {gen}", r.gen)));
    }
    Ok(r)
}

fn replace_run(w: &BraidWord, run: usize, exp: i64) -> BraidWord {
    BraidWord::from_runs(
        w.runs()
            .iter()
            .enumerate()
            .map(|(i, r)| (r.gen, if i == run { exp } else { r.exp })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn power(run: usize, gen: Gen, k: u32) -> DeletionMove {
        DeletionMove::DeletePower { run, gen, k }
    }

    #[test]
    fn hexa_block_for_cubes() {
        let cert = DeletionCertificate {
            k: 3,
            initial: w("(ab)^6"),
            moves: vec![
                DeletionMove::Rewrite {
                    target: w("bab^3ab^3ab^2"),
                    via: RewriteKind::Equality,
                },
                power(4, Gen::B, 3),
                power(2, Gen::B, 3),
                power(1, Gen::A, 3),
                power(0, Gen::B, 3),
            ],
            allow_group_deletion: false,
            summary: None,
        };
        let r = validate(&cert).unwrap();
        assert_eq!((r.n, r.j, r.bound, r.lemma_bound), (4, 0, 6, 6));
    }

    #[test]
    fn bad_equality_names_the_move() {
        let cert = DeletionCertificate {
            k: 3,
            initial: w("aba"),
            moves: vec![DeletionMove::Rewrite {
                target: w("abb"),
                via: RewriteKind::Equality,
            }],
            allow_group_deletion: false,
            summary: None,
        };
        assert!(matches!(validate(&cert), Err(Error::InvalidMove { index: 0, .. })));
    }

    #[test]
    fn group_deletion_is_gated() {
        let mut cert = DeletionCertificate {
            k: 6,
            initial: w("ab^5ab^5"),
            moves: vec![power(1, Gen::B, 6), power(3, Gen::B, 6), DeletionMove::SliceTail { j: 1 }],
            allow_group_deletion: false,
            summary: None,
        };
        assert!(matches!(validate(&cert), Err(Error::InvalidMove { index: 0, .. })));
        cert.allow_group_deletion = true;
        let r = validate(&cert).unwrap();
        assert_eq!((r.n, r.j, r.tail_cost, r.tail_letters), (2, 0, 2, 4));
    }

    #[test]
    fn json_round_trip() {
        let cert = DeletionCertificate {
            k: 4,
            initial: w("(ab)^3"),
            moves: vec![
                DeletionMove::Rewrite {
                    target: w("ab^2ab^2"),
                    via: RewriteKind::Equality,
                },
                DeletionMove::DeleteSingle { run: 2, gen: Gen::A },
                DeletionMove::DeleteSingle { run: 0, gen: Gen::A },
                power(0, Gen::B, 4),
            ],
            allow_group_deletion: false,
            summary: None,
        };
        let s = cert.to_json();
        assert!(s.contains("\"op\": \"delete_power\""));
        let back = DeletionCertificate::from_json(&s).unwrap();
        assert_eq!(back, cert);
        assert_eq!(validate(&back).unwrap().j, 2);
    }

    #[test]
    fn unfinished_replay_is_rejected() {
        let cert = DeletionCertificate {
            k: 3,
            initial: w("a^4b"),
            moves: vec![power(0, Gen::A, 3)],
            allow_group_deletion: false,
            summary: None,
        };
        assert!(matches!(validate(&cert), Err(Error::InvalidMove { index: 1, .. })));
    }
}
