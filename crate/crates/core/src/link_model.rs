//! Links in the distance formulas: braid closures, torus links and
//! connected sums `T(2,k)^n` with every summand on one distinguished
//! component.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, ParseError, Result};
use crate::garside::conjugate_by_cycling_equal;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkDescriptor {
    BraidClosure(BraidWord),
    Torus { p: u32, q: u32 },
    /// `T(2,k)^n`; `n = 0` is the unknot. Never expanded into a braid word.
    T2kSum { k: u32, n: u32 },
}

impl LinkDescriptor {
    pub fn closure(w: BraidWord) -> Self {
        LinkDescriptor::BraidClosure(w)
    }

    pub fn torus(p: u32, q: u32) -> Result<Self> {
        if p < 2 || q < 1 {
            return Err(Error::InvalidParameter(format!("T({p},{q})")));
        }
        Ok(LinkDescriptor::Torus { p, q })
    }

    pub fn t2k_sum(k: u32, n: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("T(2,{k})^{n} needs k >= 2")));
        }
        Ok(LinkDescriptor::T2kSum { k, n })
    }

    /// The positive 3-braid word whose closure is this link.
    ///
    /// `T(3,m)` maps to `(ab)^m` and `T(2,q)` to the non-split
    /// stabilisation `a^q b`. Sums have no braid word of their own.
    pub fn braid_word(&self) -> Result<BraidWord> {
        match self {
            LinkDescriptor::BraidClosure(w) => Ok(w.clone()),
            LinkDescriptor::Torus { p: 3, q } => Ok(BraidWord::torus3(*q as u64)),
            LinkDescriptor::Torus { p: 2, q } => {
                Ok(BraidWord::from_runs([(Gen::A, *q as i64), (Gen::B, 1)]))
            }
            LinkDescriptor::Torus { p, q } => {
                Err(Error::UnsupportedLink(format!("T({p},{q}) is not a 3-braid closure")))
            }
            LinkDescriptor::T2kSum { .. } => Err(Error::UnsupportedLink(format!(
                "{self} is a connected sum, not a braid closure"
            ))),
        }
    }

    /// Replaces `Torus(3, m)` and `Torus(2, q)` by their braid closures.
    pub fn canonical(&self) -> LinkDescriptor {
        match self {
            LinkDescriptor::Torus { p: 2 | 3, .. } => {
                LinkDescriptor::BraidClosure(self.braid_word().expect("3-braid torus link"))
            }
            other => other.clone(),
        }
    }

    /// Non-split positive braid word, or an error naming the offender.
    pub fn positive_word(&self) -> Result<BraidWord> {
        let w = self.braid_word()?;
        if !w.is_nonsplit_positive() {
            return Err(Error::NotNonSplitPositive(w.to_string()));
        }
        Ok(w)
    }

    /// `m` when this link is `T(3, m)`, recognising braid closures of words
    /// conjugate to `(ab)^m` by cycling.
    pub fn as_torus3(&self) -> Option<u32> {
        match self {
            LinkDescriptor::Torus { p: 3, q } => Some(*q),
            LinkDescriptor::BraidClosure(w) => {
                let l = w.length();
                if !w.is_positive() || l % 2 != 0 || l == 0 {
                    return None;
                }
                let m = l / 2;
                conjugate_by_cycling_equal(w, &BraidWord::torus3(m)).then_some(m as u32)
            }
            _ => None,
        }
    }
}

impl fmt::Display for LinkDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkDescriptor::BraidClosure(w) => write!(f, "closure({w})"),
            LinkDescriptor::Torus { p, q } => write!(f, "T({p},{q})"),
            LinkDescriptor::T2kSum { k, n } => write!(f, "T(2,{k})^{n}"),
        }
    }
}

/// Parses `T(3,7)`, `T(2,5)^4`, `closure((a^2b^2)^3)`, `unknot`, or a bare
/// braid word (read as its closure).
impl FromStr for LinkDescriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "unknot" {
            return Ok(LinkDescriptor::T2kSum { k: 2, n: 0 });
        }
        if let Some(inner) = s.strip_prefix("closure(").and_then(|r| r.strip_suffix(')')) {
            return Ok(LinkDescriptor::BraidClosure(inner.parse()?));
        }
        if let Some(rest) = s.strip_prefix("T(") {
            let close = rest
                .find(')')
                .ok_or_else(|| ParseError::syntax(s.len(), "missing ')' in torus link"))?;
            let (p, q) = rest[..close]
                .split_once(',')
                .ok_or_else(|| ParseError::syntax(2, "expected T(p,q)"))?;
            let p: u32 = p
                .parse()
                .map_err(|_| ParseError::syntax(2, format!("bad integer `{p}`")))?;
            let q: u32 = q
                .parse()
                .map_err(|_| ParseError::syntax(2, format!("bad integer `{q}`")))?;
            let tail = &rest[close + 1..];
            return if tail.is_empty() {
                LinkDescriptor::torus(p, q)
            } else if let Some(n) = tail.strip_prefix('^') {
                let n: u32 = n
                    .parse()
                    .map_err(|_| ParseError::syntax(close + 3, format!("bad power `{n}`")))?;
                if p != 2 {
                    return Err(Error::UnsupportedLink(format!(
                        "powers are only defined for T(2,k), got T({p},{q})^{n}"
                    )));
                }
                LinkDescriptor::t2k_sum(q, n)
            } else {
                Err(ParseError::syntax(close + 3, format!("unexpected `{tail}`")).into())
            };
        }
        Ok(LinkDescriptor::BraidClosure(s.parse()?))
    }
}

impl Serialize for LinkDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LinkDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Euler characteristic used by the slice-Bennequin bound.
///
/// Braid closures get `-(ℓ - 2)`; [`fiber_euler_char`] gives the fiber
/// surface value `3 - ℓ` for comparison.
pub fn euler_char(d: &LinkDescriptor) -> Result<i64> {
    match d {
        LinkDescriptor::T2kSum { k, n } => Ok(-(*n as i64) * (*k as i64 - 1)),
        _ => Ok(-(d.positive_word()?.length() as i64 - 2)),
    }
}

/// Euler characteristic of the canonical fiber surface of a non-split
/// positive 3-braid closure: three disks and `ℓ` bands.
pub fn fiber_euler_char(d: &LinkDescriptor) -> Result<i64> {
    match d {
        LinkDescriptor::T2kSum { k, n } => Ok(-(*n as i64) * (*k as i64 - 1)),
        _ => Ok(3 - d.positive_word()?.length() as i64),
    }
}

pub fn t2k_chain_distance(k: u32, n1: u32, n2: u32) -> u64 {
    (k as u64).saturating_sub(1) * (n1 as i64 - n2 as i64).unsigned_abs()
}

/// Cost of the band moves turning `T(2,k)^n` into `T(2,6)^n`.
pub fn t2k_to_t26_cost(k: u32, n: u32) -> Result<u64> {
    if k < 6 {
        return Err(Error::InvalidParameter(format!("k = {k} < 6")));
    }
    Ok((k as u64 - 6) * n as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
    T3i,
    T3ii,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T1" => Ok(Theorem::T1),
            "T2" => Ok(Theorem::T2),
            "T3i" => Ok(Theorem::T3i),
            "T3ii" => Ok(Theorem::T3ii),
            _ => Err(Error::InvalidParameter(format!("unknown theorem `{s}`"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3i => "T3i",
            Theorem::T3ii => "T3ii",
        };
        f.write_str(s)
    }
}

/// Explicit error constants `C_k = 2(k-1)(C̃_k + k - 1)/k + 2` for
/// `k = 3..=6`.
pub fn explicit_constant(k: u32) -> Option<Rational64> {
    let tilde = reduction_error_budget(k)? as i64;
    let k = k as i64;
    Some(Rational64::new(2 * (k - 1) * (tilde + k - 1), k) + 2)
}

/// Singles allowed per reduction (`C̃_k`).
pub fn reduction_error_budget(k: u32) -> Option<u32> {
    match k {
        3 => Some(10),
        4 => Some(6),
        5 => Some(19),
        6 => Some(20),
        _ => None,
    }
}

/// Common bound `44` for the `T2` and `T3` formulas.
pub fn uniform_constant() -> Rational64 {
    Rational64::from_integer(44)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceFormula {
    pub theorem: Theorem,
    pub k: u32,
    /// `ℓ(β)` for T1, `m` otherwise.
    pub param: u64,
    #[serde(with = "crate::ratio_serde")]
    pub constant: Rational64,
}

impl DistanceFormula {
    pub fn t1(length: u64) -> Self {
        DistanceFormula {
            theorem: Theorem::T1,
            k: 3,
            param: length,
            constant: explicit_constant(3).unwrap(),
        }
    }

    pub fn t2(k: u32, m: u64) -> Result<Self> {
        if !(4..=6).contains(&k) {
            return Err(Error::InvalidParameter(format!("T2 needs k in 4..=6, got {k}")));
        }
        Ok(DistanceFormula {
            theorem: Theorem::T2,
            k,
            param: m,
            constant: explicit_constant(k).unwrap(),
        })
    }

    pub fn t3(theorem: Theorem, k: u32, m: u64) -> Result<Self> {
        if k < 7 || !matches!(theorem, Theorem::T3i | Theorem::T3ii) {
            return Err(Error::InvalidParameter(format!("{theorem} with k = {k}")));
        }
        Ok(DistanceFormula {
            theorem,
            k,
            param: m,
            constant: uniform_constant(),
        })
    }

    pub fn with_constant(mut self, c: Rational64) -> Self {
        self.constant = c;
        self
    }

    /// Whether `n` satisfies the theorem's hypothesis on `n`.
    pub fn admits(&self, n: u64) -> bool {
        let (k, m, n) = (self.k as i64, self.param as i64, n as i64);
        match self.theorem {
            Theorem::T1 | Theorem::T2 => true,
            Theorem::T3i => 3 * n >= m,
            // n <= 5m/(3k) - (k + 4)
            Theorem::T3ii => 3 * k * n <= 5 * m - 3 * k * (k + 4),
        }
    }

    /// The predicted distance, or a hypothesis error.
    pub fn prediction(&self, n: u64) -> Result<Rational64> {
        if !self.admits(n) {
            return Err(Error::Hypothesis(format!(
                "{} with k = {}, m = {} does not cover n = {n}",
                self.theorem, self.k, self.param
            )));
        }
        Ok(self.prediction_unchecked(n))
    }

    /// The prediction outside the hypothesis range as well (for plotting).
    pub fn prediction_unchecked(&self, n: u64) -> Rational64 {
        let k = self.k as i64;
        let p = Rational64::from_integer(self.param as i64);
        let n = Rational64::from_integer(n as i64);
        match self.theorem {
            Theorem::T1 => {
                let c = p / 3;
                c + (n - c).abs() * 2
            }
            Theorem::T2 => {
                let c = p * 2 / k;
                c + (n - c).abs() * (k - 1)
            }
            Theorem::T3i => n * (k - 1) - p * 4 / 3,
            Theorem::T3ii => p * 2 - n * (k - 1),
        }
    }
}

/// Evaluates a formula's prediction (see [`DistanceFormula::prediction`]).
pub fn theorem_prediction(f: &DistanceFormula, n: u64) -> Result<Rational64> {
    f.prediction(n)
}
