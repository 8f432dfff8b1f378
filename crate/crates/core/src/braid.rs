//! Words in the 3-strand braid group.
//!
//! A [`BraidWord`] is stored run-length encoded in the generators `a = σ₁`
//! and `b = σ₂`: adjacent runs always use distinct generators and no run has
//! a zero exponent, so two words with the same letters have the same runs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Gen {
    /// Conjugation by the half twist swaps the generators.
    pub fn flip(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }

    /// Column index of the generator (0 for `a`, 1 for `b`).
    pub fn index(self) -> usize {
        match self {
            Gen::A => 0,
            Gen::B => 1,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A single signed letter `gen^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub positive: bool,
}

impl Letter {
    pub fn new(gen: Gen, positive: bool) -> Self {
        Letter { gen, positive }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            positive: !self.positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Run {
    pub gen: Gen,
    pub exp: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    runs: Vec<Run>,
}

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord { runs: Vec::new() }
    }

    /// Builds a word from arbitrary `(generator, exponent)` pairs, merging
    /// adjacent runs of the same generator and dropping zero exponents.
    pub fn from_runs<I: IntoIterator<Item = (Gen, i64)>>(runs: I) -> Self {
        let mut w = BraidWord::empty();
        for (gen, exp) in runs {
            w.push_run(gen, exp);
        }
        w
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        BraidWord::from_runs(
            letters
                .into_iter()
                .map(|l| (l.gen, if l.positive { 1 } else { -1 })),
        )
    }

    pub fn generator(gen: Gen) -> Self {
        BraidWord::from_runs([(gen, 1)])
    }

    /// The half twist `Δ = aba`.
    pub fn delta() -> Self {
        BraidWord::from_runs([(Gen::A, 1), (Gen::B, 1), (Gen::A, 1)])
    }

    /// The torus link word `(ab)^m`.
    pub fn torus3(m: u64) -> Self {
        BraidWord::from_runs((0..m).flat_map(|_| [(Gen::A, 1), (Gen::B, 1)]))
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends a run, merging with the last run when the generators agree.
    pub fn push_run(&mut self, gen: Gen, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push(Run { gen, exp });
    }

    pub fn push_letter(&mut self, l: Letter) {
        self.push_run(l.gen, if l.positive { 1 } else { -1 });
    }

    /// Concatenation, with cancellation across the seam.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut w = self.clone();
        for r in &other.runs {
            w.push_run(r.gen, r.exp);
        }
        w
    }

    pub fn pow(&self, e: u64) -> BraidWord {
        let mut w = BraidWord::empty();
        for _ in 0..e {
            w = w.concat(self);
        }
        w
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::from_runs(self.runs.iter().rev().map(|r| (r.gen, -r.exp)))
    }

    /// Image under `a ↔ b` (conjugation by `Δ`).
    pub fn flip(&self) -> BraidWord {
        BraidWord {
            runs: self
                .runs
                .iter()
                .map(|r| Run {
                    gen: r.gen.flip(),
                    exp: r.exp,
                })
                .collect(),
        }
    }

    /// `ℓ = Σ |exponent|`.
    pub fn length(&self) -> u64 {
        self.runs.iter().map(|r| r.exp.unsigned_abs()).sum()
    }

    /// Sum of exponents (the writhe of the closure).
    pub fn exponent_sum(&self) -> i64 {
        self.runs.iter().map(|r| r.exp).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.runs.iter().all(|r| r.exp > 0)
    }

    pub fn contains(&self, gen: Gen) -> bool {
        self.runs.iter().any(|r| r.gen == gen)
    }

    /// Positive and both generators occur, so the closure is non-split.
    pub fn is_nonsplit_positive(&self) -> bool {
        self.is_positive() && self.contains(Gen::A) && self.contains(Gen::B)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|r| {
            let l = Letter::new(r.gen, r.exp > 0);
            std::iter::repeat_n(l, r.exp.unsigned_abs() as usize)
        })
    }

    pub fn letter_vec(&self) -> Vec<Letter> {
        self.letters().collect()
    }

    /// Moves the first `k` letters to the end.
    pub fn rotate_left(&self, k: usize) -> BraidWord {
        let letters = self.letter_vec();
        if letters.is_empty() {
            return self.clone();
        }
        let k = k % letters.len();
        BraidWord::from_letters(letters[k..].iter().chain(&letters[..k]).copied())
    }

    /// All cyclic rotations of the letter sequence (one per letter).
    pub fn rotations(&self) -> Vec<BraidWord> {
        let letters = self.letter_vec();
        if letters.is_empty() {
            return vec![self.clone()];
        }
        (0..letters.len())
            .map(|k| BraidWord::from_letters(letters[k..].iter().chain(&letters[..k]).copied()))
            .collect()
    }

    pub fn closure(&self) -> ClosurePermutation {
        ClosurePermutation::of(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for r in &self.runs {
            if r.exp == 1 {
                write!(f, "{}", r.gen)?;
            } else {
                write!(f, "{}^{}", r.gen, r.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_braid(s)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_braid(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses the braid grammar
///
/// ```text
/// word   := term+
/// term   := letter | letter '^' int | '(' word ')' '^' int
/// letter := 'a' | 'b'
/// int    := '-'? digit+        (nonzero)
/// ```
///
/// Whitespace is ignored. The single token `1` denotes the trivial braid.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.len() == 1 && chars[0].1 == '1' {
        return Ok(BraidWord::empty());
    }
    let mut p = Parser {
        chars,
        pos: 0,
        end: text.len(),
    };
    let w = p.word()?;
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        let msg = if c == ')' {
            "unbalanced parenthesis".to_string()
        } else {
            format!("unexpected `{c}`")
        };
        return Err(ParseError::syntax(at, msg));
    }
    Ok(w)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn word(&mut self) -> Result<BraidWord, ParseError> {
        let mut w = BraidWord::empty();
        let mut terms = 0;
        while let Some(c) = self.peek() {
            match c {
                'a' | 'b' => {
                    self.pos += 1;
                    let gen = if c == 'a' { Gen::A } else { Gen::B };
                    let exp = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.int()?
                    } else {
                        1
                    };
                    w.push_run(gen, exp);
                }
                '(' => {
                    let open = self.offset();
                    self.pos += 1;
                    let inner = self.word()?;
                    if self.peek() != Some(')') {
                        return Err(ParseError::syntax(
                            self.offset(),
                            format!("unbalanced parenthesis opened at {open}"),
                        ));
                    }
                    self.pos += 1;
                    if self.peek() != Some('^') {
                        return Err(ParseError::syntax(
                            self.offset(),
                            "expected `^` after `)`",
                        ));
                    }
                    self.pos += 1;
                    let exp = self.int()?;
                    let block = if exp > 0 {
                        inner.pow(exp as u64)
                    } else {
                        inner.inverse().pow(exp.unsigned_abs())
                    };
                    w = w.concat(&block);
                }
                ')' => break,
                other => {
                    return Err(ParseError::syntax(
                        self.offset(),
                        format!("unexpected `{other}`"),
                    ))
                }
            }
            terms += 1;
        }
        if terms == 0 {
            return Err(ParseError::syntax(self.offset(), "expected a term"));
        }
        Ok(w)
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let start = self.offset();
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(ParseError::syntax(self.offset(), "expected an integer"));
        }
        let v: i64 = digits
            .parse()
            .map_err(|_| ParseError::syntax(start, "exponent out of range"))?;
        if v == 0 {
            return Err(ParseError::ZeroExponent { pos: start });
        }
        Ok(if neg { -v } else { v })
    }
}

/// The permutation of strands induced by a braid, and the number of
/// components of its closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosurePermutation {
    /// `perm[i]` is where the strand starting at position `i` ends.
    pub perm: [usize; 3],
    pub component_count: usize,
}

impl ClosurePermutation {
    pub fn of(w: &BraidWord) -> Self {
        let mut pos = [0usize, 1, 2];
        for r in w.runs() {
            if r.exp % 2 != 0 {
                let (i, j) = match r.gen {
                    Gen::A => (0, 1),
                    Gen::B => (1, 2),
                };
                for p in pos.iter_mut() {
                    if *p == i {
                        *p = j;
                    } else if *p == j {
                        *p = i;
                    }
                }
            }
        }
        let mut seen = [false; 3];
        let mut cycles = 0;
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = pos[i];
            }
        }
        ClosurePermutation {
            perm: pos,
            component_count: cycles,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_literal_letters() {
        let x = w("aba");
        assert_eq!(x.runs().len(), 3);
        assert_eq!(x.length(), 3);
        assert!(x.is_positive());
    }

    #[test]
    fn parse_group_power() {
        let x = w("(ab)^6");
        assert_eq!(x.length(), 12);
        assert_eq!(x, BraidWord::torus3(6));
        assert_eq!(w("a^2b^2").length(), 4);
        assert_eq!(w(" ( a b ^ -1 ) ^ 4 ").to_string(), "ab^-1ab^-1ab^-1ab^-1");
    }

    #[test]
    fn parse_negative_group_power_inverts() {
        assert_eq!(w("(ab)^-2"), w("b^-1a^-1b^-1a^-1"));
    }

    #[test]
    fn parse_merges_and_cancels_runs() {
        assert_eq!(w("aab").to_string(), "a^2b");
        assert_eq!(w("a^2a^-2b"), w("b"));
        assert!(w("aa^-1").is_empty());
        assert_eq!(w("1"), BraidWord::empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_braid("a^2b^2)^3"),
            Err(ParseError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_braid("(ab^2"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_braid("a^0"),
            Err(ParseError::ZeroExponent { pos: 2 })
        ));
        assert!(matches!(parse_braid("(ab)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_braid("ac"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(parse_braid("").is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(w("(ab)^6").length(), 12);
        assert_eq!(BraidWord::empty().length(), 0);
        assert_eq!(w("a^2b^2").length(), 4);
        assert_eq!(w("ab^-3").length(), 4);
    }

    #[test]
    fn closure_components_of_torus_words() {
        for m in 0..30u64 {
            let c = BraidWord::torus3(m).closure().component_count;
            assert_eq!(c, if m % 3 == 0 { 3 } else { 1 }, "m = {m}");
        }
        assert_eq!(w("a^3").closure().component_count, 2);
        assert_eq!(w("(ab)^3").closure().perm, [0, 1, 2]);
    }

    #[test]
    fn nonsplit_positive() {
        assert!(w("(a^2b^2)^3").is_nonsplit_positive());
        assert!(!w("a^5").is_nonsplit_positive());
        assert!(!BraidWord::empty().is_nonsplit_positive());
        assert!(!w("ab^-1").is_nonsplit_positive());
    }

    #[test]
    fn rotation_and_display_roundtrip() {
        let x = w("a^2bab^3");
        assert_eq!(x.rotate_left(2).to_string(), "bab^3a^2");
        assert_eq!(x.rotations().len(), 7);
        assert_eq!(w(&x.to_string()), x);
    }
}
