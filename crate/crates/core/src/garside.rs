//! Left-canonical (Garside) normal forms in `B₃`.
//!
//! Every element of `B₃` is uniquely `Δ^p · s₁ ⋯ s_r` with each `sᵢ` a proper
//! simple element (`a`, `b`, `ab` or `ba`) and every adjacent pair
//! left-weighted: the starting set of `sᵢ₊₁` is contained in the finishing
//! set of `sᵢ`. Inverse letters are absorbed via `a⁻¹ = Δ⁻¹·ab` and
//! `b⁻¹ = Δ⁻¹·ba`, sliding `Δ⁻¹` to the front with `s·Δ⁻¹ = Δ⁻¹·τ(s)`.

use std::fmt;

use crate::braid::{BraidWord, Gen};

/// The non-trivial simple elements of `B₃` (divisors of `Δ = aba`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simple {
    A,
    B,
    AB,
    BA,
    Delta,
}

impl Simple {
    pub fn atom(g: Gen) -> Simple {
        match g {
            Gen::A => Simple::A,
            Gen::B => Simple::B,
        }
    }

    /// Generators that can start a positive word for this element.
    pub fn starting_set(self) -> &'static [Gen] {
        match self {
            Simple::A | Simple::AB => &[Gen::A],
            Simple::B | Simple::BA => &[Gen::B],
            Simple::Delta => &[Gen::A, Gen::B],
        }
    }

    /// Generators that can end a positive word for this element.
    pub fn finishing_set(self) -> &'static [Gen] {
        match self {
            Simple::A | Simple::BA => &[Gen::A],
            Simple::B | Simple::AB => &[Gen::B],
            Simple::Delta => &[Gen::A, Gen::B],
        }
    }

    /// `self · x` when that product is again simple.
    fn times_atom(self, x: Gen) -> Option<Simple> {
        match (self, x) {
            (Simple::A, Gen::B) => Some(Simple::AB),
            (Simple::B, Gen::A) => Some(Simple::BA),
            (Simple::AB, Gen::A) | (Simple::BA, Gen::B) => Some(Simple::Delta),
            _ => None,
        }
    }

    /// `x⁻¹ · self` for `x` in the starting set; `None` is the identity.
    fn strip_atom(self, x: Gen) -> Option<Simple> {
        match (self, x) {
            (Simple::A, Gen::A) | (Simple::B, Gen::B) => None,
            (Simple::AB, Gen::A) => Some(Simple::B),
            (Simple::BA, Gen::B) => Some(Simple::A),
            (Simple::Delta, Gen::A) => Some(Simple::BA),
            (Simple::Delta, Gen::B) => Some(Simple::AB),
            _ => unreachable!("{x} is not a prefix of {self:?}"),
        }
    }

    /// Conjugation by `Δ`.
    pub fn flip(self) -> Simple {
        match self {
            Simple::A => Simple::B,
            Simple::B => Simple::A,
            Simple::AB => Simple::BA,
            Simple::BA => Simple::AB,
            Simple::Delta => Simple::Delta,
        }
    }

    pub fn word(self) -> &'static [Gen] {
        match self {
            Simple::A => &[Gen::A],
            Simple::B => &[Gen::B],
            Simple::AB => &[Gen::A, Gen::B],
            Simple::BA => &[Gen::B, Gen::A],
            Simple::Delta => &[Gen::A, Gen::B, Gen::A],
        }
    }
}

fn left_weighted(s: Simple, t: Simple) -> bool {
    t.starting_set()
        .iter()
        .all(|x| s.finishing_set().contains(x))
}

/// Rewrites `(s, t)` into a left-weighted pair with the same product by
/// moving starting letters of `t` onto the end of `s`.
fn weight_pair(mut s: Simple, t: Simple) -> (Simple, Option<Simple>) {
    let mut t = Some(t);
    while let Some(cur) = t {
        let step = cur
            .starting_set()
            .iter()
            .find(|x| !s.finishing_set().contains(x))
            .and_then(|&x| s.times_atom(x).map(|grown| (x, grown)));
        match step {
            Some((x, grown)) => {
                s = grown;
                t = cur.strip_atom(x);
            }
            None => break,
        }
    }
    (s, t)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideForm {
    pub delta_power: i64,
    pub factors: Vec<Simple>,
}

impl GarsideForm {
    pub fn identity() -> Self {
        GarsideForm {
            delta_power: 0,
            factors: Vec::new(),
        }
    }

    pub fn of(w: &BraidWord) -> Self {
        let mut nf = GarsideForm::identity();
        for r in w.runs() {
            for _ in 0..r.exp.unsigned_abs() {
                if r.exp > 0 {
                    nf.push_atom(r.gen);
                } else {
                    nf.push_inverse_atom(r.gen);
                }
            }
        }
        nf
    }

    /// Right multiplication by a positive generator.
    pub fn push_atom(&mut self, x: Gen) {
        self.factors.push(Simple::atom(x));
        let mut i = self.factors.len() - 1;
        while i > 0 {
            let (s, t) = weight_pair(self.factors[i - 1], self.factors[i]);
            let changed = s != self.factors[i - 1];
            self.factors[i - 1] = s;
            match t {
                Some(t) => self.factors[i] = t,
                None => {
                    self.factors.remove(i);
                }
            }
            if !changed {
                break;
            }
            i -= 1;
        }
        self.settle();
    }

    /// Right multiplication by `x⁻¹`.
    pub fn push_inverse_atom(&mut self, x: Gen) {
        self.delta_power -= 1;
        for f in self.factors.iter_mut() {
            *f = f.flip();
        }
        self.push_atom(x);
        self.push_atom(x.flip());
    }

    /// Restores the normal-form invariants after a local update: leading
    /// half twists are absorbed into the power and every pair is weighted.
    fn settle(&mut self) {
        loop {
            let mut changed = false;
            let lead = self
                .factors
                .iter()
                .take_while(|&&f| f == Simple::Delta)
                .count();
            if lead > 0 {
                self.factors.drain(..lead);
                self.delta_power += lead as i64;
                changed = true;
            }
            let mut i = 0;
            while i + 1 < self.factors.len() {
                let (s, t) = (self.factors[i], self.factors[i + 1]);
                if !left_weighted(s, t) {
                    let (s2, t2) = weight_pair(s, t);
                    self.factors[i] = s2;
                    match t2 {
                        Some(t2) => self.factors[i + 1] = t2,
                        None => {
                            self.factors.remove(i + 1);
                        }
                    }
                    changed = true;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
    }

    pub fn is_left_canonical(&self) -> bool {
        self.factors.iter().all(|&f| f != Simple::Delta)
            && self.factors.windows(2).all(|p| left_weighted(p[0], p[1]))
    }

    /// The word `Δ^p s₁ ⋯ s_r` with `Δ = aba` and `Δ⁻¹ = a⁻¹b⁻¹a⁻¹`.
    pub fn expand(&self) -> BraidWord {
        let mut w = BraidWord::empty();
        let step = if self.delta_power >= 0 { 1 } else { -1 };
        for _ in 0..self.delta_power.unsigned_abs() {
            for &g in Simple::Delta.word() {
                w.push_run(g, step);
            }
        }
        w.concat(&self.factor_word())
    }

    /// The letters of the non-`Δ` factors only.
    pub fn factor_word(&self) -> BraidWord {
        BraidWord::from_runs(
            self.factors
                .iter()
                .flat_map(|f| f.word().iter().map(|&g| (g, 1))),
        )
    }
}

impl fmt::Display for GarsideForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for s in &self.factors {
            let letters: String = s.word().iter().map(|g| g.as_char()).collect();
            write!(f, " [{letters}]")?;
        }
        Ok(())
    }
}

pub fn garside_normal_form(w: &BraidWord) -> GarsideForm {
    GarsideForm::of(w)
}

/// Equality in `B₃`.
pub fn words_equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    w1.exponent_sum() == w2.exponent_sum() && GarsideForm::of(w1) == GarsideForm::of(w2)
}

/// True when some cyclic rotation of `w1` equals `w2` in `B₃`.
pub fn conjugate_by_cycling_equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    if w1.exponent_sum() != w2.exponent_sum() {
        return false;
    }
    let target = GarsideForm::of(w2);
    w1.rotations()
        .iter()
        .any(|r| GarsideForm::of(r) == target)
}
