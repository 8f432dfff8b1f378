//! Test-only oracles that do not share code paths with the library.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use cobordism_core::braid::{BraidWord, Gen, Letter};
use rand::Rng;

/// Dense integer polynomial, coefficient `i` of `t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<i128>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![])
    }
    pub fn constant(c: i128) -> Self {
        Poly(vec![c]).trim()
    }
    pub fn monomial(c: i128, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Poly(v).trim()
    }
    pub fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![0; n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Poly(v).trim()
    }
    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly(v).trim()
    }
    /// Exact division; panics when not exact.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let mut r = self.0.clone();
        let dl = d.0.len();
        assert!(dl > 0);
        if r.len() < dl {
            assert!(Poly(r).trim().is_zero(), "inexact division");
            return Poly::zero();
        }
        let mut q = vec![0i128; r.len() - dl + 1];
        let lc = *d.0.last().unwrap();
        for i in (0..q.len()).rev() {
            let c = r[i + dl - 1];
            assert!(c % lc == 0, "inexact division");
            let f = c / lc;
            q[i] = f;
            for (j, dc) in d.0.iter().enumerate() {
                r[i + j] -= f * dc;
            }
        }
        assert!(r.iter().all(|&c| c == 0), "inexact division");
        Poly(q).trim()
    }
    /// Strip factors of `t` and fix the sign so the lowest coefficient is
    /// positive: normal form up to units `±t^k`.
    pub fn unit_normalized(&self) -> Poly {
        let mut v: Vec<i128> = self.0.iter().copied().skip_while(|&c| c == 0).collect();
        if v.first().is_some_and(|&c| c < 0) {
            v.iter_mut().for_each(|c| *c = -*c);
        }
        Poly(v).trim()
    }
}

/// Fraction-free (Bareiss) determinant over `Z[t]`.
pub fn poly_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut sign = 1i128;
    let mut prev = Poly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        d.neg()
    } else {
        d
    }
}

/// `det(V - t Vᵀ)` for an integer matrix.
pub fn alexander_from_seifert(n: usize, v: &[i64]) -> Poly {
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Poly::constant(v[i * n + j] as i128)
                        .sub(&Poly::monomial(v[j * n + i] as i128, 1))
                })
                .collect()
        })
        .collect();
    poly_det(m)
}

/// Reduced Burau image of a positive 3-braid, 2×2 over `Z[t]`.
pub fn reduced_burau(w: &BraidWord) -> [[Poly; 2]; 2] {
    let one = Poly::constant(1);
    let zero = Poly::zero();
    let t = Poly::monomial(1, 1);
    let mt = t.neg();
    let sa = [[mt.clone(), one.clone()], [zero.clone(), one.clone()]];
    let sb = [[one.clone(), zero.clone()], [t.clone(), mt.clone()]];
    let mut acc = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for l in w.letters() {
        assert!(l.positive, "positive words only");
        let g = if l.gen == Gen::A { &sa } else { &sb };
        let mut next = [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::zero()]];
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = acc[i][0].mul(&g[0][j]).add(&acc[i][1].mul(&g[1][j]));
            }
        }
        acc = next;
    }
    acc
}

/// Alexander polynomial of the closure via `det(I - ψ(β)) = (1+t+t²)Δ(t)`.
pub fn alexander_from_burau(w: &BraidWord) -> Poly {
    let b = reduced_burau(w);
    let one = Poly::constant(1);
    let m = vec![
        vec![one.sub(&b[0][0]), b[0][1].neg()],
        vec![b[1][0].neg(), one.sub(&b[1][1])],
    ];
    poly_det(m).div_exact(&Poly(vec![1, 1, 1]))
}

/// A random non-split positive word; `len` must be at least 2.
pub fn random_positive_word<R: Rng>(rng: &mut R, len: usize) -> BraidWord {
    assert!(len >= 2, "no non-split positive word of length {len}");
    loop {
        let w = BraidWord::from_letters(
            (0..len).map(|_| Letter::new(if rng.gen_bool(0.5) { Gen::A } else { Gen::B }, true)),
        );
        if w.is_nonsplit_positive() {
            return w;
        }
    }
}

pub fn random_signed_word<R: Rng>(rng: &mut R, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            Letter::new(
                if rng.gen_bool(0.5) { Gen::A } else { Gen::B },
                rng.gen_bool(0.5),
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Word problem by brute-force relation closure.

/// Signed letters encoded in 2 bits: a, A = a⁻¹, b, B = b⁻¹.
pub type Word = Vec<u8>;

pub fn encode(ls: &[Letter]) -> Word {
    ls.iter()
        .map(|l| match (l.gen, l.positive) {
            (Gen::A, true) => 0,
            (Gen::A, false) => 1,
            (Gen::B, true) => 2,
            (Gen::B, false) => 3,
        })
        .collect()
}

fn inv(x: u8) -> u8 {
    x ^ 1
}

/// All length-3 rewrites `u ↔ v⁻¹` obtained by splitting a cyclic rotation
/// of the relator `aba(bab)⁻¹` or its inverse into halves `u v`.
fn relation_table() -> HashMap<[u8; 3], Vec<[u8; 3]>> {
    // a=0 A=1 b=2 B=3
    let r: [u8; 6] = [0, 2, 0, 3, 1, 3];
    let r_inv: Vec<u8> = r.iter().rev().map(|&x| inv(x)).collect();
    let mut table: HashMap<[u8; 3], Vec<[u8; 3]>> = HashMap::new();
    for rel in [r.to_vec(), r_inv] {
        for k in 0..6 {
            let rot: Vec<u8> = (0..6).map(|i| rel[(i + k) % 6]).collect();
            let u = [rot[0], rot[1], rot[2]];
            let v_inv = [inv(rot[5]), inv(rot[4]), inv(rot[3])];
            let e = table.entry(u).or_default();
            if !e.contains(&v_inv) {
                e.push(v_inv);
            }
        }
    }
    table
}

/// Neighbours under relator rewrites, free cancellation, and insertion of a
/// cancelling pair (bounded by `cap`).
pub fn neighbours(w: &Word, cap: usize, table: &HashMap<[u8; 3], Vec<[u8; 3]>>) -> Vec<Word> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(2) {
        let key = [w[i], w[i + 1], w[i + 2]];
        if let Some(rs) = table.get(&key) {
            for r in rs {
                let mut n = w.clone();
                n[i..i + 3].copy_from_slice(r);
                out.push(n);
            }
        }
    }
    for i in 0..w.len().saturating_sub(1) {
        if w[i + 1] == inv(w[i]) {
            let mut n = w.clone();
            n.drain(i..i + 2);
            out.push(n);
        }
    }
    if w.len() + 2 <= cap {
        for i in 0..=w.len() {
            for x in 0..4u8 {
                let mut n = w.clone();
                n.splice(i..i, [x, inv(x)]);
                out.push(n);
            }
        }
    }
    out
}

/// Bounded breadth-first closure: true when `w2` is reached from `w1` using
/// words of length at most `cap`. The moves are symmetric, so the search
/// grows the smaller of the two frontiers until they meet.
pub fn relation_closure_equal(w1: &Word, w2: &Word, cap: usize) -> bool {
    if w1 == w2 {
        return true;
    }
    let table = relation_table();
    let mut seen = [HashSet::from([w1.clone()]), HashSet::from([w2.clone()])];
    let mut frontier = [vec![w1.clone()], vec![w2.clone()]];
    while !frontier[0].is_empty() && !frontier[1].is_empty() {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let mut next = Vec::new();
        for w in std::mem::take(&mut frontier[side]) {
            for n in neighbours(&w, cap, &table) {
                if seen[1 - side].contains(&n) {
                    return true;
                }
                if seen[side].insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        frontier[side] = next;
    }
    false
}

/// Random walk in the relation graph, staying within `cap` letters.
pub fn random_equal_word<R: Rng>(rng: &mut R, w: &Word, steps: usize, cap: usize) -> Word {
    let table = relation_table();
    let mut cur = w.clone();
    for _ in 0..steps {
        let ns = neighbours(&cur, cap, &table);
        if ns.is_empty() {
            break;
        }
        cur = ns[rng.gen_range(0..ns.len())].clone();
    }
    cur
}

pub fn decode(w: &Word) -> BraidWord {
    BraidWord::from_letters(w.iter().map(|&x| {
        Letter::new(if x < 2 { Gen::A } else { Gen::B }, x % 2 == 0)
    }))
}

/// Reduced Burau over Laurent polynomials (offset by `shift`), used as an
/// exact separating invariant for signed words: the representation is
/// faithful on `B₃`.
pub fn burau_signed(w: &Word) -> Vec<(i64, i128)> {
    // Work with t-adic Laurent polynomials as maps degree -> coeff.
    type L = std::collections::BTreeMap<i64, i128>;
    fn mul(a: &L, b: &L) -> L {
        let mut o = L::new();
        for (da, ca) in a {
            for (db, cb) in b {
                *o.entry(da + db).or_default() += ca * cb;
            }
        }
        o.retain(|_, c| *c != 0);
        o
    }
    fn add(a: &L, b: &L) -> L {
        let mut o = a.clone();
        for (d, c) in b {
            *o.entry(*d).or_default() += c;
        }
        o.retain(|_, c| *c != 0);
        o
    }
    let mono = |c: i128, d: i64| -> L { [(d, c)].into_iter().collect() };
    let zero = L::new();
    let one = mono(1, 0);
    // σ1 = [[-t, 1], [0, 1]], σ1⁻¹ = [[-t⁻¹, t⁻¹], [0, 1]]
    // σ2 = [[1, 0], [t, -t]], σ2⁻¹ = [[1, 0], [1, -t⁻¹]]
    let gens: [[[L; 2]; 2]; 4] = [
        [[mono(-1, 1), one.clone()], [zero.clone(), one.clone()]],
        [[mono(-1, -1), mono(1, -1)], [zero.clone(), one.clone()]],
        [[one.clone(), zero.clone()], [mono(1, 1), mono(-1, 1)]],
        [[one.clone(), zero.clone()], [one.clone(), mono(-1, -1)]],
    ];
    let mut acc = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for &x in w {
        let g = &gens[x as usize];
        let mut next: [[L; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = add(&mul(&acc[i][0], &g[0][j]), &mul(&acc[i][1], &g[1][j]));
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for (idx, e) in acc.iter().flatten().enumerate() {
        out.push((-(idx as i64) - 1_000_000, 0));
        out.extend(e.iter().map(|(d, c)| (*d, *c)));
    }
    out
}

/// Brute-force verdict on `w1 = w2`: the relation closure is searched with
/// a length cap of `max(|w1|, |w2|) + 2`, raised (up to `max_cap`) only while
/// the Burau images agree, since those words may need a longer detour.
pub fn closure_verdict(w1: &Word, w2: &Word, max_cap: usize) -> bool {
    let mut cap = w1.len().max(w2.len()) + 2;
    loop {
        if relation_closure_equal(w1, w2, cap) {
            return true;
        }
        if cap >= max_cap || burau_signed(w1) != burau_signed(w2) {
            return false;
        }
        cap += 2;
    }
}

/// `count` pairs of signed words of length at most `max_len`: half related
/// by a random walk in the relation graph, half independent.
pub fn word_pairs<R: Rng>(rng: &mut R, count: usize, max_len: usize) -> Vec<(Word, Word)> {
    (0..count)
        .map(|i| {
            let l1 = rng.gen_range(0..=max_len);
            let w1 = encode(&random_signed_word(rng, l1));
            let w2 = if i % 2 == 0 {
                let steps = rng.gen_range(1..=12);
                random_equal_word(rng, &w1, steps, max_len)
            } else {
                let l2 = rng.gen_range(0..=max_len);
                encode(&random_signed_word(rng, l2))
            };
            (w1, w2)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Exhaustive optimum for power deletion on short positive words.

/// Positive words as byte strings over `{0 = a, 1 = b}`.
pub type Positive = Vec<u8>;

fn positive_class(w: &Positive) -> Vec<Positive> {
    let mut seen: HashSet<Positive> = HashSet::from([w.clone()]);
    let mut stack = vec![w.clone()];
    while let Some(x) = stack.pop() {
        let mut next = Vec::new();
        if !x.is_empty() {
            let mut r = x.clone();
            r.rotate_left(1);
            next.push(r);
        }
        for i in 0..x.len().saturating_sub(2) {
            if x[i] == x[i + 2] && x[i] != x[i + 1] {
                let mut r = x.clone();
                for c in &mut r[i..i + 3] {
                    *c ^= 1;
                }
                next.push(r);
            }
        }
        for n in next {
            if seen.insert(n.clone()) {
                stack.push(n);
            }
        }
    }
    seen.into_iter().collect()
}

/// Maximal number of `k`-th powers of a generator deletable on the way from
/// `w` to the empty word, searching all rewrites, rotations and deletions.
pub struct OptimumOracle {
    k: usize,
    memo: HashMap<Positive, u32>,
}

impl OptimumOracle {
    pub fn new(k: usize) -> Self {
        OptimumOracle { k, memo: HashMap::new() }
    }

    pub fn optimum(&mut self, w: &Positive) -> u32 {
        if w.is_empty() {
            return 0;
        }
        if let Some(&v) = self.memo.get(w) {
            return v;
        }
        let class = positive_class(w);
        let mut best = 0;
        for c in &class {
            for i in 0..c.len() {
                let mut s = c.clone();
                s.remove(i);
                best = best.max(self.optimum(&s));
                if i + self.k <= c.len() && c[i..i + self.k].iter().all(|&x| x == c[i]) {
                    let mut p = c.clone();
                    p.drain(i..i + self.k);
                    best = best.max(1 + self.optimum(&p));
                }
            }
        }
        for c in class {
            self.memo.insert(c, best);
        }
        best
    }
}

pub fn to_positive(w: &BraidWord) -> Positive {
    w.letters().map(|l| if l.gen == Gen::A { 0 } else { 1 }).collect()
}

pub fn from_positive(w: &Positive) -> BraidWord {
    BraidWord::from_letters(w.iter().map(|&x| Letter::new(if x == 0 { Gen::A } else { Gen::B }, true)))
}
