//! Reduction strategies producing validated certificates.

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, Result};

use super::peel::{Block, Peeler};
use super::tracker::Tracker;
use super::DeletionCertificate;

fn word(s: &str) -> BraidWord {
    s.parse().expect("static braid word")
}

/// Deletes single letters of the current (positive) word until it reads
/// `target`, which must be a subsequence of it.
fn delete_to(t: &mut Tracker, target: &BraidWord) -> Result<()> {
    let cur: Vec<Gen> = t.cur().letters().map(|l| l.gen).collect();
    let want: Vec<Gen> = target.letters().map(|l| l.gen).collect();
    let mut drop = Vec::new();
    let mut i = 0;
    for (pos, g) in cur.iter().enumerate() {
        if i < want.len() && *g == want[i] {
            i += 1;
        } else {
            drop.push(pos);
        }
    }
    if i < want.len() {
        return Err(Error::InvalidParameter(format!("{target} is not a subword of {}", t.cur())));
    }
    t.delete_positions(&[], &drop)
}

/// `(ab)^{6i}` for `i ≥ 2` as `ab³(ab⁵)^{i-1}ab³ab⁴(ab⁵)^{i-2}ab⁴`.
fn hexa_form(i: u64) -> BraidWord {
    assert!(i >= 2);
    let ab5 = word("ab^5");
    word("ab^3")
        .concat(&ab5.pow(i - 1))
        .concat(&word("ab^3ab^4"))
        .concat(&ab5.pow(i - 2))
        .concat(&word("ab^4"))
}

/// `(ab)^{6i+3}` for `i ≥ 1` as `ab³(ab⁵)^{i-1}ab⁴ab³(ab⁵)^{i-1}ab⁴`.
fn hexa_plus_three_form(i: u64) -> BraidWord {
    assert!(i >= 1);
    let half = word("ab^3").concat(&word("ab^5").pow(i - 1));
    half.concat(&word("ab^4")).concat(&half).concat(&word("ab^4"))
}

/// Largest `M ≤ m` with `M ≡ 0 (mod 3)` and `M - m` even in letters, i.e.
/// reachable from `(ab)^m` by deleting at most two `ab` pairs.
fn lower_multiple_of_three(m: u64) -> u64 {
    m - m % 3
}

/// Any positive word, `k = 3`: free cubes, `Δ⁴` blocks, lookahead singles.
pub fn plan_k3(w: &BraidWord) -> Result<DeletionCertificate> {
    if !w.is_positive() {
        return Err(Error::NotNonSplitPositive(w.to_string()));
    }
    let mut t = Tracker::new(3, w.clone(), false);
    Peeler::new(3, Some(Block::cubes())).run(&mut t)?;
    t.finish()
}

/// Generic positive word, any `k ≥ 2`, using the greedy engine only.
pub fn plan_greedy(w: &BraidWord, k: u32) -> Result<DeletionCertificate> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 2")));
    }
    if !w.is_positive() {
        return Err(Error::NotNonSplitPositive(w.to_string()));
    }
    let block = match k {
        3 => Some(Block::cubes()),
        4 => Some(Block::fourth_powers()),
        _ => None,
    };
    let mut t = Tracker::new(k, w.clone(), false);
    Peeler::new(k, block).run(&mut t)?;
    t.finish()
}

/// The torus link `T(3,m)` as `(ab)^m` for `k ∈ {4, 5, 6}`.
pub fn plan_torus(m: u64, k: u32) -> Result<DeletionCertificate> {
    match k {
        4 => plan_greedy(&BraidWord::torus3(m), 4),
        5 => plan_torus_5(m),
        6 => plan_torus_6(m),
        _ => Err(Error::InvalidParameter(format!("plan_torus handles k in 4..=6, not {k}"))),
    }
}

fn plan_torus_5(m: u64) -> Result<DeletionCertificate> {
    let mut t = Tracker::new(5, BraidWord::torus3(m), false);
    let big = lower_multiple_of_three(m);
    let form = if big >= 12 && big.is_multiple_of(6) {
        Some(hexa_form(big / 6))
    } else if big >= 9 && big % 6 == 3 {
        Some(hexa_plus_three_form(big / 6))
    } else {
        None
    };
    if let Some(form) = form {
        delete_to(&mut t, &BraidWord::torus3(big))?;
        t.rewrite(form)?;
    }
    Peeler::new(5, None).run(&mut t)?;
    t.finish()
}

fn plan_torus_6(m: u64) -> Result<DeletionCertificate> {
    let big = lower_multiple_of_three(m);
    let (form, halves) = if big >= 12 && big.is_multiple_of(6) {
        (hexa_form(big / 6), big / 3 - 1)
    } else if big >= 9 && big % 6 == 3 {
        (hexa_plus_three_form(big / 6), big / 3 - 1)
    } else {
        let mut t = Tracker::new(6, BraidWord::torus3(m), true);
        Peeler::new(6, None).run(&mut t)?;
        return t.finish();
    };
    let mut t = Tracker::new(6, BraidWord::torus3(m), true);
    delete_to(&mut t, &BraidWord::torus3(big))?;
    t.rewrite(form.clone())?;
    // Bring the trailing ab⁴ to the front so both ab⁴·ab³ seams are linear.
    t.rewrite(form.rotate_left(form.length() as usize - 5))?;
    delete_to(&mut t, &word("ab^5").pow(halves))?;
    for r in 0..halves as usize {
        t.delete_power_run(2 * r + 1)?;
    }
    // (ab⁻¹)^{halves}: drop one pair when the count is odd.
    if halves % 2 == 1 {
        t.delete_single_run(0)?;
        t.delete_single_run(0)?;
    }
    let tail = (halves / 2) as u32;
    if tail == 0 {
        debug_assert!(t.cur().is_empty());
    } else {
        t.slice_tail(tail)?;
    }
    t.finish()
}

/// The torus link `T(3,m)` for `k ≥ 7`: all `a` letters go singly and the
/// remaining power of `b` is cut into `k`-th powers.
pub fn plan_torus_large_k(m: u64, k: u32) -> Result<DeletionCertificate> {
    if k < 7 {
        return Err(Error::InvalidParameter(format!("plan_torus_large_k needs k >= 7, got {k}")));
    }
    let mut t = Tracker::new(k, BraidWord::torus3(m), false);
    let big = lower_multiple_of_three(m);
    delete_to(&mut t, &BraidWord::torus3(big))?;
    let form = match big {
        0 => BraidWord::empty(),
        3 => word("ab^2ab^2"),
        6 => word("bab^3ab^3ab^2"),
        _ if big.is_multiple_of(6) => hexa_form(big / 6),
        _ => hexa_plus_three_form(big / 6),
    };
    t.rewrite(form)?;
    let bs = t.cur().runs().iter().filter(|r| r.gen == Gen::B).map(|r| r.exp).sum::<i64>();
    delete_to(&mut t, &BraidWord::from_runs([(Gen::B, bs)]))?;
    for _ in 0..bs / k as i64 {
        t.delete_power_run(0)?;
    }
    t.delete_all_singly()?;
    t.finish()
}

/// Picks the strategy for a word and `k`. Words whose closure is a
/// `T(3,m)` torus link are first rewritten to `(ab)^m`.
pub fn plan(w: &BraidWord, k: u32) -> Result<DeletionCertificate> {
    let torus = crate::link_model::LinkDescriptor::closure(w.clone()).as_torus3();
    let (m, cert) = match (k, torus) {
        (4..=6, Some(m)) => (m as u64, plan_torus(m as u64, k)?),
        (7.., Some(m)) => (m as u64, plan_torus_large_k(m as u64, k)?),
        (3, _) => return plan_k3(w),
        _ => return plan_greedy(w, k),
    };
    let canonical = BraidWord::torus3(m);
    if *w == canonical {
        return Ok(cert);
    }
    let mut moves = vec![super::DeletionMove::Rewrite {
        target: canonical,
        via: super::RewriteKind::Cycling,
    }];
    moves.extend(cert.moves);
    let mut out = DeletionCertificate {
        initial: w.clone(),
        moves,
        summary: None,
        ..cert
    };
    let r = out.validate()?;
    out.summary = Some(super::Summary {
        n: r.n,
        j: r.j,
        tail_cost: r.tail_cost,
    });
    Ok(out)
}
