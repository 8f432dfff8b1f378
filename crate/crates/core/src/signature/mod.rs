//! Levine–Tristram signatures of positive 3-braid closures.
//!
//! Signs follow the convention in which positive braids have positive
//! signature: `σ_θ = -sign((1-ω)V + (1-ω̄)Vᵀ)` with `ω = e^{2πiθ}`.

pub mod inertia;
pub mod seifert;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, Result};
use crate::link_model::LinkDescriptor;

pub use inertia::{hermitian_inertia, Inertia};
pub use seifert::{bricks, seifert_matrix, Brick, SeifertMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitSide {
    At,
    FromAbove,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureValue {
    #[serde(with = "crate::ratio_serde")]
    pub theta: Rational64,
    pub sigma: i64,
    pub nullity: usize,
    /// Size of the form the value was read from.
    pub size: usize,
    pub limit_side: LimitSide,
    /// Where the value was actually evaluated (`θ + ε` for one-sided limits).
    #[serde(with = "crate::ratio_serde")]
    pub evaluated_at: Rational64,
    /// Second point confirming the value (`θ + ε/2`), for one-sided limits.
    #[serde(default, with = "crate::ratio_serde::option")]
    pub stability_witness: Option<Rational64>,
}

/// Signature and nullity of `(1-ω)V + (1-ω̄)Vᵀ` at `θ`, in the positive
/// convention.
pub fn form_signature(v: &SeifertMatrix, theta: f64) -> (i64, usize) {
    let n = v.size();
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
    let one = Complex64::new(1.0, 0.0);
    let (s, t) = (one - omega, one - omega.conj());
    let h: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            s * v.get(i, j) as f64 + t * v.get(j, i) as f64
        })
        .collect();
    let inertia = hermitian_inertia(n, &h);
    (-inertia.signature(), inertia.zero)
}

/// The Seifert matrix for the closure of a positive word, using `Δ`-conjugation
/// for words in `b` only. `None` means the closure has an empty surface basis.
fn surface_of(w: &BraidWord) -> Result<Option<SeifertMatrix>> {
    if !w.is_positive() {
        return Err(Error::NotNonSplitPositive(w.to_string()));
    }
    if w.is_empty() {
        return Ok(None);
    }
    let w = if w.contains(Gen::A) { w.clone() } else { w.flip() };
    seifert_matrix(&w).map(Some)
}

/// A link reduced to a Seifert form and a multiplicity.
struct Evaluator {
    surface: Option<SeifertMatrix>,
    copies: i64,
    length: u64,
}

impl Evaluator {
    fn new(d: &LinkDescriptor) -> Result<Self> {
        match d {
            LinkDescriptor::T2kSum { k, n } => {
                let w = BraidWord::from_runs([(Gen::A, *k as i64), (Gen::B, 1)]);
                Ok(Evaluator {
                    surface: surface_of(&w)?,
                    copies: *n as i64,
                    length: w.length(),
                })
            }
            _ => {
                let w = d.braid_word()?;
                Ok(Evaluator {
                    surface: surface_of(&w)?,
                    copies: 1,
                    length: w.length(),
                })
            }
        }
    }

    fn size(&self) -> usize {
        self.surface.as_ref().map_or(0, |v| v.size()) * self.copies as usize
    }

    fn eval(&self, theta: Rational64) -> (i64, usize) {
        match &self.surface {
            Some(v) if self.copies > 0 => {
                let (s, z) = form_signature(v, theta.to_f64().unwrap());
                (s * self.copies, z * self.copies as usize)
            }
            _ => (0, 0),
        }
    }
}

/// Smallest one-sided offset tried before giving up.
pub fn epsilon_floor() -> Rational64 {
    Rational64::new(1, 1_000_000)
}

/// Initial one-sided offset `1 / (4 k (ℓ + 10))`.
pub fn initial_epsilon(k: u32, length: u64) -> Rational64 {
    Rational64::new(1, 4 * k.max(1) as i64 * (length as i64 + 10))
}

/// Evaluates the signature of `d` at `θ`, or its limit from the right.
///
/// For [`LimitSide::FromAbove`] the offset scale `k` is the denominator of
/// `θ`; use [`signature_from_above`] to pass it explicitly.
pub fn signature_at(d: &LinkDescriptor, theta: Rational64, side: LimitSide) -> Result<SignatureValue> {
    match side {
        LimitSide::At => signature_exact(d, theta),
        LimitSide::FromAbove => {
            let k = (*theta.denom()).clamp(1, u32::MAX as i64) as u32;
            signature_from_above(d, theta, k)
        }
    }
}

fn check_theta(theta: Rational64) -> Result<()> {
    if theta <= Rational64::zero() || theta >= Rational64::from_integer(1) {
        return Err(Error::InvalidParameter(format!("theta = {theta} is not in (0,1)")));
    }
    Ok(())
}

fn signature_exact(d: &LinkDescriptor, theta: Rational64) -> Result<SignatureValue> {
    check_theta(theta)?;
    let ev = Evaluator::new(d)?;
    let (sigma, nullity) = ev.eval(theta);
    if nullity > 0 {
        return Err(Error::IrregularPoint {
            theta: theta.to_string(),
            nullity,
            nearest_jump: theta.to_string(),
        });
    }
    Ok(SignatureValue {
        theta,
        sigma,
        nullity,
        size: ev.size(),
        limit_side: LimitSide::At,
        evaluated_at: theta,
        stability_witness: None,
    })
}

/// `lim_{t → θ+} σ_t(d)`, evaluated at `θ + ε` and confirmed at `θ + ε/2`
/// with `ε = 1/(4k(ℓ+10))`, halving `ε` until both agree.
pub fn signature_from_above(d: &LinkDescriptor, theta: Rational64, k: u32) -> Result<SignatureValue> {
    check_theta(theta)?;
    let ev = Evaluator::new(d)?;
    let mut eps = initial_epsilon(k, ev.length);
    let half = Rational64::new(1, 2);
    while eps >= epsilon_floor() {
        let (outer, inner) = (theta + eps, theta + eps * half);
        if outer < Rational64::from_integer(1) {
            let (s1, z1) = ev.eval(outer);
            let (s2, z2) = ev.eval(inner);
            if s1 == s2 && z1 == 0 && z2 == 0 {
                return Ok(SignatureValue {
                    theta,
                    sigma: s1,
                    nullity: 0,
                    size: ev.size(),
                    limit_side: LimitSide::FromAbove,
                    evaluated_at: outer,
                    stability_witness: Some(inner),
                });
            }
        }
        eps *= half;
    }
    Err(Error::UnstableLimit(theta.to_string()))
}

/// The evaluation point `θ_k` of the shorthand `σ_k`: `1/6`, `1/4`, `3/10`
/// for `k = 3, 4, 5` and `1/2` for `k ≥ 6`.
pub fn shorthand_point(k: u32) -> Result<Rational64> {
    match k {
        3 => Ok(Rational64::new(1, 6)),
        4 => Ok(Rational64::new(1, 4)),
        5 => Ok(Rational64::new(3, 10)),
        k if k >= 6 => Ok(Rational64::new(1, 2)),
        _ => Err(Error::InvalidParameter(format!("no shorthand signature for k = {k}"))),
    }
}

/// `σ_k(L)`: the right limit at `θ_k` for `k ≤ 5`, the classical signature
/// for `k ≥ 6`.
pub fn sigma_k(d: &LinkDescriptor, k: u32) -> Result<SignatureValue> {
    let theta = shorthand_point(k)?;
    if k >= 6 {
        signature_at(d, theta, LimitSide::At)
    } else {
        signature_from_above(d, theta, k)
    }
}

/// Torus link signature by lattice counting: with `x = i/p + j/q` over
/// `1 ≤ i < p`, `1 ≤ j < q`,
/// `σ_θ = #{x ∈ (θ, θ+1)} - #{x < θ} - #{x > θ+1}`.
pub fn torus_signature_oracle(p: u32, q: u32, theta: Rational64) -> Result<i64> {
    check_theta(theta)?;
    let one = Rational64::from_integer(1);
    let mut sigma = 0;
    for i in 1..p as i64 {
        for j in 1..q as i64 {
            let x = Rational64::new(i, p as i64) + Rational64::new(j, q as i64);
            if x == theta || x == theta + one {
                return Err(Error::IrregularPoint {
                    theta: theta.to_string(),
                    nullity: 1,
                    nearest_jump: theta.to_string(),
                });
            }
            if x > theta && x < theta + one {
                sigma += 1;
            } else {
                sigma -= 1;
            }
        }
    }
    Ok(sigma)
}

/// `|σ_θ(β̂) - 2θℓ(β)|` for `0 < θ < 1/3`; bounded by 2 for positive braids.
pub fn gambaudo_ghys_residual(w: &BraidWord, theta: Rational64) -> Result<Rational64> {
    if theta <= Rational64::zero() || theta >= Rational64::new(1, 3) {
        return Err(Error::InvalidParameter(format!("theta = {theta} is not in (0,1/3)")));
    }
    if !w.is_positive() {
        return Err(Error::NotNonSplitPositive(w.to_string()));
    }
    let sv = signature_at(&LinkDescriptor::closure(w.clone()), theta, LimitSide::At)?;
    let l = w.length() as i64;
    Ok((Rational64::from_integer(sv.sigma) - theta * 2 * l).abs())
}

/// Signature lower bound on `d_χ(β̂, T(2,k)^n)`:
/// `|2n - ℓ/3| - 2`, `|3n - ℓ/2| - 2`, `|4n - 3ℓ/5| - 2` for `k = 3, 4, 5`
/// and `|(k-1)n - 2ℓ/3| - 4` for `k ≥ 6` when `β̂` is a torus link `T(3,m)`.
pub fn signature_lower_bound(d: &LinkDescriptor, k: u32, n: u64) -> Result<Rational64> {
    let l = Rational64::from_integer(d.positive_word()?.length() as i64);
    let n = Rational64::from_integer(n as i64);
    let r = Rational64::new;
    let v = match k {
        3 => (n * 2 - l / 3).abs() - 2,
        4 => (n * 3 - l / 2).abs() - 2,
        5 => (n * 4 - l * r(3, 5)).abs() - 2,
        k if k >= 6 => {
            if d.as_torus3().is_none() {
                return Err(Error::TorusHypothesisRequired);
            }
            (n * (k as i64 - 1) - l * r(2, 3)).abs() - 4
        }
        _ => return Err(Error::InvalidParameter(format!("k = {k} < 3"))),
    };
    Ok(v)
}

/// Measured `σ_{-1}(T(3,m)) - 4m/3`, kept as a diagnostic next to the
/// `2ℓ/3` slope used by the lower bound.
pub fn t3_classical_offset(m: u32) -> Result<Rational64> {
    let sv = signature_at(&LinkDescriptor::Torus { p: 3, q: m }, Rational64::new(1, 2), LimitSide::At)
        .or_else(|_| signature_from_above(&LinkDescriptor::Torus { p: 3, q: m }, Rational64::new(1, 2), 6))?;
    Ok(Rational64::from_integer(sv.sigma) - Rational64::new(4 * m as i64, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn closure(s: &str) -> LinkDescriptor {
        LinkDescriptor::closure(s.parse().unwrap())
    }

    #[test]
    fn trefoil_is_positive() {
        let v = signature_at(&closure("(ab)^2"), r(1, 2), LimitSide::At).unwrap();
        assert_eq!((v.sigma, v.nullity, v.size), (2, 0, 2));
        let v = signature_at(&closure("a^3"), r(1, 2), LimitSide::At).unwrap();
        assert_eq!(v.sigma, 2);
    }

    #[test]
    fn shorthand_values_of_t2k() {
        for k in 3..=10 {
            let v = sigma_k(&LinkDescriptor::Torus { p: 2, q: k }, k).unwrap();
            assert_eq!(v.sigma, k as i64 - 1, "k = {k}");
        }
    }

    #[test]
    fn sums_and_unknot() {
        let u = LinkDescriptor::T2kSum { k: 5, n: 0 };
        let v = signature_at(&u, r(1, 3), LimitSide::At).unwrap();
        assert_eq!((v.sigma, v.nullity), (0, 0));
        let s = LinkDescriptor::T2kSum { k: 3, n: 4 };
        assert_eq!(signature_at(&s, r(1, 2), LimitSide::At).unwrap().sigma, 8);
    }

    #[test]
    fn irregular_point_is_reported() {
        let e = signature_at(&LinkDescriptor::Torus { p: 2, q: 3 }, r(1, 6), LimitSide::At);
        assert!(matches!(e, Err(Error::IrregularPoint { .. })));
    }

    #[test]
    fn lattice_oracle_values() {
        assert_eq!(torus_signature_oracle(2, 3, r(1, 2)).unwrap(), 2);
        assert_eq!(torus_signature_oracle(2, 5, r(35, 100)).unwrap(), 4);
        assert_eq!(torus_signature_oracle(3, 4, r(1, 2)).unwrap(), 6);
        assert_eq!(torus_signature_oracle(2, 6, r(1, 2)).unwrap(), 5);
        assert!(torus_signature_oracle(2, 3, r(1, 6)).is_err());
    }

    #[test]
    fn t35_matches_oracle() {
        let v = signature_at(&LinkDescriptor::Torus { p: 3, q: 5 }, r(1, 2), LimitSide::At).unwrap();
        assert_eq!(v.sigma, 8);
    }

    #[test]
    fn lemma_cases() {
        let w = |l: usize| LinkDescriptor::closure(BraidWord::from_runs((0..l).map(|i| {
            (if i % 2 == 0 { Gen::A } else { Gen::B }, 1)
        })));
        assert_eq!(signature_lower_bound(&w(30), 3, 10).unwrap(), r(8, 1));
        assert_eq!(signature_lower_bound(&w(24), 4, 6).unwrap(), r(4, 1));
        let t39 = LinkDescriptor::Torus { p: 3, q: 9 };
        assert_eq!(signature_lower_bound(&t39, 7, 5).unwrap(), r(14, 1));
        let nt = closure("a^2b^2a^2b^2");
        assert!(matches!(signature_lower_bound(&nt, 6, 1), Err(Error::TorusHypothesisRequired)));
    }

    #[test]
    fn residual_examples() {
        let w: BraidWord = "(ab)^6".parse().unwrap();
        assert!(gambaudo_ghys_residual(&w, r(1, 6) + r(1, 1000)).unwrap() <= r(2, 1));
        assert!(gambaudo_ghys_residual(&"ab".parse().unwrap(), r(1, 4)).unwrap() <= r(2, 1));
        assert!(gambaudo_ghys_residual(&w, r(1, 2)).is_err());
    }
}
