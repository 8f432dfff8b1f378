//! Lower and upper bounds on the cobordism distance to `T(2,k)^n`, and
//! sweeps checking the asymptotic distance formulas against them.

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Gen};
use crate::error::{Error, Result};
use crate::link_model::{
    explicit_constant, t2k_to_t26_cost, uniform_constant, DistanceFormula, LinkDescriptor, Theorem,
};
use crate::reduction::{plan, plan_torus, DeletionCertificate};
use crate::signature::signature_lower_bound;

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Which constants the formulas are checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantMode {
    /// `C_3 = 18`, `C_4 = 31/2`, `C_5 = 194/5`, `C_6 = 131/3`, and 44 for `k ≥ 7`.
    #[default]
    Explicit,
    /// 44 for every `k ≥ 4`.
    Uniform,
}

/// `|(k-1)n - ℓ| - 2`, the Euler characteristic bound.
pub fn euler_lower_bound(d: &LinkDescriptor, k: u32, n: u64) -> Result<Rational64> {
    let l = d.positive_word()?.length() as i64;
    Ok(rat(((k as i64 - 1) * n as i64 - l).abs() - 2))
}

/// The assembled piecewise form `ℓ/k + (k-1)|n - ℓ/k| - c_k` with
/// `c_k = 2` for `k ≤ 5` and `4` otherwise.
pub fn piecewise_lower_bound(length: u64, k: u32, n: u64) -> Rational64 {
    let c = if k <= 5 { 2 } else { 4 };
    let center = Rational64::new(length as i64, k as i64);
    center + (rat(n as i64) - center).abs() * (k as i64 - 1) - c
}

/// Best lower bound: the larger of the Euler characteristic and signature
/// bounds, never below zero.
pub fn lower_bound(d: &LinkDescriptor, k: u32, n: u64) -> Result<Rational64> {
    check_source(d, k)?;
    let chi = euler_lower_bound(d, k, n)?;
    let sig = signature_lower_bound(d, k, n)?;
    Ok(chi.max(sig).max(Rational64::zero()))
}

fn check_source(d: &LinkDescriptor, k: u32) -> Result<BraidWord> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 3")));
    }
    let w = d.positive_word()?;
    if !w.is_nonsplit_positive() {
        return Err(Error::NotNonSplitPositive(w.to_string()));
    }
    Ok(w)
}

/// One certificate-based upper bound `base + (k-1)|n - N| + extra·n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperRoute {
    pub name: String,
    /// Powers deleted by the certificate.
    pub powers: u64,
    /// Certificate cost `n + j + 2`.
    pub base: u64,
    /// Slope of the `T(2,k)^N → T(2,k)^n` chain.
    pub chain_slope: u64,
    /// Per-summand cost of the `T(2,6) → T(2,k)` band moves (route via `k = 6`).
    pub per_summand: u64,
}

impl UpperRoute {
    fn from_certificate(name: &str, cert: &DeletionCertificate, k: u32, per_summand: u64) -> Result<Self> {
        let r = cert.validate()?;
        Ok(UpperRoute {
            name: name.to_string(),
            powers: r.n as u64,
            base: r.bound,
            chain_slope: k as u64 - 1,
            per_summand,
        })
    }

    pub fn at(&self, n: u64) -> u64 {
        self.base + self.chain_slope * n.abs_diff(self.powers) + self.per_summand * n
    }
}

/// All upper-bound routes available for a link and `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperChain {
    pub routes: Vec<UpperRoute>,
}

impl UpperChain {
    pub fn new(d: &LinkDescriptor, k: u32) -> Result<Self> {
        let w = check_source(d, k)?;
        let torus = d.as_torus3();
        let mut routes = Vec::new();
        let direct = plan(&w, k)?;
        routes.push(UpperRoute::from_certificate("direct", &direct, k, 0)?);
        if k >= 7 {
            if let Some(m) = torus {
                let six = plan_torus(m as u64, 6)?;
                let per = t2k_to_t26_cost(k, 1)?;
                let mut r = UpperRoute::from_certificate("via T(2,6)", &six, 6, per)?;
                r.chain_slope = 5;
                routes.push(r);
            }
        }
        Ok(UpperChain { routes })
    }

    /// The smallest bound over all routes, with the route's name.
    pub fn at(&self, n: u64) -> (u64, &str) {
        self.routes
            .iter()
            .map(|r| (r.at(n), r.name.as_str()))
            .min_by_key(|x| x.0)
            .expect("at least the direct route")
    }
}

pub fn upper_bound(d: &LinkDescriptor, k: u32, n: u64) -> Result<Rational64> {
    Ok(rat(UpperChain::new(d, k)?.at(n).0 as i64))
}

/// The distance formula that applies to `(d, k, n)`, if any.
pub fn applicable_formula(d: &LinkDescriptor, k: u32, n: u64, mode: ConstantMode) -> Result<Option<DistanceFormula>> {
    let l = d.positive_word()?.length();
    let torus = d.as_torus3().map(|m| m as u64);
    let f = match (k, torus) {
        (3, _) => Some(DistanceFormula::t1(l)),
        (4..=6, Some(m)) => {
            let f = DistanceFormula::t2(k, m)?;
            Some(match mode {
                ConstantMode::Explicit => f,
                ConstantMode::Uniform => f.with_constant(uniform_constant()),
            })
        }
        (7.., Some(m)) => [Theorem::T3i, Theorem::T3ii]
            .into_iter()
            .map(|t| DistanceFormula::t3(t, k, m))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|f| f.admits(n)),
        _ => None,
    };
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub descriptor: LinkDescriptor,
    pub k: u32,
    pub n: u64,
    #[serde(with = "crate::ratio_serde")]
    pub lower_chi: Rational64,
    #[serde(with = "crate::ratio_serde")]
    pub lower_sigma: Rational64,
    #[serde(with = "crate::ratio_serde")]
    pub lower: Rational64,
    #[serde(with = "crate::ratio_serde")]
    pub upper: Rational64,
    pub upper_route: String,
    /// Diagnostic `ℓ/k + (k-1)|n - ℓ/k| - c_k`.
    #[serde(with = "crate::ratio_serde")]
    pub lower_piecewise: Rational64,
    pub theorem: Option<Theorem>,
    #[serde(default, with = "crate::ratio_serde::option")]
    pub prediction: Option<Rational64>,
    #[serde(default, with = "crate::ratio_serde::option")]
    pub e_low: Option<Rational64>,
    #[serde(default, with = "crate::ratio_serde::option")]
    pub e_high: Option<Rational64>,
    #[serde(default, with = "crate::ratio_serde::option")]
    pub constant: Option<Rational64>,
    pub pass: Option<bool>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "link      {}", self.descriptor)?;
        writeln!(f, "target    T(2,{})^{}", self.k, self.n)?;
        writeln!(f, "lower     {} (chi {}, signature {})", self.lower, self.lower_chi, self.lower_sigma)?;
        writeln!(f, "upper     {} ({})", self.upper, self.upper_route)?;
        match (self.theorem, self.prediction) {
            (Some(t), Some(p)) => {
                writeln!(f, "formula   {t}: {p}")?;
                writeln!(
                    f,
                    "error     [{}, {}] against +-{}",
                    self.e_low.unwrap(),
                    self.e_high.unwrap(),
                    self.constant.unwrap()
                )?;
                write!(f, "result    {}", if self.pass == Some(true) { "pass" } else { "FAIL" })
            }
            _ => write!(f, "formula   none applies"),
        }
    }
}

/// Report for a single point, reusing a precomputed upper chain.
pub fn report_with_chain(
    d: &LinkDescriptor,
    k: u32,
    n: u64,
    chain: &UpperChain,
    mode: ConstantMode,
) -> Result<BoundReport> {
    let w = check_source(d, k)?;
    let lower_chi = euler_lower_bound(d, k, n)?;
    let lower_sigma = signature_lower_bound(d, k, n)?;
    let lower = lower_chi.max(lower_sigma).max(Rational64::zero());
    let (upper, route) = chain.at(n);
    let upper = rat(upper as i64);
    let formula = applicable_formula(d, k, n, mode)?;
    let prediction = formula.map(|f| f.prediction_unchecked(n));
    let e_low = prediction.map(|p| lower - p);
    let e_high = prediction.map(|p| upper - p);
    let constant = formula.map(|f| f.constant);
    let pass = match (e_low, e_high, constant) {
        (Some(lo), Some(hi), Some(c)) => Some(-c <= lo && hi <= c),
        _ => None,
    };
    Ok(BoundReport {
        descriptor: d.clone(),
        k,
        n,
        lower_chi,
        lower_sigma,
        lower,
        upper,
        upper_route: route.to_string(),
        lower_piecewise: piecewise_lower_bound(w.length(), k, n),
        theorem: formula.map(|f| f.theorem),
        prediction,
        e_low,
        e_high,
        constant,
        pass,
    })
}

pub fn bound_report(d: &LinkDescriptor, k: u32, n: u64, mode: ConstantMode) -> Result<BoundReport> {
    let chain = UpperChain::new(d, k)?;
    report_with_chain(d, k, n, &chain, mode)
}

/// A random non-split positive word of length exactly `len ≥ 2`: runs
/// alternate between the generators with geometric lengths of mean 2.
pub fn sample_nonsplit_positive<R: Rng>(rng: &mut R, len: u64) -> BraidWord {
    assert!(len >= 2);
    let geo = Geometric::new(0.5).expect("valid probability");
    loop {
        let mut gen = if rng.gen_bool(0.5) { Gen::A } else { Gen::B };
        let mut runs = Vec::new();
        let mut total = 0u64;
        while total < len {
            let r = (geo.sample(rng) + 1).min(len - total);
            runs.push((gen, r as i64));
            total += r;
            gen = gen.flip();
        }
        let w = BraidWord::from_runs(runs);
        if w.is_nonsplit_positive() {
            return w;
        }
    }
}

/// Parameter ranges for a sweep. `m` stands for the word length in `T1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub k: RangeInclusive<u32>,
    pub m: RangeInclusive<u64>,
    pub n: RangeInclusive<u64>,
    /// Number of random words (`T1` only).
    pub count: usize,
}

impl Grid {
    pub fn default_for(theorem: Theorem) -> Grid {
        match theorem {
            Theorem::T1 => Grid {
                k: 3..=3,
                m: 2..=60,
                n: 0..=40,
                count: 200,
            },
            Theorem::T2 => Grid {
                k: 4..=6,
                m: 1..=100,
                n: 0..=50,
                count: 0,
            },
            Theorem::T3i => Grid {
                k: 7..=12,
                m: 1..=300,
                n: 0..=120,
                count: 0,
            },
            Theorem::T3ii => Grid {
                k: 7..=12,
                m: 1..=300,
                n: 0..=300,
                count: 0,
            },
        }
    }

    /// Parses `key=lo..hi` or `key=value` items separated by commas, over
    /// the defaults for `theorem`. Keys: `k`, `m` (or `len`), `n`, `count`.
    pub fn parse_for(theorem: Theorem, text: &str) -> Result<Grid> {
        let mut g = Grid::default_for(theorem);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("grid item `{item}` is not key=value")))?;
            let (lo, hi) = parse_range(value)?;
            match key.trim() {
                "k" => g.k = lo as u32..=hi as u32,
                "m" | "len" => g.m = lo..=hi,
                "n" => g.n = lo..=hi,
                "count" => g.count = hi as usize,
                other => return Err(Error::InvalidParameter(format!("unknown grid key `{other}`"))),
            }
        }
        Ok(g)
    }
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::InvalidParameter(format!("`{t}` is not a non-negative integer")))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(Error::InvalidParameter(format!("empty range {s}")));
            }
            Ok((a, b))
        }
        None => num(s).map(|v| (v, v)),
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={}..{},m={}..{},n={}..{},count={}",
            self.k.start(),
            self.k.end(),
            self.m.start(),
            self.m.end(),
            self.n.start(),
            self.n.end(),
            self.count
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub theorem: Theorem,
    pub grid: Grid,
    pub seed: u64,
    pub reports: Vec<BoundReport>,
    pub failures: usize,
    pub bracket_violations: usize,
    #[serde(default, with = "crate::ratio_serde::option")]
    pub max_e_high: Option<Rational64>,
    #[serde(default, with = "crate::ratio_serde::option")]
    pub min_e_low: Option<Rational64>,
}

impl SummaryTable {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.bracket_violations == 0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,k,length,m,n,link,lower,upper,prediction,E_low,E_high,constant,pass\n");
        let opt = |x: Option<Rational64>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.reports {
            let l = r.descriptor.positive_word().map(|w| w.length()).unwrap_or(0);
            let m = r.descriptor.as_torus3().map(|m| m.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                self.theorem,
                r.k,
                l,
                m,
                r.n,
                r.descriptor,
                r.lower,
                r.upper,
                opt(r.prediction),
                opt(r.e_low),
                opt(r.e_high),
                opt(r.constant),
                r.pass.map(|p| p.to_string()).unwrap_or_default()
            );
        }
        out
    }
}

impl fmt::Display for SummaryTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<Rational64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        write!(
            f,
            "{} grid {} seed {}: {} points, {} failures, {} bracket violations, min E_low {}, max E_high {}",
            self.theorem,
            self.grid,
            self.seed,
            self.reports.len(),
            self.failures,
            self.bracket_violations,
            opt(self.min_e_low),
            opt(self.max_e_high)
        )
    }
}

/// Evaluates every grid point within the theorem's hypotheses.
pub fn verify_theorem(theorem: Theorem, grid: &Grid, seed: u64, mode: ConstantMode) -> Result<SummaryTable> {
    let mut reports = Vec::new();
    let push_link = |d: &LinkDescriptor, k: u32, reports: &mut Vec<BoundReport>| -> Result<()> {
        let chain = UpperChain::new(d, k)?;
        for n in grid.n.clone() {
            let r = report_with_chain(d, k, n, &chain, mode)?;
            if r.theorem == Some(theorem) {
                reports.push(r);
            }
        }
        Ok(())
    };
    match theorem {
        Theorem::T1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lo = (*grid.m.start()).max(2);
            let hi = (*grid.m.end()).max(lo);
            for _ in 0..grid.count {
                let len = rng.gen_range(lo..=hi);
                let d = LinkDescriptor::closure(sample_nonsplit_positive(&mut rng, len));
                push_link(&d, 3, &mut reports)?;
            }
        }
        _ => {
            let ks: Vec<u32> = grid
                .k
                .clone()
                .filter(|&k| match theorem {
                    Theorem::T2 => (4..=6).contains(&k),
                    _ => k >= 7,
                })
                .collect();
            for k in ks {
                for m in grid.m.clone().filter(|&m| m >= 1) {
                    let d = LinkDescriptor::Torus { p: 3, q: m as u32 };
                    push_link(&d, k, &mut reports)?;
                }
            }
        }
    }
    if reports.is_empty() {
        return Err(Error::Hypothesis(format!("no grid point of {grid} satisfies the {theorem} hypotheses")));
    }
    let failures = reports.iter().filter(|r| r.pass != Some(true)).count();
    let bracket_violations = reports.iter().filter(|r| r.lower > r.upper).count();
    let max_e_high = reports.iter().filter_map(|r| r.e_high).max();
    let min_e_low = reports.iter().filter_map(|r| r.e_low).min();
    Ok(SummaryTable {
        theorem,
        grid: grid.clone(),
        seed,
        reports,
        failures,
        bracket_violations,
        max_e_high,
        min_e_low,
    })
}

/// Looks up `C_k` (explicit) or 44 (uniform) for `k`.
pub fn constant_for(k: u32, mode: ConstantMode) -> Rational64 {
    match (k, mode) {
        (3, _) => explicit_constant(3).unwrap(),
        (4..=6, ConstantMode::Explicit) => explicit_constant(k).unwrap(),
        _ => uniform_constant(),
    }
}

impl FromStr for ConstantMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(ConstantMode::Explicit),
            "uniform" => Ok(ConstantMode::Uniform),
            _ => Err(Error::InvalidParameter(format!("constant mode `{s}`"))),
        }
    }
}
