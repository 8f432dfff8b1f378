//! Inertia of dense Hermitian matrices by symmetric-pivoted `LDL*`
//! (Bunch–Kaufman partial pivoting with 1×1 and 2×2 blocks).

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

/// Numbers of positive, negative and (numerically) zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Zero threshold relative to the largest absolute entry of the input.
pub const RELATIVE_ZERO: f64 = 1e-8;

// (1 + sqrt(17)) / 8, the Bunch–Kaufman growth-optimal constant.
const ALPHA: f64 = 0.640_388_203_202_208;

/// Inertia of the Hermitian matrix `a` (row-major, `n × n`). Only the lower
/// triangle is trusted; the upper triangle is ignored.
pub fn hermitian_inertia(n: usize, a: &[Complex64]) -> Inertia {
    assert_eq!(a.len(), n * n);
    let scale = a.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    let tol = RELATIVE_ZERO * scale.max(f64::MIN_POSITIVE);
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j <= i { a[i * n + j] } else { a[j * n + i].conj() })
                .collect()
        })
        .collect();

    let mut out = Inertia::default();
    let mut k = 0;
    while k < n {
        let akk = m[k][k].re.abs();
        let (r, lambda) = (k + 1..n)
            .map(|i| (i, m[i][k].norm()))
            .fold((k, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });

        if akk.max(lambda) <= tol {
            out.zero += 1;
            k += 1;
            continue;
        }

        let two_by_two = if akk >= ALPHA * lambda {
            false
        } else {
            let sigma = (k..n)
                .filter(|&i| i != r)
                .map(|i| m[i.max(r)][i.min(r)].norm())
                .fold(0.0, f64::max);
            if akk * sigma >= ALPHA * lambda * lambda {
                false
            } else if m[r][r].re.abs() >= ALPHA * sigma {
                swap_sym(&mut m, k, r);
                false
            } else {
                swap_sym(&mut m, k + 1, r);
                true
            }
        };

        if !two_by_two {
            let d = m[k][k].re;
            if d.abs() <= tol {
                out.zero += 1;
            } else if d > 0.0 {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            if d.abs() > tol {
                for i in k + 1..n {
                    let li = m[i][k] / d;
                    for j in k + 1..=i {
                        let upd = li * m[j][k].conj();
                        m[i][j] -= upd;
                    }
                }
            }
            k += 1;
        } else {
            let (p, q, c) = (m[k][k].re, m[k + 1][k + 1].re, m[k + 1][k]);
            let det = p * q - c.norm_sqr();
            // eigenvalues of [[p, c̄], [c, q]]
            let mean = 0.5 * (p + q);
            let rad = (0.25 * (p - q) * (p - q) + c.norm_sqr()).sqrt();
            for ev in [mean + rad, mean - rad] {
                if ev.abs() <= tol {
                    out.zero += 1;
                } else if ev > 0.0 {
                    out.positive += 1;
                } else {
                    out.negative += 1;
                }
            }
            // E⁻¹ = [[q, -c̄], [-c, p]] / det
            for i in k + 2..n {
                let (x, y) = (m[i][k], m[i][k + 1]);
                let w0 = (x * q - y * c) / det;
                let w1 = (y * p - x * c.conj()) / det;
                for j in k + 2..=i {
                    let upd = w0 * m[j][k].conj() + w1 * m[j][k + 1].conj();
                    m[i][j] -= upd;
                }
            }
            k += 2;
        }
    }
    out
}

/// Symmetric row/column interchange on the lower triangle.
fn swap_sym(m: &mut [Vec<Complex64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    let (i, j) = (i.min(j), i.max(j));
    let n = m.len();
    let full = |m: &[Vec<Complex64>], r: usize, c: usize| {
        if c <= r {
            m[r][c]
        } else {
            m[c][r].conj()
        }
    };
    let mut copy = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for c in 0..=r {
            let pr = if r == i { j } else if r == j { i } else { r };
            let pc = if c == i { j } else if c == j { i } else { c };
            copy[r][c] = full(m, pr, pc);
        }
    }
    for r in 0..n {
        m[r][..=r].copy_from_slice(&copy[r][..=r]);
    }
}
