use couplings::{xi, zeta, ModelParams};
use serde::Serialize;

use crate::{constants, BoundsError, GammaStats, Result};

/// Smallest accepted number of terms per infinite index.
pub const MIN_TRUNCATION: usize = 50;

/// A multiple sum evaluated by truncation, next to its closed-form bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixSum {
    pub name: &'static str,
    pub numeric: f64,
    pub bound: f64,
}

impl AppendixSum {
    pub fn holds(&self) -> bool {
        self.numeric <= self.bound * (1.0 + 1e-12)
    }

    /// `bound - numeric`
    pub fn slack(&self) -> f64 {
        self.bound - self.numeric
    }
}

/// `C(n, k)` as a float; zero when `k < 0` or `k > n`.
fn binom(n: usize, k: i64) -> f64 {
    if k < 0 || k as usize > n {
        return 0.0;
    }
    let k = (k as usize).min(n - k as usize);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Evaluates the three sums with `truncation` terms for each infinite index
/// and pairs them with `C1' xi^|gamma| zeta`, `C1'' xi^|gamma| zeta` and
/// `C1'''' xi^|gamma| zeta`.
pub fn appendix_sums(params: &ModelParams, g: &GammaStats, truncation: usize) -> Result<[AppendixSum; 3]> {
    if truncation < MIN_TRUNCATION {
        return Err(BoundsError::Truncation(truncation));
    }
    let report = constants(params, g)?;
    let az = (16.0 * params.m as f64).powi(2) * zeta(params.beta, params.n);
    let x = xi(params.kappa, params.n);
    let len = g.len;
    let pc = g.p_gamma_c;
    let kk = truncation as i64;
    let lg = len as i64;
    let xp = |e: i64| x.powi(e as i32);
    let azp = |e: i64| az.powi(e as i32);

    let mut b1 = 0.0;
    for i in 0..=pc as i64 {
        for j in (1.max(2 * i))..=lg {
            let c = binom(len, j - 2 * i) * binom(pc, i);
            if c == 0.0 {
                continue;
            }
            let mut inner = 0.0;
            for k in (j - i + 1)..(j - i + 1 + kk) {
                let start = j.max(3 * j - 3 * i - k);
                let tail: f64 = (start..start + kk).map(|kp| xp(lg + kp - 2 * j)).sum();
                inner += azp(k) * tail;
            }
            b1 += c * inner;
        }
    }

    let mut b2 = 0.0;
    for i in 0..=pc as i64 {
        for j in (2 * i + 1).max(2)..=lg {
            let c = (j - 1) as f64 * binom(len, j - 2 * i - 1) * binom(pc, i);
            if c == 0.0 {
                continue;
            }
            let start = j.max(2 * j - 2 * i);
            let tail: f64 = (start..start + kk).map(|kp| xp(lg + kp - 2 * j)).sum();
            b2 += c * azp(j - i) * tail;
        }
    }

    let mut b3 = 0.0;
    for j in 0..=lg {
        let c = binom(len, j + 1) * (j + 1) as f64;
        if c == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for kh in (j + 2)..(j + 2 + kk) {
            let start = 4 * j + 0.max(j + 6 - kh);
            let tail: f64 = (start..start + kk).map(|kp| xp(lg + kp - 2 * j)).sum();
            inner += azp(kh) * tail;
        }
        b3 += c * inner;
    }

    let z = report.zeta_beta;
    let scale = (len as f64 * x.ln()).exp() * z;
    Ok([
        AppendixSum { name: "B1", numeric: b1, bound: report.c1_prime * scale },
        AppendixSum { name: "B2", numeric: b2, bound: report.c1_double_prime * scale },
        AppendixSum { name: "B3", numeric: b3, bound: report.c1_quadruple_prime * scale },
    ])
}
