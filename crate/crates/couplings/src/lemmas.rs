//! Numerical checks of the identities and inequalities satisfied by the
//! character coefficients, evaluated over parameter grids.

use serde::Serialize;

use crate::{alpha, epsilon, eta_gap_witnesses, lambda_weights, PhiTable};

/// Absolute slack used in every comparison.
pub const SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaOutcome {
    pub name: &'static str,
    pub n: u32,
    /// Coupling parameters of the point (one or two values).
    pub params: Vec<f64>,
    pub applicable: bool,
    pub holds: bool,
    /// Smallest margin `rhs - lhs` seen (negative means violated).
    pub margin: f64,
}

fn outcome(name: &'static str, n: u32, params: Vec<f64>, applicable: bool, margin: f64) -> LemmaOutcome {
    LemmaOutcome { name, n, params, applicable, holds: !applicable || margin >= -SLACK, margin }
}

fn min_margin(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(f64::INFINITY, f64::min)
}

fn fact_power(a: f64, j: u32) -> f64 {
    (1..=j).fold(1.0, |acc, i| acc * a / i as f64)
}

/// Checks at a single coupling `a` and group order `n`.
pub fn check_single(a: f64, n: u32) -> Vec<LemmaOutcome> {
    let t = PhiTable::new(a, n);
    let ph = &t.phi_hat;
    let eps = epsilon(a, n);
    let half = n / 2;
    let nn = n as usize;
    let p = || vec![a];
    let mut out = Vec::new();

    // Character expansion of exp(2a Re rho(g)), real and imaginary parts.
    let mut m = f64::INFINITY;
    for g in 0..n {
        let th = 2.0 * std::f64::consts::PI * g as f64 / n as f64;
        let lhs = (2.0 * a * th.cos()).exp();
        let (mut re, mut im) = (0.0, 0.0);
        for (j, v) in ph.iter().enumerate() {
            re += v * (th * j as f64).cos();
            im += v * (th * j as f64).sin();
        }
        m = m.min(-(lhs - re).abs()).min(-im.abs());
    }
    out.push(outcome("character_expansion", n, p(), true, m));

    out.push(outcome("reflection_symmetry", n, p(), true, min_margin((1..nn).map(|j| -(ph[nn - j] - ph[j]).abs()))));

    // Strict inequality: margin must be positive, not just within slack.
    let strict = min_margin((1..nn).map(|j| ph[0] - ph[j]));
    out.push(LemmaOutcome { name: "strict_maximum_at_zero", n, params: p(), applicable: true, holds: a == 0.0 || strict > 0.0, margin: strict });

    let sandwich_ok = a > 0.0 && a <= 1.0;
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    for j in 0..=half {
        let lead = fact_power(a, j);
        let mult = if 2 * j == n { 2.0 } else { 1.0 };
        let gap = ph[j as usize] - mult * lead;
        lower = lower.min(gap);
        upper = upper.min(lead * eps - gap);
    }
    out.push(LemmaOutcome {
        name: "leading_term_sandwich",
        n,
        params: p(),
        applicable: sandwich_ok,
        holds: !sandwich_ok || (lower > 0.0 && upper >= -SLACK),
        margin: lower.min(upper),
    });

    let small = a * (1.0 + eps) <= 1.0;
    out.push(outcome("monotone_on_half_range", n, p(), small, min_margin((1..half as usize).map(|j| ph[j] - ph[j + 1]))));
    out.push(outcome(
        "discrete_convexity",
        n,
        p(),
        small,
        min_margin((0..nn).map(|j| ph[(j + 1) % nn] * ph[0] + ph[(j + nn - 1) % nn] * ph[0] - 2.0 * ph[j] * ph[1])),
    ));

    let eh = crate::eta_hat(a, n);
    out.push(outcome("eta_hat_equals_xi_and_phi1", n, p(), true, -(eh - t.xi()).abs().max((eh - t.phi[1]).abs())));
    out.push(outcome("eta_equals_eta_hat", n, p(), n <= 3, -(t.eta() - eh).abs()));
    let witnesses = eta_gap_witnesses(a, n);
    let gap = eh - t.eta();
    out.push(LemmaOutcome {
        name: "eta_below_eta_hat",
        n,
        params: p(),
        applicable: !witnesses.is_empty(),
        holds: witnesses.is_empty() || gap > 0.0,
        margin: gap,
    });
    out
}

/// Checks that involve both couplings.
pub fn check_pair(beta: f64, kappa: f64, n: u32) -> Vec<LemmaOutcome> {
    let tb = PhiTable::new(beta, n);
    let tk = PhiTable::new(kappa, n);
    let z = tb.zeta();
    let x = tk.xi();
    let al = alpha(beta, kappa, n);
    // The bracket is proved under kappa (1 + eps) <= 1; the stronger standing
    // assumption kappa (2 + eps) <= 1 implies it.
    let applicable = kappa * (1.0 + epsilon(kappa, n)) <= 1.0 && z * x * x < 1.0;
    let upper = 1.0 / (1.0 - z * x * x);
    let lam = lambda_weights(beta, kappa, n);
    let one_minus = 1.0 - lam[0];
    vec![
        outcome("alpha_bracket", n, vec![beta, kappa], applicable, (al - 1.0).min(upper - al)),
        outcome("lambda_zero_mass", n, vec![beta, kappa], true, one_minus.min(z * x.powi(4) - one_minus)),
    ]
}

/// Default coupling grid `0.01, 0.02, ..., 1.00`.
pub fn default_grid() -> Vec<f64> {
    (1..=100).map(|i| i as f64 / 100.0).collect()
}

/// Runs [`check_single`] on every `(a, n)` and [`check_pair`] on every
/// `(beta, kappa, n)` drawn from `grid`.
pub fn check_grid(grid: &[f64], orders: std::ops::RangeInclusive<u32>) -> Vec<LemmaOutcome> {
    let mut out = Vec::new();
    for n in orders {
        for &a in grid {
            out.extend(check_single(a, n));
        }
        for &b in grid {
            for &k in grid {
                out.extend(check_pair(b, k, n));
            }
        }
    }
    out
}

/// Per-name tally `(name, applicable points, failures)` in first-seen order.
pub fn summarize(outcomes: &[LemmaOutcome]) -> Vec<(&'static str, usize, usize)> {
    let mut rows: Vec<(&'static str, usize, usize)> = Vec::new();
    for o in outcomes {
        let idx = match rows.iter().position(|r| r.0 == o.name) {
            Some(i) => i,
            None => {
                rows.push((o.name, 0, 0));
                rows.len() - 1
            }
        };
        if o.applicable {
            rows[idx].1 += 1;
        }
        if !o.holds {
            rows[idx].2 += 1;
        }
    }
    rows
}
