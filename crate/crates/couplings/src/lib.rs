//! Special functions of the Z_n lattice Higgs model: the series `psi`, the
//! character coefficients `phi_hat`/`phi`, the derived constants
//! `eta`, `eta_hat`, `zeta`, `xi`, `epsilon`, `alpha`, and the checks of the
//! two standing assumptions on `(beta, kappa)`.
//!
//! Everything is double precision. Group elements are residues `0..n`.

pub mod lemmas;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CouplingError {
    #[error("group order must be at least 2, got {0}")]
    GroupOrder(u32),
    #[error("residue {j} is not in 0..{n}")]
    Residue { j: i64, n: u32 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, CouplingError>;

/// Order `n >= 2` of the structure group Z_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupOrder(u32);

impl GroupOrder {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(CouplingError::GroupOrder(n));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Model parameters: dimension `m`, group order `n`, couplings `beta` and
/// `kappa`, box half-side `half_side` (the box is `[-N, N]^m`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelParams {
    pub m: usize,
    pub n: u32,
    pub beta: f64,
    pub kappa: f64,
    pub half_side: i64,
}

impl ModelParams {
    pub fn new(m: usize, n: u32, beta: f64, kappa: f64, half_side: i64) -> Result<Self> {
        GroupOrder::new(n)?;
        if m < 2 {
            return Err(CouplingError::Parameter(format!("m must be at least 2, got {m}")));
        }
        if half_side < 1 {
            return Err(CouplingError::Parameter(format!("N must be at least 1, got {half_side}")));
        }
        for (name, v) in [("beta", beta), ("kappa", kappa)] {
            if !v.is_finite() || v < 0.0 {
                return Err(CouplingError::Parameter(format!("{name} must be finite and nonnegative, got {v}")));
            }
        }
        Ok(Self { m, n, beta, kappa, half_side })
    }
}

const SERIES_REL_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 500;

/// `psi_a(j) = sum_k a^(j+kn) / (j+kn)!`.
pub fn psi(a: f64, j: i64, n: u32) -> Result<f64> {
    GroupOrder::new(n)?;
    if j < 0 || j >= n as i64 {
        return Err(CouplingError::Residue { j, n });
    }
    Ok(psi_unchecked(a, j as u32, n))
}

fn psi_unchecked(a: f64, j: u32, n: u32) -> f64 {
    if a == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    // first term a^j / j!
    let mut term = 1.0;
    for i in 1..=j {
        term *= a / i as f64;
    }
    let mut sum = term;
    let mut k = j;
    for _ in 1..SERIES_MAX_TERMS {
        for _ in 0..n {
            k += 1;
            term *= a / k as f64;
        }
        if term < SERIES_REL_TOL * sum {
            break;
        }
        sum += term;
    }
    sum
}

/// `psi_a(0..n)`.
pub fn psi_table(a: f64, n: u32) -> Vec<f64> {
    (0..n).map(|j| psi_unchecked(a, j, n)).collect()
}

/// Reduces any integer to its residue in `0..n`.
pub fn residue(j: i64, n: u32) -> usize {
    j.rem_euclid(n as i64) as usize
}

/// `phi_hat_a(j) = sum_{k' - k = j mod n} psi_a(k) psi_a(k')`, for all `j`.
pub fn phi_hat(a: f64, j: i64, n: u32) -> f64 {
    let psi = psi_table(a, n);
    phi_hat_from_psi(&psi, residue(j, n))
}

fn phi_hat_from_psi(psi: &[f64], j: usize) -> f64 {
    let n = psi.len();
    (0..n).map(|k| psi[k] * psi[(k + j) % n]).sum()
}

/// `phi_a(j) = phi_hat_a(j) / phi_hat_a(0)`.
pub fn phi(a: f64, j: i64, n: u32) -> f64 {
    PhiTable::new(a, n).phi(j)
}

/// `phi_hat_a` and `phi_a` on all residues, for repeated lookups.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiTable {
    pub a: f64,
    pub n: u32,
    pub phi_hat: Vec<f64>,
    pub phi: Vec<f64>,
}

impl PhiTable {
    pub fn new(a: f64, n: u32) -> Self {
        assert!(n >= 2, "group order must be at least 2");
        let psi = psi_table(a, n);
        let phi_hat: Vec<f64> = (0..n as usize).map(|j| phi_hat_from_psi(&psi, j)).collect();
        let phi = phi_hat.iter().map(|v| v / phi_hat[0]).collect();
        Self { a, n, phi_hat, phi }
    }

    pub fn phi(&self, j: i64) -> f64 {
        self.phi[residue(j, self.n)]
    }

    pub fn phi_hat(&self, j: i64) -> f64 {
        self.phi_hat[residue(j, self.n)]
    }

    /// `eta_a = min_j phi(j+1)/phi(j)`.
    pub fn eta(&self) -> f64 {
        (0..self.n as i64).map(|j| self.phi(j + 1) / self.phi(j)).fold(f64::INFINITY, f64::min)
    }

    /// `zeta_a = sum_{j != 0} phi(j)`.
    pub fn zeta(&self) -> f64 {
        self.phi[1..].iter().sum()
    }

    /// `xi_a = max_{j != 0} phi(j)`, found by scanning.
    pub fn xi(&self) -> f64 {
        self.phi[1..].iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn eta(a: f64, n: u32) -> f64 {
    PhiTable::new(a, n).eta()
}

/// `eta_hat_a = sum_g rho(g) e^{2a Re rho(g)} / sum_g e^{2a Re rho(g)}` with
/// `rho(g) = exp(2 pi i g / n)`, evaluated from the character sum.
pub fn eta_hat(a: f64, n: u32) -> f64 {
    let mut num_re = 0.0;
    let mut num_im = 0.0;
    let mut den = 0.0;
    for g in 0..n {
        let t = 2.0 * std::f64::consts::PI * g as f64 / n as f64;
        let w = (2.0 * a * t.cos()).exp();
        num_re += t.cos() * w;
        num_im += t.sin() * w;
        den += w;
    }
    debug_assert!(num_im.abs() <= 1e-12 * den.max(1.0));
    num_re / den
}

pub fn zeta(a: f64, n: u32) -> f64 {
    PhiTable::new(a, n).zeta()
}

pub fn xi(a: f64, n: u32) -> f64 {
    PhiTable::new(a, n).xi()
}

/// `epsilon_a = (1 + 2a e^a)(1 + a^n e^a / n!)^2 - 1`.
pub fn epsilon(a: f64, n: u32) -> f64 {
    let mut an_over_fact = 1.0;
    for i in 1..=n {
        an_over_fact *= a / i as f64;
    }
    (1.0 + 2.0 * a * a.exp()) * (1.0 + an_over_fact * a.exp()).powi(2) - 1.0
}

/// `r_kappa(j) = phi_kappa(j+1) / (phi_kappa(j) phi_kappa(1))`.
pub fn r_kappa(kappa: f64, j: i64, n: u32) -> f64 {
    let t = PhiTable::new(kappa, n);
    t.phi(j + 1) / (t.phi(j) * t.phi(1))
}

/// Normalized weights `lambda_j` proportional to `phi_beta(j) phi_kappa(j)^4`.
pub fn lambda_weights(beta: f64, kappa: f64, n: u32) -> Vec<f64> {
    let tb = PhiTable::new(beta, n);
    let tk = PhiTable::new(kappa, n);
    let raw: Vec<f64> = (0..n as usize).map(|j| tb.phi[j] * tk.phi[j].powi(4)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// `alpha(beta, kappa) = sum_j phi_beta(j) phi_kappa(j)^4 r_kappa(j) / sum_j phi_beta(j) phi_kappa(j)^4`.
pub fn alpha(beta: f64, kappa: f64, n: u32) -> f64 {
    let tb = PhiTable::new(beta, n);
    let tk = PhiTable::new(kappa, n);
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..n as i64 {
        let w = tb.phi(j) * tk.phi(j).powi(4);
        num += w * tk.phi(j + 1) / (tk.phi(j) * tk.phi(1));
        den += w;
    }
    num / den
}

/// Closed form of `alpha` for n = 2.
pub fn alpha_z2(beta: f64, kappa: f64) -> f64 {
    let tb = (2.0 * beta).tanh();
    let tk = (2.0 * kappa).tanh();
    (1.0 + tb * tk * tk) / (1.0 + tb * tk.powi(4))
}

/// Outcome of the two standing assumptions for a parameter set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeReport {
    /// `(16m)^2 zeta_beta < xi_kappa`
    pub small_beta: bool,
    /// `xi_kappa - (16m)^2 zeta_beta`
    pub small_beta_slack: f64,
    /// `kappa (2 + epsilon_kappa) <= 1`
    pub small_kappa: bool,
    /// `1 - kappa (2 + epsilon_kappa)`
    pub small_kappa_slack: f64,
    /// For n = 2: `(16m)^2 tanh(2 beta) < tanh(2 kappa)`.
    pub z2_small_beta: Option<bool>,
    /// For n = 2: `kappa + kappa (1 + 2 kappa e^kappa)(1 + kappa^2 e^kappa / 2)^2 <= 1`.
    pub z2_small_kappa: Option<bool>,
}

impl RegimeReport {
    pub fn both_hold(&self) -> bool {
        self.small_beta && self.small_kappa
    }
}

pub fn assumption_check(p: &ModelParams) -> RegimeReport {
    let a = (16.0 * p.m as f64).powi(2);
    let z = zeta(p.beta, p.n);
    let x = xi(p.kappa, p.n);
    let k = p.kappa;
    let lhs3 = k * (2.0 + epsilon(k, p.n));
    let (z2_beta, z2_kappa) = if p.n == 2 {
        let ek = k.exp();
        (Some(a * (2.0 * p.beta).tanh() < (2.0 * k).tanh()), Some(k + k * (1.0 + 2.0 * k * ek) * (1.0 + k * k * ek / 2.0).powi(2) <= 1.0))
    } else {
        (None, None)
    };
    RegimeReport {
        small_beta: a * z < x,
        small_beta_slack: x - a * z,
        small_kappa: lhs3 <= 1.0,
        small_kappa_slack: 1.0 - lhs3,
        z2_small_beta: z2_beta,
        z2_small_kappa: z2_kappa,
    }
}

/// The `j in 1..floor(n/2)-1` for which
/// `(1 + eps)(1 + 1(j+1 = n/2) + eps) <= j + 1`, i.e. the witnesses of the
/// sufficient condition for `eta < eta_hat` (with `a (1 + eps) <= 1`, n >= 4).
pub fn eta_gap_witnesses(a: f64, n: u32) -> Vec<u32> {
    let e = epsilon(a, n);
    if n < 4 || a * (1.0 + e) > 1.0 {
        return Vec::new();
    }
    (1..n / 2)
        .filter(|&j| {
            let half = if 2 * (j + 1) == n { 1.0 } else { 0.0 };
            (1.0 + e) * (1.0 + half + e) <= (j + 1) as f64
        })
        .collect()
}
