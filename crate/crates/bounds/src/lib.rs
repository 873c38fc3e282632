//! Explicit constants of the small-beta expansion of Wilson-line
//! expectations, the perimeter lower bound, the central prediction
//! `xi^|gamma| alpha^|P_gamma|` with its error radius, and truncated
//! evaluations of the three multiple sums whose closed-form bounds feed the
//! constants.

mod appendix;

use couplings::{alpha, assumption_check, eta, xi, zeta, ModelParams, RegimeReport};
use lattice_dec::{corner_plaquettes, p_gamma, LatticeBox, LatticePath};
use serde::Serialize;
use thiserror::Error;

pub use appendix::{appendix_sums, AppendixSum, MIN_TRUNCATION};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("denominator {name} = {value} is not positive")]
    Divergent { name: &'static str, value: f64 },
    #[error("side lengths ({l1}, {l2}) are below 7; no bound is asserted there")]
    ShortSides { l1: u32, l2: u32 },
    #[error("path needs a rectangle descriptor")]
    MissingRectangle,
    #[error("truncation {0} is below the minimum")]
    Truncation(usize),
    #[error(transparent)]
    Lattice(#[from] lattice_dec::LatticeError),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// Path statistics entering the constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaStats {
    /// `|gamma|`
    pub len: usize,
    /// `|P_gamma|`
    pub p_gamma: usize,
    /// `|P_{gamma,c}|`
    pub p_gamma_c: usize,
    pub l1: u32,
    pub l2: u32,
}

impl GammaStats {
    /// Counts the bordering and corner plaquettes of a rectangular path in a box.
    pub fn from_path(gamma: &LatticePath, lbox: &LatticeBox) -> Result<Self> {
        let rect = gamma.rect().ok_or(BoundsError::MissingRectangle)?;
        let (l1, l2) = rect.side_lengths();
        Ok(Self { len: gamma.len(), p_gamma: p_gamma(gamma, lbox)?.len(), p_gamma_c: corner_plaquettes(gamma).len(), l1, l2 })
    }

    /// Closed-form counts for an `l1 x l2` rectangle loop in `Z^m` away from
    /// the boundary. A bordering plaquette touching `h` edges of the loop is
    /// counted once instead of `h` times, so `|P_gamma| = 2(m-1)|gamma| - excess`
    /// with excess 4 (four corners), `l2 + 2` for a `1 x l2` strip, and 3 for
    /// the unit square.
    pub fn rectangle_loop(m: usize, l1: u32, l2: u32) -> Self {
        let (l1, l2) = (l1.min(l2), l1.max(l2));
        let len = 2 * (l1 + l2) as usize;
        let (p_gamma_c, excess) = match (l1, l2) {
            (1, 1) => (1, 3),
            (1, _) => (l2 as usize, l2 as usize + 2),
            _ => (4, 4),
        };
        Self { len, p_gamma: 2 * (m - 1) * len - excess, p_gamma_c, l1, l2 }
    }
}

/// All constants for one parameter point and path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub params: ModelParams,
    pub gamma: GammaStats,
    pub zeta_beta: f64,
    pub xi_kappa: f64,
    pub eta_kappa: f64,
    pub alpha: f64,
    /// `eta_kappa^|gamma|`
    pub perimeter_bound: f64,
    /// `xi_kappa^|gamma| alpha^|P_gamma|`
    pub prediction: f64,
    pub c1_prime: f64,
    pub c1_double_prime: f64,
    pub c1_triple_prime: f64,
    pub c1_quadruple_prime: f64,
    pub c1: f64,
    pub c2_i: f64,
    pub c2_ii: f64,
    pub c2_iii: f64,
    pub c2: f64,
    pub c0: f64,
    /// `c0 * prediction * zeta_beta`
    pub radius: f64,
    pub assumptions: RegimeReport,
    /// `1 <= alpha <= 1 / (1 - zeta_beta xi_kappa^2)`
    pub alpha_in_bracket: bool,
    /// Assumptions hold and both sides are at least 7.
    pub rigorous: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(BoundsError::Divergent { name, value })
    }
}

/// `(1 + x)^k` via `exp(k log1p(x))`.
fn pow1p(x: f64, k: usize) -> f64 {
    (k as f64 * x.ln_1p()).exp()
}

/// `(1 + x)^k - 1`, accurate for small `x`.
fn pow1p_minus_one(x: f64, k: usize) -> f64 {
    (k as f64 * x.ln_1p()).exp_m1()
}

/// `eta_kappa^|gamma|`; for n = 2 this is `tanh(2 kappa)^|gamma|`.
pub fn perimeter_bound(params: &ModelParams, len: usize) -> f64 {
    let e = eta(params.kappa, params.n);
    if e == 0.0 {
        return if len == 0 { 1.0 } else { 0.0 };
    }
    (len as f64 * e.ln()).exp()
}

/// Evaluates every constant. Fails only when a denominator is not positive,
/// which happens exactly when `(16m)^2 zeta_beta < xi_kappa` fails or when a
/// derived denominator does; the other assumption is reported, not enforced.
pub fn constants(params: &ModelParams, g: &GammaStats) -> Result<BoundReport> {
    let m = params.m as f64;
    let a = (16.0 * m).powi(2);
    let b = (8.0 * m).powi(2);
    let z = zeta(params.beta, params.n);
    let x = xi(params.kappa, params.n);
    let al = alpha(params.beta, params.kappa, params.n);
    let len = g.len;
    let pc = g.p_gamma_c;
    let pg = g.p_gamma as f64;

    let one_minus_x = positive("1 - xi", 1.0 - x)?;
    let d_a_over_x = positive("1 - (16m)^2 zeta / xi", 1.0 - a * z / x)?;
    let d_a = positive("1 - (16m)^2 zeta", 1.0 - a * z)?;
    let d_b_over_x = positive("1 - (8m)^2 zeta / xi", 1.0 - b * z / x)?;
    let d_2i = positive("1 - (2m-1)|P_gamma| zeta^2 xi^8", 1.0 - (2.0 * m - 1.0) * pg * z * z * x.powi(8))?;
    let d_zx2 = positive("1 - zeta xi^2", 1.0 - z * x * x)?;

    let corner_factor = pow1p(a * z / (x * x), pc);
    let c1_prime = a * ((len as f64 * (a * z).ln_1p() + pc as f64 * (a * z / (x * x)).ln_1p()).exp_m1()) / (x * one_minus_x * d_a_over_x)
        + a * ((len as f64 * (a * a * z * z / x).ln_1p() + pc as f64 * (a * z / (x * x)).ln_1p()).exp_m1()) / (one_minus_x * d_a);
    let c1_double_prime = a * a / one_minus_x * (len as f64 * z + 2.0 * pc as f64 * z / (x * x)) * corner_factor * pow1p(a * z, len);
    let c1_triple_prime = if z == 0.0 { pc as f64 * a } else { pow1p_minus_one(a * z, pc) / z } * pow1p(a * z * x * x, len);
    let c1_quadruple_prime = a * a * z * len as f64 * pow1p(a * z * x * x, len) / one_minus_x * (x.powi(4) / d_a_over_x + a.powi(4) * z.powi(4) / d_a);
    let c1 = c1_prime + c1_double_prime + c1_triple_prime + c1_quadruple_prime;

    let c2_i = (2.0 * m - 1.0) * pg * z * x.powi(4) * ((1.0 / d_zx2 + x * x).powi(2) + x.powi(4)) / d_2i;
    let c2_ii = pc as f64 * b * x.powi(4) / d_b_over_x + pg * b * b * z * x.powi(4) / d_b_over_x;
    let c2_iii = z * x * x * pg * 3.0 * (2.0 * m - 3.0) * b * x.powi(4) / d_b_over_x + pc as f64 * x;
    let c2 = c2_i + c2_ii + c2_iii;

    let log_alpha = al.ln();
    let c0 = c1 * (-pg * log_alpha).exp() + c2;
    let prediction = (len as f64 * x.ln() + pg * log_alpha).exp();
    let assumptions = assumption_check(params);
    let alpha_in_bracket = al >= 1.0 - 1e-12 && al <= 1.0 / d_zx2 + 1e-12;
    let rigorous = assumptions.both_hold() && g.l1 >= 7 && g.l2 >= 7;
    Ok(BoundReport {
        params: *params,
        gamma: *g,
        zeta_beta: z,
        xi_kappa: x,
        eta_kappa: eta(params.kappa, params.n),
        alpha: al,
        perimeter_bound: perimeter_bound(params, len),
        prediction,
        c1_prime,
        c1_double_prime,
        c1_triple_prime,
        c1_quadruple_prime,
        c1,
        c2_i,
        c2_ii,
        c2_iii,
        c2,
        c0,
        radius: c0 * prediction * z,
        assumptions,
        alpha_in_bracket,
        rigorous,
    })
}

/// Central value and error radius; refuses rectangles with a side below 7.
pub fn prediction(params: &ModelParams, g: &GammaStats) -> Result<(f64, f64)> {
    if g.l1 < 7 || g.l2 < 7 {
        return Err(BoundsError::ShortSides { l1: g.l1, l2: g.l2 });
    }
    let r = constants(params, g)?;
    Ok((r.prediction, r.radius))
}
