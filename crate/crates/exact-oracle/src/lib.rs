//! Exact expectations on tiny boxes by exhaustive enumeration: the gauge and
//! Higgs field measure, its unitary-gauge reduction, and the measure on
//! Z_n-valued 2-forms with weight given by the activity.

mod export;
mod sum;

use std::f64::consts::PI;

use couplings::{ModelParams, PhiTable};
use lattice_dec::{FormZn, IndexedComplex, LatticeBox, LatticeError, LatticePath};
use num_complex::Complex64;
use thiserror::Error;

pub use export::{write_csv, ResultRow};
pub use sum::{Kahan, STATE_GUARD};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{n}^{digits} states exceed the enumeration guard of {guard}")]
    StateGuard { digits: usize, n: u32, guard: u64 },
    #[error("imaginary part {im:e} of the numerator is not negligible against {re:e}")]
    ImaginaryPart { re: f64, im: f64 },
    #[error("configuration has {got} entries, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Couplings(#[from] couplings::CouplingError),
    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// One Z_n value per positive edge, in the complex's edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeConfig(pub Vec<u32>);

/// One Z_n value per vertex, in the complex's vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsConfig(pub Vec<u32>);

/// Result of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Expectation {
    pub value: f64,
    /// Imaginary part of the normalized numerator (zero up to rounding for
    /// real observables and real measures).
    pub imag: f64,
    pub states: u64,
}

/// Tolerance on the imaginary part, relative to the numerator.
const IMAG_TOL: f64 = 1e-9;

/// A box with couplings and precomputed tables.
#[derive(Clone, Debug)]
pub struct ExactModel {
    pub params: ModelParams,
    pub complex: IndexedComplex,
    rho: Vec<Complex64>,
    /// `exp(2 beta (cos(2 pi j / n) - 1))` and the same with kappa.
    plaquette_factor: Vec<f64>,
    edge_factor: Vec<f64>,
    phi_beta: PhiTable,
    phi_kappa: PhiTable,
}

impl ExactModel {
    pub fn new(params: ModelParams) -> Result<Self> {
        let lbox = LatticeBox::centered(params.m, params.half_side)?;
        let n = params.n;
        let cos: Vec<f64> = (0..n).map(|j| (2.0 * PI * j as f64 / n as f64).cos()).collect();
        Ok(Self {
            params,
            complex: IndexedComplex::new(&lbox),
            rho: (0..n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)).collect(),
            plaquette_factor: cos.iter().map(|c| (2.0 * params.beta * (c - 1.0)).exp()).collect(),
            edge_factor: cos.iter().map(|c| (2.0 * params.kappa * (c - 1.0)).exp()).collect(),
            phi_beta: PhiTable::new(params.beta, n),
            phi_kappa: PhiTable::new(params.kappa, n),
        })
    }

    pub fn lattice_box(&self) -> &LatticeBox {
        self.complex.lattice_box()
    }

    fn n(&self) -> u32 {
        self.params.n
    }

    fn rho(&self, j: i64) -> Complex64 {
        self.rho[j.rem_euclid(self.n() as i64) as usize]
    }

    fn plaquette_curl(&self, p: usize, sigma: &[u32]) -> usize {
        let s: i64 = self.complex.plaquette_edges[p].iter().map(|&(e, q)| q as i64 * sigma[e] as i64).sum();
        s.rem_euclid(self.n() as i64) as usize
    }

    fn covariant(&self, e: usize, sigma: &[u32], higgs: &[u32]) -> usize {
        let (a, b) = self.complex.edge_ends[e];
        let s = sigma[e] as i64 - higgs[b] as i64 + higgs[a] as i64;
        s.rem_euclid(self.n() as i64) as usize
    }

    fn check_lengths(&self, sigma: &GaugeConfig, higgs: &HiggsConfig) -> Result<()> {
        for (got, expected) in [(sigma.0.len(), self.complex.edges.len()), (higgs.0.len(), self.complex.vertices.len())] {
            if got != expected {
                return Err(OracleError::Length { got, expected });
            }
        }
        Ok(())
    }

    /// `S = beta S^W + kappa S^H`, summed over both orientations of every
    /// plaquette and edge. Returned as a complex number so callers can check
    /// that the imaginary part vanishes.
    pub fn action_complex(&self, sigma: &GaugeConfig, higgs: &HiggsConfig) -> Result<Complex64> {
        self.check_lengths(sigma, higgs)?;
        let mut wilson = Complex64::new(0.0, 0.0);
        for p in 0..self.complex.plaquettes.len() {
            let c = self.plaquette_curl(p, &sigma.0) as i64;
            wilson -= self.rho(c) + self.rho(-c);
        }
        let mut higgs_part = Complex64::new(0.0, 0.0);
        for e in 0..self.complex.edges.len() {
            let c = self.covariant(e, &sigma.0, &higgs.0) as i64;
            higgs_part -= self.rho(c) + self.rho(-c);
        }
        Ok(wilson * self.params.beta + higgs_part * self.params.kappa)
    }

    pub fn action(&self, sigma: &GaugeConfig, higgs: &HiggsConfig) -> Result<f64> {
        Ok(self.action_complex(sigma, higgs)?.re)
    }

    /// `e^{-S} / e^{-S(0,0)}` as a product of table lookups.
    fn weight(&self, sigma: &[u32], higgs: Option<&[u32]>) -> f64 {
        let mut w = 1.0;
        for p in 0..self.complex.plaquettes.len() {
            w *= self.plaquette_factor[self.plaquette_curl(p, sigma)];
        }
        for e in 0..self.complex.edges.len() {
            let c = match higgs {
                Some(phi) => self.covariant(e, sigma, phi),
                None => sigma[e] as usize,
            };
            w *= self.edge_factor[c];
        }
        w
    }

    /// `sigma(e) -> -eta(x) + sigma(e) + eta(y)` for `e` from `x` to `y`, and
    /// `phi(x) -> phi(x) + eta(x)`.
    pub fn gauge_transform(&self, sigma: &GaugeConfig, higgs: &HiggsConfig, eta: &HiggsConfig) -> Result<(GaugeConfig, HiggsConfig)> {
        self.check_lengths(sigma, higgs)?;
        self.check_lengths(sigma, eta)?;
        let n = self.n() as i64;
        let s = (0..sigma.0.len())
            .map(|e| {
                let (a, b) = self.complex.edge_ends[e];
                (sigma.0[e] as i64 - eta.0[a] as i64 + eta.0[b] as i64).rem_euclid(n) as u32
            })
            .collect();
        let h = higgs.0.iter().zip(&eta.0).map(|(&x, &y)| (x + y) % self.n()).collect();
        Ok((GaugeConfig(s), HiggsConfig(h)))
    }

    /// Dense path coefficients on the edges of this box.
    pub fn path_coefficients(&self, gamma: &LatticePath) -> Result<Vec<i8>> {
        Ok(self.complex.dense_path(gamma)?)
    }

    /// `L_gamma(sigma, phi) = rho(sigma(gamma) - phi(boundary gamma))`.
    pub fn wilson_line(&self, gamma: &[i8], sigma: &[u32], higgs: Option<&[u32]>) -> Complex64 {
        let mut s: i64 = 0;
        for (e, &q) in gamma.iter().enumerate() {
            if q != 0 {
                let c = match higgs {
                    Some(phi) => self.covariant(e, sigma, phi),
                    None => sigma[e] as usize,
                };
                s += q as i64 * c as i64;
            }
        }
        self.rho(s)
    }

    fn finish(&self, sums: sum::Sums, states: u64, real_check: bool) -> Result<Expectation> {
        let z = sums.weight.value();
        let re = sums.re.value();
        let im = sums.im.value();
        if real_check && im.abs() > IMAG_TOL * re.abs().max(z * 1e-3) {
            return Err(OracleError::ImaginaryPart { re, im });
        }
        Ok(Expectation { value: re / z, imag: im / z, states })
    }

    /// Expectation under the measure on `(sigma, phi)`. The observable sees
    /// dense edge and vertex values.
    pub fn expect_full<F>(&self, obs: F) -> Result<Expectation>
    where
        F: Fn(&[u32], &[u32]) -> Complex64 + Sync,
    {
        let ne = self.complex.edges.len();
        let digits = ne + self.complex.vertices.len();
        let (sums, states) = sum::enumerate(digits, self.n(), |x| {
            let (sigma, higgs) = x.split_at(ne);
            let w = self.weight(sigma, Some(higgs));
            (w, obs(sigma, higgs) * w)
        })?;
        self.finish(sums, states, true)
    }

    /// Expectation under the unitary-gauge measure on `sigma` alone.
    pub fn expect_unitary<F>(&self, obs: F) -> Result<Expectation>
    where
        F: Fn(&[u32]) -> Complex64 + Sync,
    {
        let (sums, states) = sum::enumerate(self.complex.edges.len(), self.n(), |sigma| {
            let w = self.weight(sigma, None);
            (w, obs(sigma) * w)
        })?;
        self.finish(sums, states, true)
    }

    /// Expectation under the 2-form measure with weight [`ExactModel::activity_dense`].
    /// The observable receives dense plaquette values and the matching
    /// `delta omega` on edges.
    pub fn expect_form<F>(&self, obs: F) -> Result<Expectation>
    where
        F: Fn(&[u32], &[u32]) -> f64 + Sync,
    {
        // zero-activity forms carry no mass; the observable may be undefined there
        self.enumerate_forms(|omega, d, w| if w == 0.0 { 0.0 } else { obs(omega, d) * w })
    }

    /// Like [`ExactModel::expect_form`], but `integrand(omega, delta, activity)`
    /// returns the weighted numerator term itself.
    pub fn enumerate_forms<F>(&self, integrand: F) -> Result<Expectation>
    where
        F: Fn(&[u32], &[u32], f64) -> f64 + Sync,
    {
        let n = self.n();
        let (sums, states) = sum::enumerate(self.complex.plaquettes.len(), n, |omega| {
            let d = self.complex.delta_dense(omega, n);
            let w = self.activity_dense(omega, &d);
            (w, Complex64::new(integrand(omega, &d, w), 0.0))
        })?;
        self.finish(sums, states, false)
    }

    /// `E[L_gamma]` under the full measure (real part).
    pub fn wilson_full(&self, gamma: &LatticePath) -> Result<Expectation> {
        let g = self.path_coefficients(gamma)?;
        self.expect_full(|s, h| self.wilson_line(&g, s, Some(h)))
    }

    /// `E[L_gamma(sigma, 0)]` under the unitary-gauge measure (real part).
    pub fn wilson_unitary(&self, gamma: &LatticePath) -> Result<Expectation> {
        let g = self.path_coefficients(gamma)?;
        self.expect_unitary(|s| self.wilson_line(&g, s, None))
    }

    /// `E_phi[L_hat_gamma]` under the 2-form measure. The numerator term
    /// `phi(omega) L_hat_gamma(omega)` is evaluated as a single product, which
    /// stays defined at `kappa = 0` where `L_hat` alone is `0/0`.
    pub fn wilson_hat_form(&self, gamma: &LatticePath) -> Result<Expectation> {
        let g = self.path_coefficients(gamma)?;
        self.enumerate_forms(|omega, d, _| self.tilted_activity_dense(&g, omega, d))
    }

    /// `phi(omega) L_hat_gamma(omega)` as a product over cells.
    pub fn tilted_activity_dense(&self, gamma: &[i8], omega: &[u32], delta: &[u32]) -> f64 {
        let mut a = 1.0;
        for &v in omega {
            if v != 0 {
                a *= self.phi_beta.phi[v as usize];
            }
        }
        for (e, &v) in delta.iter().enumerate() {
            let shifted = v as i64 + gamma[e] as i64;
            if shifted.rem_euclid(self.n() as i64) != 0 {
                a *= self.phi_kappa.phi(shifted);
            }
        }
        a
    }

    /// Activity from dense plaquette values and their coderivative.
    pub fn activity_dense(&self, omega: &[u32], delta: &[u32]) -> f64 {
        let mut a = 1.0;
        for &v in omega {
            if v != 0 {
                a *= self.phi_beta.phi[v as usize];
            }
        }
        for &v in delta {
            if v != 0 {
                a *= self.phi_kappa.phi[v as usize];
            }
        }
        a
    }

    /// `L_hat_gamma` from dense path coefficients and `delta omega`.
    pub fn wilson_hat_dense(&self, gamma: &[i8], delta: &[u32]) -> f64 {
        let mut r = 1.0;
        for (e, &q) in gamma.iter().enumerate() {
            if q != 0 {
                let d = delta[e] as i64;
                r *= self.phi_kappa.phi(d + q as i64) / self.phi_kappa.phi(d);
            }
        }
        r
    }

    pub fn activity(&self, form: &FormZn) -> Result<f64> {
        activity(form, self.lattice_box(), self.params.beta, self.params.kappa)
    }

    pub fn wilson_hat(&self, form: &FormZn, gamma: &LatticePath) -> Result<f64> {
        wilson_hat(form, gamma, self.lattice_box(), self.params.kappa)
    }
}

/// `phi(omega) = prod_e phi_kappa(delta omega(e)) prod_p phi_beta(omega(p))`
/// over positive cells of the box.
pub fn activity(form: &FormZn, lbox: &LatticeBox, beta: f64, kappa: f64) -> Result<f64> {
    let n = form.n();
    let tb = PhiTable::new(beta, n);
    let tk = PhiTable::new(kappa, n);
    let d = form.delta(lbox)?;
    let mut a = 1.0;
    for (_, v) in form.iter() {
        a *= tb.phi[v as usize];
    }
    for (_, v) in d.iter() {
        a *= tk.phi[v as usize];
    }
    Ok(a)
}

/// `L_hat_gamma(omega) = prod_{e in gamma} phi_kappa(delta omega(e) + gamma[e]) / phi_kappa(delta omega(e))`.
pub fn wilson_hat(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox, kappa: f64) -> Result<f64> {
    let tk = PhiTable::new(kappa, form.n());
    let d = form.delta(lbox)?;
    let mut r = 1.0;
    for (e, q) in gamma.chain().iter() {
        let v = d.get(e) as i64;
        r *= tk.phi(v + q) / tk.phi(v);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: u32, beta: f64, kappa: f64) -> ExactModel {
        ExactModel::new(ModelParams::new(2, n, beta, kappa, 1).unwrap()).unwrap()
    }

    #[test]
    fn trivial_configuration_action() {
        let m = model(3, 0.7, 0.4);
        let s = GaugeConfig(vec![0; m.complex.edges.len()]);
        let h = HiggsConfig(vec![0; m.complex.vertices.len()]);
        let a = m.action_complex(&s, &h).unwrap();
        assert!((a.re - (-8.0 * 0.7 - 24.0 * 0.4)).abs() < 1e-12);
        assert!(a.im.abs() < 1e-12);
    }

    #[test]
    fn weight_matches_action() {
        let m = model(3, 0.7, 0.4);
        let s0 = GaugeConfig(vec![0; 12]);
        let h0 = HiggsConfig(vec![0; 9]);
        let s = GaugeConfig((0..12).map(|i| (i * 7 % 3) as u32).collect());
        let h = HiggsConfig((0..9).map(|i| (i * 5 % 3) as u32).collect());
        let w = m.weight(&s.0, Some(&h.0));
        let diff = m.action(&s0, &h0).unwrap() - m.action(&s, &h).unwrap();
        assert!((w - diff.exp()).abs() < 1e-12 * w);
    }

    #[test]
    fn constant_observable_has_unit_expectation() {
        let m = model(2, 0.3, 0.2);
        let one = Complex64::new(1.0, 0.0);
        assert!((m.expect_unitary(|_| one).unwrap().value - 1.0).abs() < 1e-14);
        assert!((m.expect_form(|_, _| 1.0).unwrap().value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_form_values() {
        let m = model(3, 0.3, 0.2);
        let gamma = LatticePath::segment(vec![-1, 0], 0, 2).unwrap();
        let w = FormZn::zero(2, 3).unwrap();
        assert_eq!(m.activity(&w).unwrap(), 1.0);
        let t = PhiTable::new(0.2, 3);
        assert!((m.wilson_hat(&w, &gamma).unwrap() - t.phi[1].powi(2)).abs() < 1e-15);
    }

    #[test]
    fn single_plaquette_activity_z2() {
        let m = model(2, 0.3, 0.2);
        let mut w = FormZn::zero(2, 2).unwrap();
        w.set(&lattice_dec::OrientedCell::plaquette(vec![0, 0], 0, 1), 1);
        let expected = 0.6f64.tanh() * 0.4f64.tanh().powi(4);
        assert!((m.activity(&w).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let m = model(2, 0.3, 0.2);
        assert!(m.action(&GaugeConfig(vec![0; 3]), &HiggsConfig(vec![0; 9])).is_err());
    }
}
