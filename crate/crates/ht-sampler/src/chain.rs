use couplings::{ModelParams, PhiTable};
use lattice_dec::{FormZn, IndexedComplex, LatticeBox, LatticePath};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Result, SamplerError};

/// Markov chain state: plaquette values, cached `delta omega` on edges, the
/// number of completed sweeps, and the chain's generator.
#[derive(Clone, Debug)]
pub struct ChainState {
    pub values: Vec<u32>,
    pub delta: Vec<u32>,
    pub sweeps: u64,
    rng: ChaCha8Rng,
}

impl ChainState {
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Heat-bath dynamics for the 2-form measure on a box, optionally tilted by
/// the numerator of `L_hat_gamma`.
#[derive(Clone, Debug)]
pub struct HeatBath {
    pub params: ModelParams,
    pub complex: IndexedComplex,
    phi_beta: PhiTable,
    phi_kappa: PhiTable,
}

/// Generator for chain `stream` of a run seeded with `seed`.
pub fn chain_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl HeatBath {
    pub fn new(params: ModelParams) -> Result<Self> {
        let lbox = LatticeBox::centered(params.m, params.half_side)?;
        Ok(Self {
            params,
            complex: IndexedComplex::new(&lbox),
            phi_beta: PhiTable::new(params.beta, params.n),
            phi_kappa: PhiTable::new(params.kappa, params.n),
        })
    }

    pub fn lattice_box(&self) -> &LatticeBox {
        self.complex.lattice_box()
    }

    pub fn phi_kappa(&self) -> &PhiTable {
        &self.phi_kappa
    }

    /// Chain started from the zero form.
    pub fn zero_state(&self, seed: u64, stream: u64) -> ChainState {
        ChainState { values: vec![0; self.complex.plaquettes.len()], delta: vec![0; self.complex.edges.len()], sweeps: 0, rng: chain_rng(seed, stream) }
    }

    /// Chain started from `form`.
    pub fn state_from_form(&self, form: &FormZn, seed: u64, stream: u64) -> Result<ChainState> {
        if form.n() != self.params.n {
            return Err(SamplerError::Parameter(format!("form over Z_{} on a Z_{} chain", form.n(), self.params.n)));
        }
        let values = self.complex.dense_form(form)?;
        let delta = self.complex.delta_dense(&values, self.params.n);
        Ok(ChainState { values, delta, sweeps: 0, rng: chain_rng(seed, stream) })
    }

    pub fn form(&self, state: &ChainState) -> FormZn {
        self.complex.sparse_form(&state.values, self.params.n).expect("group order validated")
    }

    /// Dense path coefficients, used as the tilt.
    pub fn tilt(&self, gamma: &LatticePath) -> Result<Vec<i8>> {
        Ok(self.complex.dense_path(gamma)?)
    }

    /// Unnormalized conditional weights of the value at plaquette `p`:
    /// `phi_beta(g) prod_{e in boundary p} phi_kappa(delta_{-p}(e) + g boundary(p)[e] + tilt[e])`.
    fn raw_weights(&self, state: &ChainState, p: usize, tilt: Option<&[i8]>, out: &mut [f64]) {
        let n = self.params.n as i64;
        let cur = state.values[p] as i64;
        let edges = &self.complex.plaquette_edges[p];
        let mut base = [0i64; 4];
        for (slot, &(e, q)) in base.iter_mut().zip(edges) {
            let t = tilt.map_or(0, |t| t[e] as i64);
            *slot = state.delta[e] as i64 - q as i64 * cur + t;
        }
        for (g, w) in out.iter_mut().enumerate() {
            let g = g as i64;
            let mut x = self.phi_beta.phi[g as usize];
            if x != 0.0 {
                for (b, &(_, q)) in base.iter().zip(edges) {
                    x *= self.phi_kappa.phi[(b + g * q as i64).rem_euclid(n) as usize];
                }
            }
            *w = x;
        }
    }

    /// Normalized conditional law of the value at plaquette `p` given the rest.
    pub fn conditional_weights(&self, state: &ChainState, p: usize, tilt: Option<&[i8]>) -> Vec<f64> {
        let mut w = vec![0.0; self.params.n as usize];
        self.raw_weights(state, p, tilt, &mut w);
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            w.iter_mut().for_each(|x| *x /= total);
        }
        w
    }

    fn set_value(&self, state: &mut ChainState, p: usize, g: u32) {
        let n = self.params.n as i64;
        let old = state.values[p] as i64;
        if old == g as i64 {
            return;
        }
        for &(e, q) in &self.complex.plaquette_edges[p] {
            let d = state.delta[e] as i64 + q as i64 * (g as i64 - old);
            state.delta[e] = d.rem_euclid(n) as u32;
        }
        state.values[p] = g;
    }

    /// Heat-bath update of every plaquette in raster (canonical) order.
    pub fn sweep(&self, state: &mut ChainState, tilt: Option<&[i8]>) {
        let mut w = vec![0.0; self.params.n as usize];
        for p in 0..self.complex.plaquettes.len() {
            self.raw_weights(state, p, tilt, &mut w);
            let total: f64 = w.iter().sum();
            // no admissible value: the chain sits on a null configuration, leave it
            if total <= 0.0 {
                continue;
            }
            let mut u = state.rng.random::<f64>() * total;
            let mut pick = w.len() - 1;
            for (g, &x) in w.iter().enumerate() {
                if u < x {
                    pick = g;
                    break;
                }
                u -= x;
            }
            self.set_value(state, p, pick as u32);
        }
        state.sweeps += 1;
    }

    /// Whether the cached coderivative equals a fresh recomputation.
    pub fn cache_is_coherent(&self, state: &ChainState) -> bool {
        self.complex.delta_dense(&state.values, self.params.n) == state.delta
    }

    /// `prod_{e in gamma} phi_kappa(delta(e) + gamma[e]) / (phi_kappa(delta(e)) phi_kappa(1))`.
    pub fn normalized_observable(&self, state: &ChainState, gamma: &[i8]) -> f64 {
        let t = &self.phi_kappa;
        let mut r = 1.0;
        for (e, &q) in gamma.iter().enumerate() {
            if q != 0 {
                let d = state.delta[e] as i64;
                r *= t.phi(d + q as i64) / (t.phi(d) * t.phi(1));
            }
        }
        r
    }
}
