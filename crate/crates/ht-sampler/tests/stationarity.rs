use couplings::{eta, ModelParams};
use exact_oracle::ExactModel;
use ht_sampler::{estimate_wilson, sample_tilted_snapshots, HeatBath, RunPlan, Schedule};
use lattice_dec::{random_form, LatticePath, Rectangle};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn params(n: u32, beta: f64, kappa: f64, half: i64) -> ModelParams {
    ModelParams::new(2, n, beta, kappa, half).unwrap()
}

fn code(values: &[u32], n: u32) -> usize {
    values.iter().rev().fold(0usize, |acc, &v| acc * n as usize + v as usize)
}

/// Exact law of the (possibly tilted) 2-form measure on every dense state.
fn exact_law(model: &ExactModel, tilt: Option<&[i8]>) -> Vec<f64> {
    let n = model.params.n;
    let np = model.complex.plaquettes.len();
    let total = (n as usize).pow(np as u32);
    let zero_tilt = vec![0i8; model.complex.edges.len()];
    let mut w: Vec<f64> = (0..total)
        .map(|mut c| {
            let mut v = vec![0u32; np];
            for d in v.iter_mut() {
                *d = (c % n as usize) as u32;
                c /= n as usize;
            }
            let d = model.complex.delta_dense(&v, n);
            model.tilted_activity_dense(tilt.unwrap_or(&zero_tilt), &v, &d)
        })
        .collect();
    let z: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= z);
    w
}

/// Pearson statistic over states with expected count >= 5; returns the p-value.
fn chi_square_p(counts: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let mut stat = 0.0;
    let mut bins = 0;
    let (mut rest_obs, mut rest_exp) = (0.0, 0.0);
    for (&c, &p) in counts.iter().zip(probs) {
        let e = p * total as f64;
        if e >= 5.0 {
            stat += (c as f64 - e).powi(2) / e;
            bins += 1;
        } else {
            rest_obs += c as f64;
            rest_exp += e;
        }
    }
    if rest_exp > 0.0 {
        stat += (rest_obs - rest_exp).powi(2) / rest_exp;
        bins += 1;
    }
    1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(stat)
}

fn empirical(bath: &HeatBath, tilt: Option<&[i8]>, sweeps: u64, thin: u64, seed: u64) -> Vec<u64> {
    let n = bath.params.n;
    let mut counts = vec![0u64; (n as usize).pow(bath.complex.plaquettes.len() as u32)];
    let mut s = bath.zero_state(seed, 0);
    for _ in 0..1000 {
        bath.sweep(&mut s, tilt);
    }
    for i in 0..sweeps {
        bath.sweep(&mut s, tilt);
        if i % thin == 0 {
            counts[code(&s.values, n)] += 1;
        }
    }
    counts
}

#[test]
fn configuration_frequencies_match_exact_law() {
    for (n, beta, kappa) in [(2, 0.6, 0.5), (3, 0.8, 0.7)] {
        let p = params(n, beta, kappa, 1);
        let bath = HeatBath::new(p).unwrap();
        let model = ExactModel::new(p).unwrap();
        let counts = empirical(&bath, None, 1_000_000, 10, 7);
        let pv = chi_square_p(&counts, &exact_law(&model, None));
        assert!(pv > 0.001, "n={n}: p = {pv}");
    }
}

#[test]
fn tilted_frequencies_match_exact_law() {
    let p = params(2, 0.6, 0.5, 1);
    let bath = HeatBath::new(p).unwrap();
    let model = ExactModel::new(p).unwrap();
    let g = LatticePath::rectangle_loop(Rectangle::new(vec![0, 0], [0, 1], [1, 1], 1).unwrap()).unwrap();
    let tilt = bath.tilt(&g).unwrap();
    let counts = empirical(&bath, Some(&tilt), 1_000_000, 10, 8);
    let pv = chi_square_p(&counts, &exact_law(&model, Some(&tilt)));
    assert!(pv > 0.001, "p = {pv}");
}

#[test]
fn single_site_marginals_within_three_errors() {
    let (n, beta, kappa) = (2, 0.5, 0.6);
    let p = params(n, beta, kappa, 1);
    let bath = HeatBath::new(p).unwrap();
    let law = exact_law(&ExactModel::new(p).unwrap(), None);
    let np = bath.complex.plaquettes.len();
    let mut s = bath.zero_state(99, 0);
    let sweeps = 1_000_000usize;
    let mut traces = vec![Vec::with_capacity(sweeps); np];
    for _ in 0..sweeps {
        bath.sweep(&mut s, None);
        for (t, &v) in traces.iter_mut().zip(&s.values) {
            t.push((v == 1) as u8 as f64);
        }
    }
    for (pi, t) in traces.iter().enumerate() {
        let exact: f64 = law.iter().enumerate().filter(|(c, _)| (c >> pi) & 1 == 1).map(|(_, w)| w).sum();
        let (mean, se) = ht_sampler::pooled(&ht_sampler::batch_means(t, 64).unwrap());
        assert!((mean - exact).abs() < 3.0 * se, "plaquette {pi}: {mean} +- {se} vs {exact}");
    }
}

#[test]
fn estimator_matches_oracle() {
    let g = LatticePath::segment(vec![-1, 0], 0, 2).unwrap();
    let lp = LatticePath::rectangle_loop(Rectangle::new(vec![0, 0], [0, 1], [1, 1], 1).unwrap()).unwrap();
    for (beta, kappa) in [(0.3, 0.3), (0.8, 0.5), (0.5, 1.0)] {
        for (name, path) in [("segment", &g), ("loop", &lp)] {
            let p = params(2, beta, kappa, 1);
            let exact = ExactModel::new(p).unwrap().wilson_hat_form(path).unwrap().value;
            let plan = RunPlan { chains: 4, ..RunPlan::new(100_000, 17) };
            let r = estimate_wilson(p, path, &plan).unwrap();
            assert_eq!(r.batches, 256);
            let target = exact / r.scale;
            assert!((r.mean - target).abs() < 3.0 * r.std_error, "{name} {beta} {kappa}: {} +- {} vs {target}", r.mean, r.std_error);
        }
    }
}

#[test]
fn zero_beta_estimate_is_exact() {
    let g = LatticePath::rectangle_loop(Rectangle::centered(2, 4, 4).unwrap()).unwrap();
    let r = estimate_wilson(params(3, 0.0, 0.3, 8), &g, &RunPlan::new(640, 1)).unwrap();
    assert_eq!(r.mean, 1.0);
    assert_eq!(r.std_error, 0.0);
}

#[test]
fn estimator_is_deterministic_and_checks_inputs() {
    let g = LatticePath::rectangle_loop(Rectangle::centered(2, 4, 4).unwrap()).unwrap();
    let p = params(2, 0.2, 0.4, 8);
    let plan = RunPlan { chains: 3, ..RunPlan::new(640, 5) };
    assert_eq!(estimate_wilson(p, &g, &plan).unwrap(), estimate_wilson(p, &g, &plan).unwrap());
    assert!(estimate_wilson(p, &g, &RunPlan::new(20, 5)).is_err());
    assert!(estimate_wilson(p, &g, &RunPlan { batches: 16, ..plan }).is_err());
    // margin floor(8/4) = 2: a loop touching the boundary is rejected
    let edge = LatticePath::rectangle_loop(Rectangle::new(vec![-8, -8], [0, 1], [4, 4], 1).unwrap()).unwrap();
    assert!(estimate_wilson(p, &edge, &plan).is_err());
}

#[test]
fn sampled_observable_respects_perimeter_ratio() {
    let g = LatticePath::rectangle_loop(Rectangle::centered(2, 4, 4).unwrap()).unwrap();
    for n in [2, 3, 5] {
        let (beta, kappa) = (0.4, 0.35);
        let r = estimate_wilson(params(n, beta, kappa, 6), &g, &RunPlan::new(2_000, 3)).unwrap();
        let floor = (eta(kappa, n) / couplings::xi(kappa, n)).powi(g.len() as i32);
        assert!(r.min_observed >= floor * (1.0 - 1e-12), "n={n}: {} < {floor}", r.min_observed);
    }
}

#[test]
fn snapshots() {
    let g = LatticePath::rectangle_loop(Rectangle::centered(2, 6, 6).unwrap()).unwrap();
    let sched = Schedule { burn_in: 10, count: 5, spacing: 3 };
    for f in sample_tilted_snapshots(params(3, 0.0, 0.4, 6), &g, sched, 4).unwrap() {
        assert!(f.is_zero());
    }
    let p = params(2, 1.25, 0.5, 6);
    let lbox = lattice_dec::LatticeBox::centered(2, 6).unwrap();
    let snaps = sample_tilted_snapshots(p, &g, sched, 4).unwrap();
    assert_eq!(snaps.len(), 5);
    for f in &snaps {
        assert!(f.delta(&lbox).unwrap().delta(&lbox).unwrap().is_zero());
    }
    assert_eq!(snaps, sample_tilted_snapshots(p, &g, sched, 4).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn cache_stays_coherent(n in 2u32..6, beta in 0.0f64..1.5, kappa in 0.0f64..1.5, density in 0.0f64..1.0, seed in 0u64..1000, tilted: bool) {
        let bath = HeatBath::new(params(n, beta, kappa, 3)).unwrap();
        let start = random_form(bath.lattice_box(), n, density, seed).unwrap();
        let mut s = bath.state_from_form(&start, seed, 0).unwrap();
        let g = LatticePath::rectangle_loop(Rectangle::centered(2, 2, 2).unwrap()).unwrap();
        let tilt = bath.tilt(&g).unwrap();
        for _ in 0..5 {
            bath.sweep(&mut s, tilted.then_some(tilt.as_slice()));
            prop_assert!(bath.cache_is_coherent(&s));
        }
    }
}
