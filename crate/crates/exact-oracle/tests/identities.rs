use couplings::{eta, eta_hat, ModelParams, PhiTable};
use exact_oracle::{ExactModel, GaugeConfig, HiggsConfig};
use lattice_dec::{lhd, random_form, restrict_gamma, LatticeBox, LatticePath, Rectangle};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn model(m: usize, n: u32, beta: f64, kappa: f64, half: i64) -> ExactModel {
    ExactModel::new(ModelParams::new(m, n, beta, kappa, half).unwrap()).unwrap()
}

fn plaquette_loop() -> LatticePath {
    LatticePath::rectangle_loop(Rectangle::new(vec![0, 0], [0, 1], [1, 1], 1).unwrap()).unwrap()
}

fn paths() -> Vec<(&'static str, LatticePath)> {
    vec![
        ("plaquette_loop", plaquette_loop()),
        ("open_interior", LatticePath::segment(vec![-1, 0], 0, 2).unwrap()),
        ("open_bent_on_boundary", LatticePath::from_steps(vec![-1, -1], &[(0, 1), (1, 1)]).unwrap()),
    ]
}

const GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[test]
fn gauge_side_equals_form_side() {
    for n in [2, 3] {
        for &beta in &GRID {
            for &kappa in &GRID {
                let m = model(2, n, beta, kappa, 1);
                for (name, g) in paths() {
                    let lhs = m.wilson_unitary(&g).unwrap().value;
                    let rhs = m.wilson_hat_form(&g).unwrap().value;
                    assert!((lhs - rhs).abs() < 1e-10, "n={n} beta={beta} kappa={kappa} {name}: {lhs} vs {rhs}");
                }
            }
        }
    }
}

#[test]
fn full_measure_reduces_to_unitary_gauge() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2 {
        let (beta, kappa) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        let m = model(2, 2, beta, kappa, 1);
        let g = plaquette_loop();
        let full = m.wilson_full(&g).unwrap();
        assert_eq!(full.states, 1 << 21);
        let unitary = m.wilson_unitary(&g).unwrap().value;
        assert!((full.value - unitary).abs() < 1e-10, "{} vs {unitary}", full.value);
    }
}

#[test]
fn zero_beta_limit() {
    for n in [2, 3] {
        let kappa = 0.4;
        let m = model(2, n, 0.0, kappa, 1);
        for (name, g) in paths() {
            let expected = eta_hat(kappa, n).powi(g.len() as i32);
            for v in [m.wilson_unitary(&g).unwrap().value, m.wilson_hat_form(&g).unwrap().value] {
                assert!((v - expected).abs() < 1e-12, "n={n} {name}: {v} vs {expected}");
            }
        }
    }
    let m = model(2, 2, 0.0, 0.4, 1);
    let v = m.wilson_full(&plaquette_loop()).unwrap().value;
    assert!((v - eta_hat(0.4, 2).powi(4)).abs() < 1e-12);
}

#[test]
fn perimeter_lower_bound() {
    for n in [2, 3] {
        for &beta in &GRID {
            for &kappa in &GRID[1..] {
                let m = model(2, n, beta, kappa, 1);
                for (name, g) in paths() {
                    let v = m.wilson_unitary(&g).unwrap().value;
                    assert!(v >= eta(kappa, n).powi(g.len() as i32) - 1e-12, "{name} n={n} {beta} {kappa}");
                }
            }
        }
    }
}

#[test]
fn action_and_wilson_line_are_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [2, 3, 5] {
        let m = model(2, n, 0.37, 0.61, 2);
        let g = m.path_coefficients(&plaquette_loop()).unwrap();
        let open = m.path_coefficients(&LatticePath::segment(vec![-2, 1], 0, 3).unwrap()).unwrap();
        for _ in 0..20 {
            let mut draw = |k: usize| (0..k).map(|_| rng.random_range(0..n)).collect::<Vec<u32>>();
            let s = GaugeConfig(draw(m.complex.edges.len()));
            let h = HiggsConfig(draw(m.complex.vertices.len()));
            let e = HiggsConfig(draw(m.complex.vertices.len()));
            let (s2, h2) = m.gauge_transform(&s, &h, &e).unwrap();
            let a = m.action_complex(&s, &h).unwrap();
            assert!(a.im.abs() < 1e-12);
            assert!((m.action(&s2, &h2).unwrap() - a.re).abs() < 1e-12);
            for path in [&g, &open] {
                let w1 = m.wilson_line(path, &s.0, Some(&h.0));
                let w2 = m.wilson_line(path, &s2.0, Some(&h2.0));
                assert!((w1 - w2).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn single_plaquette_form_measure_z2() {
    // On one plaquette the 2-form measure is explicit.
    let (beta, kappa) = (0.3f64, 0.2f64);
    let lbox = LatticeBox::new(vec![0, 0], vec![1, 1]).unwrap();
    let w0 = lattice_dec::FormZn::zero(2, 2).unwrap();
    let mut w1 = w0.clone();
    w1.set(&lattice_dec::OrientedCell::plaquette(vec![0, 0], 0, 1), 1);
    let a1 = exact_oracle::activity(&w1, &lbox, beta, kappa).unwrap();
    assert!((a1 - (2.0 * beta).tanh() * (2.0 * kappa).tanh().powi(4)).abs() < 1e-15);
    let g = plaquette_loop();
    let lhat1 = exact_oracle::wilson_hat(&w1, &g, &lbox, kappa).unwrap();
    // delta w1 = +-1 on all four edges; L_hat moves each to 0 or 2 = 0 (mod 2)
    assert!((lhat1 - (2.0 * kappa).tanh().powi(-4)).abs() < 1e-12);
}

#[test]
fn factorization_over_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 3, 4] {
        let m = model(2, n, 0.21, 0.33, 3);
        let lbox = m.lattice_box().clone();
        for seed in 0..40 {
            let w = random_form(&lbox, n, 0.15, seed).unwrap();
            let comps = lattice_dec::connected_components(&w);
            let mut sub = lattice_dec::FormZn::zero(2, n).unwrap();
            for c in &comps {
                if rng.random_bool(0.5) {
                    sub = sub.add(c).unwrap();
                }
            }
            assert!(lhd(&sub, &w, &lbox).unwrap());
            let rest = w.sub(&sub).unwrap();
            let lhs = m.activity(&w).unwrap();
            let rhs = m.activity(&sub).unwrap() * m.activity(&rest).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * lhs.max(1e-300), "n={n} seed={seed}");
        }
    }
}

#[test]
fn wilson_hat_depends_only_on_the_gamma_part() {
    for n in [2, 3, 5] {
        let kappa = 0.45;
        let m = model(2, n, 0.1, kappa, 4);
        let lbox = m.lattice_box().clone();
        let g = LatticePath::rectangle_loop(Rectangle::new(vec![-2, -1], [0, 1], [4, 3], 1).unwrap()).unwrap();
        for seed in 0..60 {
            let w = random_form(&lbox, n, 0.2, 100 + seed).unwrap();
            let wg = restrict_gamma(&w, &g, &lbox).unwrap();
            let a = m.wilson_hat(&w, &g).unwrap();
            let b = m.wilson_hat(&wg, &g).unwrap();
            assert!((a - b).abs() < 1e-12 * a, "n={n} seed={seed}");
            assert!(a > 0.0);
            assert!(a >= eta(kappa, n).powi(g.len() as i32) - 1e-15);
        }
    }
}

/// All nonzero dense forms on the box with at most `max_support` plaquettes.
fn small_forms(m: &ExactModel, max_support: usize) -> Vec<lattice_dec::FormZn> {
    let n = m.params.n;
    let np = m.complex.plaquettes.len();
    let total = (n as u64).pow(np as u32);
    (1..total)
        .filter_map(|mut code| {
            let mut v = vec![0u32; np];
            for d in v.iter_mut() {
                *d = (code % n as u64) as u32;
                code /= n as u64;
            }
            (v.iter().filter(|&&x| x != 0).count() <= max_support).then(|| m.complex.sparse_form(&v, n).unwrap())
        })
        .collect()
}

#[test]
fn probability_of_containing_a_subform() {
    for (n, half, max_support, take) in [(2, 1, 4, 15), (3, 1, 2, 32), (2, 2, 1, 4)] {
        let m = model(2, n, 0.4, 0.35, half);
        let lbox = m.lattice_box().clone();
        for sub in small_forms(&m, max_support).into_iter().take(take) {
            let p = m
                .expect_form(|omega, _| {
                    let whole = m.complex.sparse_form(omega, n).unwrap();
                    if lhd(&sub, &whole, &lbox).unwrap() {
                        1.0
                    } else {
                        0.0
                    }
                })
                .unwrap()
                .value;
            let bound = m.activity(&sub).unwrap();
            assert!(p <= bound + 1e-12, "n={n} N={half} {sub:?}: {p} > {bound}");
        }
    }
}

#[test]
fn conditional_wilson_hat_bound() {
    let g = plaquette_loop();
    for (n, half, max_support, take) in [(2, 1, 4, 15), (3, 1, 2, 32), (2, 2, 1, 4)] {
        let m = model(2, n, 0.4, 0.35, half);
        let lbox = m.lattice_box().clone();
        let gd = m.path_coefficients(&g).unwrap();
        for sub in small_forms(&m, max_support).into_iter().take(take) {
            let lhs = m
                .expect_form(|omega, d| {
                    let whole = m.complex.sparse_form(omega, n).unwrap();
                    let wg = restrict_gamma(&whole, &g, &lbox).unwrap();
                    if lhd(&wg, &sub, &lbox).unwrap() && lhd(&sub, &whole, &lbox).unwrap() {
                        m.wilson_hat_dense(&gd, d)
                    } else {
                        0.0
                    }
                })
                .unwrap()
                .value;
            let rhs = m.wilson_hat(&sub, &g).unwrap() * m.activity(&sub).unwrap();
            assert!(lhs <= rhs + 1e-12, "n={n} N={half} {sub:?}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn form_side_stabilizes_with_box_size() {
    let g = plaquette_loop();
    for &(beta, kappa) in &[(0.05, 0.2), (0.2, 0.4), (0.5, 0.5)] {
        let small = model(2, 2, beta, kappa, 1).wilson_hat_form(&g).unwrap();
        let large = model(2, 2, beta, kappa, 2).wilson_hat_form(&g).unwrap();
        assert_eq!(large.states, 1 << 16);
        let diff = (small.value - large.value).abs();
        println!("beta={beta} kappa={kappa} N=1 {:.12} N=2 {:.12} diff {diff:.3e}", small.value, large.value);
        // both boxes contain gamma; the difference must be small relative to the value
        assert!(diff < 0.5 * large.value);
    }
    // at beta = 0 both sides are exactly phi_kappa(1)^4
    let t = PhiTable::new(0.3, 2);
    for half in [1, 2] {
        let v = model(2, 2, 0.0, 0.3, half).wilson_hat_form(&g).unwrap().value;
        assert!((v - t.phi[1].powi(4)).abs() < 1e-14);
    }
}

#[test]
fn guard_is_enforced() {
    let m = model(2, 3, 0.1, 0.1, 1);
    // 3^21 full states exceed the guard
    assert!(m.expect_full(|_, _| Complex64::new(1.0, 0.0)).is_err());
}
