use couplings::{alpha, alpha_z2, epsilon, eta, eta_hat, phi, phi_hat, psi, xi, zeta, PhiTable};
use proptest::prelude::*;

/// Brute-force double series over `(k, k')` with `k' - k = j (mod n)`.
fn phi_hat_double_series(a: f64, j: u32, n: u32) -> f64 {
    let mut fact = vec![1.0f64; 80];
    for i in 1..80 {
        fact[i] = fact[i - 1] * i as f64;
    }
    let mut s = 0.0;
    for k in 0..60usize {
        for kp in 0..60usize {
            if (kp as i64 - k as i64).rem_euclid(n as i64) == j as i64 {
                s += a.powi(k as i32) / fact[k] * a.powi(kp as i32) / fact[kp];
            }
        }
    }
    s
}

#[test]
fn phi_hat_matches_double_series() {
    for n in 2..=7 {
        for &a in &[0.05, 0.3, 0.9, 1.5] {
            for j in 0..n {
                let d = phi_hat_double_series(a, j, n);
                let v = phi_hat(a, j as i64, n);
                assert!(((v - d) / d).abs() < 1e-13, "a={a} n={n} j={j}: {v} vs {d}");
            }
        }
    }
}

#[test]
fn psi_sums_to_exponential() {
    for n in 2..=8 {
        let s: f64 = (0..n as i64).map(|j| psi(0.8, j, n).unwrap()).sum();
        assert!((s - 0.8f64.exp()).abs() < 1e-14);
    }
}

proptest! {
    #[test]
    fn phi_is_symmetric_and_bounded(a in 0.0f64..2.0, n in 2u32..9, j in 0i64..9) {
        let t = PhiTable::new(a, n);
        prop_assert!((t.phi(n as i64 - j) - t.phi(j)).abs() < 1e-14);
        prop_assert!(t.phi(j) >= 0.0 && t.phi(j) <= 1.0);
        prop_assert_eq!(t.phi(0), 1.0);
        prop_assert_eq!(phi(a, j, n), t.phi(j));
    }

    #[test]
    fn derived_constants_are_consistent(a in 0.001f64..1.0, n in 2u32..9) {
        let t = PhiTable::new(a, n);
        prop_assert!((eta_hat(a, n) - t.phi(1)).abs() < 1e-12);
        prop_assert!((xi(a, n) - t.phi(1)).abs() < 1e-12);
        prop_assert!(eta(a, n) <= eta_hat(a, n) + 1e-12);
        prop_assert!(zeta(a, n) >= xi(a, n));
        prop_assert!(epsilon(a, n) > 0.0);
    }

    #[test]
    fn alpha_is_at_least_one_in_small_kappa(beta in 0.0f64..1.0, kappa in 0.0f64..0.4, n in 2u32..9) {
        prop_assert!(alpha(beta, kappa, n) >= 1.0 - 1e-12);
    }

    #[test]
    fn alpha_closed_form_for_z2(beta in 0.0f64..2.0, kappa in 0.0f64..2.0) {
        let a = alpha(beta, kappa, 2);
        prop_assert!((a - alpha_z2(beta, kappa)).abs() < 1e-12 * a);
    }
}
