use num_complex::Complex64;
use rayon::prelude::*;

use crate::{OracleError, Result};

/// Largest state space any enumerator will visit.
pub const STATE_GUARD: u64 = 1 << 26;

/// States handled by one work unit. The chunk layout depends only on the
/// state count, so results do not depend on the thread count.
const CHUNK: u64 = 1 << 12;

/// Compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Sums {
    pub weight: Kahan,
    pub re: Kahan,
    pub im: Kahan,
}

impl Sums {
    fn merge(&mut self, o: &Sums) {
        self.weight.add(o.weight.value());
        self.re.add(o.re.value());
        self.im.add(o.im.value());
    }
}

pub(crate) fn state_count(digits: usize, n: u32) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..digits {
        total = total.checked_mul(n as u64).filter(|&t| t <= STATE_GUARD).ok_or(OracleError::StateGuard { digits, n, guard: STATE_GUARD })?;
    }
    Ok(total)
}

/// Visits every `x in Z_n^digits` (first digit fastest) and accumulates
/// `f(x) = (weight, weight * observable)`.
pub(crate) fn enumerate<F>(digits: usize, n: u32, f: F) -> Result<(Sums, u64)>
where
    F: Fn(&[u32]) -> (f64, Complex64) + Sync,
{
    let total = state_count(digits, n)?;
    let chunks = total.div_ceil(CHUNK);
    let partial: Vec<Sums> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut x = vec![0u32; digits];
            let mut rest = start;
            for d in x.iter_mut() {
                *d = (rest % n as u64) as u32;
                rest /= n as u64;
            }
            let mut s = Sums::default();
            for _ in start..end {
                let (w, o) = f(&x);
                s.weight.add(w);
                s.re.add(o.re);
                s.im.add(o.im);
                for d in x.iter_mut() {
                    *d += 1;
                    if *d < n {
                        break;
                    }
                    *d = 0;
                }
            }
            s
        })
        .collect();
    let mut acc = Sums::default();
    for s in &partial {
        acc.merge(s);
    }
    Ok((acc, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_small_terms() {
        let mut k = Kahan::default();
        k.add(1.0);
        for _ in 0..1_000_000 {
            k.add(1e-16);
        }
        assert!((k.value() - (1.0 + 1e-10)).abs() < 1e-15);
    }

    #[test]
    fn enumerate_visits_every_state_once() {
        let (s, total) = enumerate(5, 3, |x| {
            let code = x.iter().rev().fold(0u32, |acc, &d| acc * 3 + d);
            (1.0, Complex64::new(code as f64, 0.0))
        })
        .unwrap();
        assert_eq!(total, 243);
        assert_eq!(s.weight.value(), 243.0);
        assert_eq!(s.re.value(), (0..243).sum::<u32>() as f64);
    }

    #[test]
    fn guard_rejects_large_spaces() {
        assert!(state_count(26, 2).is_ok());
        assert!(state_count(27, 2).is_err());
        assert!(state_count(17, 3).is_err());
    }
}
