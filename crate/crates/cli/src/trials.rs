use lattice_dec::{check_all, random_form, FormZn, LatticeBox, LatticePath, OrientedCell, Rectangle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

const DENSITIES: [f64; 5] = [0.02, 0.1, 0.3, 0.6, 0.9];
const ORDERS: [u32; 3] = [2, 3, 4];
/// Every `RING_EVERY`-th trial is a (possibly broken) width-one ring hugging
/// the rectangle instead of an i.i.d. form; rings are where the inequalities
/// are tight.
const RING_EVERY: usize = 8;

/// Tally of one inequality over the trials of one setting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub setting: String,
    pub check: &'static str,
    pub trials: usize,
    pub applicable: usize,
    pub failures: usize,
}

struct Setting {
    m: usize,
    lbox: LatticeBox,
    rect: Rectangle,
    window: LatticeBox,
    closed: bool,
}

impl Setting {
    fn new(m: usize, half_side: i64, sides: [u32; 2], closed: bool) -> Result<Self, CliError> {
        let lbox = LatticeBox::centered(m, half_side)?;
        let rect = Rectangle::centered(m, sides[0], sides[1])?;
        let mut lo = vec![-1i64; m];
        let mut hi = vec![1i64; m];
        for i in 0..2 {
            lo[i] = rect.corner[i] - 2;
            hi[i] = rect.corner[i] + sides[i] as i64 + 2;
        }
        let window = LatticeBox::new(lo, hi)?;
        if !window.cells(0).iter().all(|v| lbox.contains(v)) {
            return Err(CliError::Guard(format!("trial window {window:?} leaves the box")));
        }
        Ok(Self { m, lbox, rect, window, closed })
    }

    fn name(&self) -> String {
        let [a, b] = self.rect.lengths;
        format!("m={} N={} {a}x{b} {}", self.m, self.lbox.hi()[0], if self.closed { "loop" } else { "arc" })
    }

    fn path(&self, rng: &mut ChaCha8Rng) -> Result<LatticePath, CliError> {
        let per = self.rect.perimeter();
        Ok(if self.closed {
            LatticePath::rectangle_loop(self.rect.clone())?
        } else {
            LatticePath::rectangle_arc(self.rect.clone(), rng.random_range(0..per), rng.random_range(1..per))?
        })
    }

    /// Width-one ring just inside or just outside the rectangle, with a
    /// random gap of up to three plaquettes.
    fn ring(&self, n: u32, rng: &mut ChaCha8Rng) -> Result<FormZn, CliError> {
        let inside = rng.random_bool(0.5);
        let r = &self.rect;
        let [la, lb] = r.lengths;
        let big = if inside {
            r.clone()
        } else {
            let mut c = r.corner.clone();
            c[0] -= 1;
            c[1] -= 1;
            Rectangle::new(c, r.axes, [la + 2, lb + 2], 1)?
        };
        let (x0, y0) = (big.corner[0], big.corner[1]);
        let (x1, y1) = (x0 + big.lengths[0] as i64 - 1, y0 + big.lengths[1] as i64 - 1);
        let ring: Vec<OrientedCell> =
            big.interior_plaquettes().into_iter().filter(|p| p.base[0] == x0 || p.base[0] == x1 || p.base[1] == y0 || p.base[1] == y1).collect();
        let len = ring.len();
        let cut = rng.random_range(0..len);
        let gap = rng.random_range(0..4usize);
        let mut w = FormZn::zero(2, n)?;
        for (i, p) in ring.iter().enumerate() {
            if gap == 0 || (i + len - cut) % len >= gap {
                w.set(p, rng.random_range(1..n) as i64);
            }
        }
        Ok(w)
    }

    fn trial(&self, i: usize, seed: u64) -> Result<Vec<lattice_dec::InequalityCheck>, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ORDERS[i % ORDERS.len()];
        let gamma = self.path(&mut rng)?;
        let form = if i % RING_EVERY == RING_EVERY - 1 {
            self.ring(n, &mut rng)?
        } else {
            random_form(&self.window, n, DENSITIES[(i / ORDERS.len()) % DENSITIES.len()], rng.random())?
        };
        Ok(check_all(&form, &gamma, &self.lbox)?)
    }
}

/// Checks every geometric inequality on `forms` random 2-forms for each
/// dimension in `dims` and for both a closed loop and random open arcs of an
/// `sides[0] x sides[1]` rectangle centered in the box of half-side
/// `half_side`. Forms live in a window two plaquettes beyond the rectangle;
/// densities, group orders and ring trials rotate with the trial index.
/// Setting `k` draws its per-trial seeds from ChaCha8 stream `k` of `seed`.
pub fn geometric_trials(dims: &[usize], sides: [u32; 2], half_side: i64, forms: usize, seed: u64) -> Result<Vec<TrialSummary>, CliError> {
    let mut out = Vec::new();
    let mut k = 0u64;
    for &m in dims {
        for closed in [true, false] {
            let setting = Setting::new(m, half_side, sides, closed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            k += 1;
            let seeds: Vec<u64> = (0..forms).map(|_| rng.random()).collect();
            let results = seeds.par_iter().enumerate().map(|(i, &s)| setting.trial(i, s)).collect::<Result<Vec<_>, _>>()?;
            let name = setting.name();
            let mut rows: Vec<TrialSummary> = Vec::new();
            for checks in &results {
                for c in checks {
                    let row = match rows.iter_mut().find(|r| r.check == c.name) {
                        Some(r) => r,
                        None => {
                            rows.push(TrialSummary { setting: name.clone(), check: c.name, trials: 0, applicable: 0, failures: 0 });
                            rows.last_mut().expect("just pushed")
                        }
                    };
                    row.trials += 1;
                    row.applicable += c.applicable as usize;
                    row.failures += !c.holds as usize;
                }
            }
            out.extend(rows);
        }
    }
    Ok(out)
}
