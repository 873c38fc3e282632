use lattice_dec::{FormZn, LatticeBox, LatticePath, OrientedCell};

use crate::CliError;

const WHITE: u8 = 255;
const BLACK: u8 = 0;
const GRAY: u8 = 128;

/// A rectangle of plaquettes in the 2-plane spanned by `axes`, through the
/// point `base` (its coordinates along `axes` are ignored). Plaquettes with
/// lower corner in `[lo, hi)` along the two axes are drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneWindow {
    pub axes: [usize; 2],
    pub base: Vec<i64>,
    pub lo: [i64; 2],
    pub hi: [i64; 2],
}

impl PlaneWindow {
    /// The whole box in the `(0, 1)` plane through the origin.
    pub fn full(lbox: &LatticeBox) -> Self {
        Self { axes: [0, 1], base: vec![0; lbox.m()], lo: [lbox.lo()[0], lbox.lo()[1]], hi: [lbox.hi()[0], lbox.hi()[1]] }
    }

    fn point(&self, x: i64, y: i64) -> Vec<i64> {
        let mut p = self.base.clone();
        p[self.axes[0]] = x;
        p[self.axes[1]] = y;
        p
    }

    fn plaquette(&self, x: i64, y: i64) -> OrientedCell {
        OrientedCell::plaquette(self.point(x, y), self.axes[0], self.axes[1])
    }

    fn check(&self, lbox: &LatticeBox) -> Result<(), CliError> {
        let [a, b] = self.axes;
        if self.base.len() != lbox.m() || a >= b || b >= lbox.m() {
            return Err(CliError::Config(format!("window axes {:?} or base point do not match m = {}", self.axes, lbox.m())));
        }
        if self.lo[0] >= self.hi[0] || self.lo[1] >= self.hi[1] {
            return Err(CliError::Config("empty render window".into()));
        }
        for (x, y) in [(self.lo[0], self.lo[1]), (self.hi[0] - 1, self.hi[1] - 1)] {
            let p = self.plaquette(x, y);
            if !lbox.contains(&p) {
                return Err(CliError::Guard(format!("render window reaches plaquette {p} outside the box")));
            }
        }
        Ok(())
    }
}

/// Binary PGM (P5) of a 2-form restricted to a plane window: one
/// `block x block` square per plaquette, black where the form is nonzero,
/// white elsewhere, with the edges of `gamma` drawn as mid-gray pixels along
/// the adjoining block borders. The second axis points up. `comments` go
/// into the header, one `#` line each.
pub fn render_pgm(
    form: &FormZn,
    gamma: Option<&LatticePath>,
    window: &PlaneWindow,
    lbox: &LatticeBox,
    block: usize,
    comments: &[String],
) -> Result<Vec<u8>, CliError> {
    window.check(lbox)?;
    if block == 0 {
        return Err(CliError::Config("block size must be positive".into()));
    }
    let cols = (window.hi[0] - window.lo[0]) as usize;
    let rows = (window.hi[1] - window.lo[1]) as usize;
    let (w, h) = (cols * block, rows * block);
    let mut px = vec![WHITE; w * h];

    // top-left pixel of the block for plaquette (x, y), if it is in the window
    let origin = |x: i64, y: i64| -> Option<(usize, usize)> {
        if x < window.lo[0] || x >= window.hi[0] || y < window.lo[1] || y >= window.hi[1] {
            return None;
        }
        let c = (x - window.lo[0]) as usize;
        let r = (window.hi[1] - 1 - y) as usize;
        Some((r * block, c * block))
    };

    for y in window.lo[1]..window.hi[1] {
        for x in window.lo[0]..window.hi[0] {
            if form.get(&window.plaquette(x, y)) != 0 {
                let (r0, c0) = origin(x, y).expect("inside window");
                for r in r0..r0 + block {
                    px[r * w + c0..r * w + c0 + block].fill(BLACK);
                }
            }
        }
    }

    if let Some(g) = gamma {
        let [a, b] = window.axes;
        for e in g.support_set() {
            let d = e.dirs[0];
            let in_slice = e.base.iter().enumerate().all(|(i, &v)| i == a || i == b || v == window.base[i]);
            if !in_slice || (d != a && d != b) {
                continue;
            }
            let (x, y) = (e.base[a], e.base[b]);
            let mut paint = |r: usize, c: usize| px[r * w + c] = GRAY;
            if d == a {
                // horizontal edge at height y: bottom row of the block above,
                // top row of the block below
                if let Some((r0, c0)) = origin(x, y) {
                    (c0..c0 + block).for_each(|c| paint(r0 + block - 1, c));
                }
                if let Some((r0, c0)) = origin(x, y - 1) {
                    (c0..c0 + block).for_each(|c| paint(r0, c));
                }
            } else {
                if let Some((r0, c0)) = origin(x, y) {
                    (r0..r0 + block).for_each(|r| paint(r, c0));
                }
                if let Some((r0, c0)) = origin(x - 1, y) {
                    (r0..r0 + block).for_each(|r| paint(r, c0 + block - 1));
                }
            }
        }
    }

    let mut out = b"P5\n".to_vec();
    for c in comments {
        out.extend_from_slice(format!("# {}\n", c.replace(['\n', '\r'], " ")).as_bytes());
    }
    out.extend_from_slice(format!("{w} {h}\n255\n").as_bytes());
    out.extend_from_slice(&px);
    Ok(out)
}
