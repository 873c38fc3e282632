use crate::cell::OrientedCell;
use crate::chain::Chain;
use crate::error::{LatticeError, Result};

/// Axis-parallel box `[lo_0, hi_0] x ... x [lo_{m-1}, hi_{m-1}]` of Z^m.
///
/// The usual box is `B_N = [-N, N]^m` from [`LatticeBox::centered`]; general
/// boxes are used for sub-windows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl LatticeBox {
    pub fn centered(m: usize, half_side: i64) -> Result<Self> {
        if m < 2 {
            return Err(LatticeError::Dimension(format!("m must be at least 2, got {m}")));
        }
        if half_side < 1 {
            return Err(LatticeError::Dimension(format!("N must be at least 1, got {half_side}")));
        }
        Ok(Self { lo: vec![-half_side; m], hi: vec![half_side; m] })
    }

    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.len() < 2 {
            return Err(LatticeError::Dimension("box corners must share a dimension >= 2".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(LatticeError::Dimension(format!("empty box {lo:?}..{hi:?}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn m(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        p.len() == self.m() && p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| a <= x && x <= b)
    }

    /// A cell is in the box iff every corner of its cube is.
    pub fn contains(&self, cell: &OrientedCell) -> bool {
        if cell.ambient_dim() != self.m() {
            return false;
        }
        (0..self.m()).all(|i| {
            let top = cell.base[i] + i64::from(cell.dirs.contains(&i));
            self.lo[i] <= cell.base[i] && top <= self.hi[i]
        })
    }

    /// Smallest distance from a point to the box faces (negative outside).
    pub fn margin(&self, p: &[i64]) -> i64 {
        (0..self.m()).map(|i| (p[i] - self.lo[i]).min(self.hi[i] - p[i])).min().unwrap_or(0)
    }

    fn points(&self) -> Vec<Vec<i64>> {
        let m = self.m();
        let mut out = Vec::new();
        let mut cur = self.lo.clone();
        loop {
            out.push(cur.clone());
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.hi[i] {
                    cur[i] += 1;
                    for (k, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = self.lo[k];
                    }
                    break;
                }
            }
        }
    }

    /// All positive k-cells of the box in canonical (base, dirs) order.
    pub fn cells(&self, k: usize) -> Vec<OrientedCell> {
        let m = self.m();
        if k > m {
            return Vec::new();
        }
        let subsets = direction_subsets(m, k);
        let mut out = Vec::new();
        for p in self.points() {
            for dirs in &subsets {
                let c = OrientedCell::positive(p.clone(), dirs.clone());
                if self.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn count_cells(&self, k: usize) -> usize {
        let m = self.m();
        direction_subsets(m, k)
            .iter()
            .map(|dirs| {
                (0..m)
                    .map(|i| {
                        let w = (self.hi[i] - self.lo[i]) as usize;
                        if dirs.contains(&i) {
                            w
                        } else {
                            w + 1
                        }
                    })
                    .product::<usize>()
            })
            .sum()
    }

    /// Coboundary of a cell clipped to the box: the (k+1)-chain with
    /// coefficient `boundary(c')[cell]` on every box cell `c'`.
    pub fn coboundary(&self, cell: &OrientedCell) -> Result<Chain> {
        if cell.dim() + 1 > self.m() {
            return Err(LatticeError::Dimension(format!("no coboundary for a {}-cell in m = {}", cell.dim(), self.m())));
        }
        if !self.contains(cell) {
            return Err(LatticeError::OutsideBox(cell.to_string()));
        }
        let mut out = Chain::zero(cell.dim() + 1);
        for c in cell.cofaces() {
            if self.contains(&c) {
                let q = c.boundary()?.coeff(cell);
                out.add(&c, q);
            }
        }
        Ok(out)
    }
}

/// Strictly increasing k-subsets of 0..m in lex order.
pub fn direction_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for d in start..m {
            cur.push(d);
            rec(d + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}
