use std::collections::{BTreeMap, BTreeSet};

use crate::cell::OrientedCell;
use crate::chain::Chain;
use crate::error::{LatticeError, Result};

/// Axis-parallel rectangle in the plane spanned by `axes[0] < axes[1]`,
/// with lower corner `corner` and side `lengths[i]` along `axes[i]`.
/// `orientation = 1` traverses its boundary counterclockwise in that plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub corner: Vec<i64>,
    pub axes: [usize; 2],
    pub lengths: [u32; 2],
    pub orientation: i8,
}

impl Rectangle {
    pub fn new(corner: Vec<i64>, axes: [usize; 2], lengths: [u32; 2], orientation: i8) -> Result<Self> {
        let m = corner.len();
        if axes[0] >= axes[1] || axes[1] >= m {
            return Err(LatticeError::InvalidPath(format!("bad rectangle axes {axes:?} for m = {m}")));
        }
        if lengths[0] == 0 || lengths[1] == 0 {
            return Err(LatticeError::InvalidPath("rectangle sides must be positive".into()));
        }
        if orientation != 1 && orientation != -1 {
            return Err(LatticeError::InvalidPath("orientation must be +-1".into()));
        }
        Ok(Self { corner, axes, lengths, orientation })
    }

    /// Rectangle in the (0, 1) plane centered on the origin as nearly as the
    /// lattice allows.
    pub fn centered(m: usize, l_a: u32, l_b: u32) -> Result<Self> {
        let mut corner = vec![0i64; m];
        corner[0] = -((l_a / 2) as i64);
        if m > 1 {
            corner[1] = -((l_b / 2) as i64);
        }
        Self::new(corner, [0, 1], [l_a, l_b], 1)
    }

    /// `(l1, l2)` with `l1 <= l2`.
    pub fn side_lengths(&self) -> (u32, u32) {
        let [a, b] = self.lengths;
        (a.min(b), a.max(b))
    }

    pub fn perimeter(&self) -> usize {
        2 * (self.lengths[0] + self.lengths[1]) as usize
    }

    /// Oriented edges of the boundary loop in traversal order, starting and
    /// ending at `corner`.
    pub fn edge_sequence(&self) -> Vec<OrientedCell> {
        let [a, b] = self.axes;
        let [la, lb] = [self.lengths[0] as i64, self.lengths[1] as i64];
        let at = |da: i64, db: i64| {
            let mut p = self.corner.clone();
            p[a] += da;
            p[b] += db;
            p
        };
        let mut seq = Vec::with_capacity(self.perimeter());
        for i in 0..la {
            seq.push(OrientedCell::edge(at(i, 0), a));
        }
        for i in 0..lb {
            seq.push(OrientedCell::edge(at(la, i), b));
        }
        for i in (0..la).rev() {
            seq.push(OrientedCell::edge(at(i, lb), a).neg());
        }
        for i in (0..lb).rev() {
            seq.push(OrientedCell::edge(at(0, i), b).neg());
        }
        if self.orientation < 0 {
            seq.reverse();
            seq = seq.into_iter().map(|e| e.neg()).collect();
        }
        seq
    }

    /// The boundary loop as a 1-chain.
    pub fn loop_chain(&self) -> Chain {
        let mut c = Chain::zero(1);
        for e in self.edge_sequence() {
            c.add(&e, 1);
        }
        c
    }

    /// Positive plaquettes enclosed by the rectangle.
    pub fn interior_plaquettes(&self) -> Vec<OrientedCell> {
        let [a, b] = self.axes;
        let mut out = Vec::new();
        for i in 0..self.lengths[0] as i64 {
            for j in 0..self.lengths[1] as i64 {
                let mut p = self.corner.clone();
                p[a] += i;
                p[b] += j;
                out.push(OrientedCell::plaquette(p, a, b));
            }
        }
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    Open { from: Vec<i64>, to: Vec<i64> },
    Closed,
}

/// A 1-chain with coefficients in {-1, 0, 1}, connected support and boundary
/// either empty (closed) or `to - from` (open).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    chain: Chain,
    kind: PathKind,
    rect: Option<Rectangle>,
}

impl LatticePath {
    /// Validates a 1-chain as a path.
    pub fn from_chain(chain: Chain) -> Result<Self> {
        if chain.dim() != 1 {
            return Err(LatticeError::InvalidPath("a path is a 1-chain".into()));
        }
        if chain.is_zero() {
            return Err(LatticeError::InvalidPath("empty path".into()));
        }
        if chain.iter().any(|(_, q)| q.abs() != 1) {
            return Err(LatticeError::InvalidPath("coefficients must be in {-1, 0, 1}".into()));
        }
        if !support_connected(&chain) {
            return Err(LatticeError::InvalidPath("support is not connected".into()));
        }
        let bd = chain.boundary()?;
        let kind = if bd.is_zero() {
            PathKind::Closed
        } else {
            let ends: Vec<_> = bd.iter().collect();
            match ends.as_slice() {
                [(x, qx), (y, qy)] if qx * qy == -1 => {
                    let (from, to) = if *qx < 0 { (x, y) } else { (y, x) };
                    PathKind::Open { from: from.base.clone(), to: to.base.clone() }
                }
                _ => return Err(LatticeError::InvalidPath("boundary is not of the form x2 - x1".into())),
            }
        };
        Ok(Self { chain, kind, rect: None })
    }

    /// Walks from `start`, one unit step per `(direction, +-1)`.
    pub fn from_steps(start: Vec<i64>, steps: &[(usize, i8)]) -> Result<Self> {
        let mut cur = start;
        let mut chain = Chain::zero(1);
        for &(d, s) in steps {
            if d >= cur.len() || (s != 1 && s != -1) {
                return Err(LatticeError::InvalidPath(format!("bad step ({d}, {s})")));
            }
            let e = if s > 0 {
                let e = OrientedCell::edge(cur.clone(), d);
                cur[d] += 1;
                e
            } else {
                cur[d] -= 1;
                OrientedCell::edge(cur.clone(), d).neg()
            };
            if chain.contains(&e) {
                return Err(LatticeError::InvalidPath(format!("edge {e} traversed twice")));
            }
            chain.add(&e, 1);
        }
        Self::from_chain(chain)
    }

    /// Straight segment of `len` positive steps along `dir`.
    pub fn segment(start: Vec<i64>, dir: usize, len: usize) -> Result<Self> {
        Self::from_steps(start, &vec![(dir, 1); len])
    }

    /// The full boundary loop of a rectangle, carrying the descriptor.
    pub fn rectangle_loop(rect: Rectangle) -> Result<Self> {
        let mut p = Self::from_chain(rect.loop_chain())?;
        p.rect = Some(rect);
        Ok(p)
    }

    /// `len` consecutive edges of the rectangle's loop starting at position
    /// `start` of [`Rectangle::edge_sequence`]; an open path when
    /// `len < perimeter`.
    pub fn rectangle_arc(rect: Rectangle, start: usize, len: usize) -> Result<Self> {
        let seq = rect.edge_sequence();
        if len == 0 || len > seq.len() {
            return Err(LatticeError::InvalidPath(format!("arc length {len} not in 1..={}", seq.len())));
        }
        let mut chain = Chain::zero(1);
        for i in 0..len {
            chain.add(&seq[(start + i) % seq.len()], 1);
        }
        let mut p = Self::from_chain(chain)?;
        p.rect = Some(rect);
        Ok(p)
    }

    /// Attaches a rectangle descriptor after checking that the rectangle's
    /// loop agrees with the path on its support.
    pub fn with_rectangle(mut self, rect: Rectangle) -> Result<Self> {
        let gr = rect.loop_chain();
        for (e, q) in self.chain.iter() {
            if gr.coeff(e) != q {
                return Err(LatticeError::InvalidPath(format!("edge {e} is not on the rectangle loop with matching sign")));
            }
        }
        self.rect = Some(rect);
        Ok(self)
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn is_closed(&self) -> bool {
        self.kind == PathKind::Closed
    }

    pub fn rect(&self) -> Option<&Rectangle> {
        self.rect.as_ref()
    }

    /// `|gamma|`, the number of edges in the support.
    pub fn len(&self) -> usize {
        self.chain.support_len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_zero()
    }

    pub fn coeff(&self, e: &OrientedCell) -> i64 {
        self.chain.coeff(e)
    }

    pub fn support_set(&self) -> BTreeSet<OrientedCell> {
        self.chain.support().cloned().collect()
    }

    /// The completing rectangular loop.
    pub fn gamma_r(&self) -> Result<Chain> {
        self.rect.as_ref().map(|r| r.loop_chain()).ok_or(LatticeError::MissingRectangle)
    }

    /// All vertices touched by the path.
    pub fn vertices(&self) -> BTreeSet<Vec<i64>> {
        self.chain.support().flat_map(|e| e.corners()).collect()
    }
}

fn support_connected(chain: &Chain) -> bool {
    let mut parent: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<Vec<i64>, Vec<i64>>, x: &[i64]) -> Vec<i64> {
        let mut r = x.to_vec();
        while parent[&r] != r {
            r = parent[&r].clone();
        }
        let root = r.clone();
        let mut c = x.to_vec();
        while parent[&c] != c {
            let next = parent[&c].clone();
            parent.insert(c, root.clone());
            c = next;
        }
        root
    }
    for e in chain.support() {
        let cs = e.corners();
        for c in &cs {
            parent.entry(c.clone()).or_insert_with(|| c.clone());
        }
        let (a, b) = (find(&mut parent, &cs[0]), find(&mut parent, &cs[1]));
        if a != b {
            parent.insert(a, b);
        }
    }
    let keys: Vec<_> = parent.keys().cloned().collect();
    let roots: BTreeSet<_> = keys.iter().map(|k| find(&mut parent, k)).collect();
    roots.len() <= 1
}
