use std::fmt;

use crate::chain::Chain;
use crate::error::{LatticeError, Result};

/// An oriented k-cell of Z^m: the unit cube spanned at `base` by the
/// coordinate directions in `dirs`, carrying an orientation `sign`.
///
/// Directions are 0-based (`0..m`) and kept strictly increasing. A vertex
/// has no directions. Derived ordering is (base, dirs, sign), which is the
/// canonical key order used by every map in the workspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedCell {
    pub base: Vec<i64>,
    pub dirs: Vec<usize>,
    pub sign: i8,
}

impl OrientedCell {
    /// Builds a cell from possibly unsorted directions. A permuted direction
    /// list is normalized to sorted order and the sign is multiplied by the
    /// sign of the sorting permutation.
    pub fn new(base: Vec<i64>, dirs: Vec<usize>, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(LatticeError::Dimension(format!("sign must be +-1, got {sign}")));
        }
        let m = base.len();
        if let Some(&bad) = dirs.iter().find(|&&d| d >= m) {
            return Err(LatticeError::BadDirections(dirs.clone(), format!("direction {bad} out of range for m = {m}")));
        }
        let mut sorted = dirs.clone();
        let mut inversions = 0usize;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut k = i;
            while k > 0 && sorted[k - 1] > sorted[k] {
                sorted.swap(k - 1, k);
                inversions += 1;
                k -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(LatticeError::BadDirections(dirs, "repeated direction".into()));
        }
        let sign = if inversions % 2 == 0 { sign } else { -sign };
        Ok(Self { base, dirs: sorted, sign })
    }

    /// Positively oriented cell with already sorted directions.
    pub fn positive(base: Vec<i64>, dirs: Vec<usize>) -> Self {
        debug_assert!(dirs.windows(2).all(|w| w[0] < w[1]));
        Self { base, dirs, sign: 1 }
    }

    pub fn vertex(base: Vec<i64>) -> Self {
        Self { base, dirs: Vec::new(), sign: 1 }
    }

    pub fn edge(base: Vec<i64>, dir: usize) -> Self {
        Self { base, dirs: vec![dir], sign: 1 }
    }

    pub fn plaquette(base: Vec<i64>, d1: usize, d2: usize) -> Self {
        assert!(d1 < d2, "plaquette directions must be increasing");
        Self { base, dirs: vec![d1, d2], sign: 1 }
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn is_positive(&self) -> bool {
        self.sign == 1
    }

    pub fn neg(&self) -> Self {
        Self { base: self.base.clone(), dirs: self.dirs.clone(), sign: -self.sign }
    }

    /// The positively oriented copy of this cell.
    pub fn to_positive(&self) -> Self {
        Self { base: self.base.clone(), dirs: self.dirs.clone(), sign: 1 }
    }

    pub fn with_sign(&self, sign: i8) -> Self {
        Self { base: self.base.clone(), dirs: self.dirs.clone(), sign }
    }

    /// All 2^k corner points of the underlying cube.
    pub fn corners(&self) -> Vec<Vec<i64>> {
        let k = self.dirs.len();
        (0..1u32 << k)
            .map(|mask| {
                let mut p = self.base.clone();
                for (i, &d) in self.dirs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        p[d] += 1;
                    }
                }
                p
            })
            .collect()
    }

    /// Signed boundary (k-1)-chain. For an edge `a -> a+e_j` this is
    /// `(a+e_j)^+ - a^+`; for a plaquette it is the four sides traversed
    /// counterclockwise in its (dirs[0], dirs[1]) plane.
    pub fn boundary(&self) -> Result<Chain> {
        let k = self.dim();
        if k == 0 {
            return Err(LatticeError::Dimension("boundary of a 0-cell".into()));
        }
        let mut chain = Chain::zero(k - 1);
        for (f, q) in self.faces() {
            chain.add(&f, q);
        }
        Ok(chain)
    }

    /// The `2k` positive faces with their boundary coefficients, without
    /// building a chain; empty for a 0-cell. Faces of a cube are distinct,
    /// so this is the support of [`boundary`](Self::boundary) with its
    /// coefficients.
    pub fn faces(&self) -> Vec<(OrientedCell, i64)> {
        let k = self.dim();
        let mut out = Vec::with_capacity(2 * k);
        for i in 0..k {
            let mut face_dirs = self.dirs.clone();
            let j = face_dirs.remove(i);
            // (-1)^(i+1) with 1-based face index i+1
            let s: i64 = if i % 2 == 0 { -1 } else { 1 };
            let mut far_base = self.base.clone();
            far_base[j] += 1;
            out.push((OrientedCell::positive(self.base.clone(), face_dirs.clone()), s * self.sign as i64));
            out.push((OrientedCell::positive(far_base, face_dirs), -s * self.sign as i64));
        }
        out
    }

    /// Every positive (k+1)-cell of the infinite lattice that has this cell
    /// as a face, in canonical order.
    pub fn cofaces(&self) -> Vec<OrientedCell> {
        let m = self.ambient_dim();
        let mut out = Vec::new();
        for j in 0..m {
            if self.dirs.contains(&j) {
                continue;
            }
            let mut dirs = self.dirs.clone();
            dirs.push(j);
            dirs.sort_unstable();
            let mut lower = self.base.clone();
            lower[j] -= 1;
            out.push(OrientedCell::positive(lower, dirs.clone()));
            out.push(OrientedCell::positive(self.base.clone(), dirs));
        }
        out.sort();
        out
    }
}

impl fmt::Display for OrientedCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base: Vec<String> = self.base.iter().map(|x| x.to_string()).collect();
        let dirs: Vec<String> = self.dirs.iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})[{}]", if self.sign > 0 { "+" } else { "-" }, base.join(","), dirs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_directions_pick_up_the_permutation_sign() {
        let c = OrientedCell::new(vec![0, 0, 0], vec![2, 0], 1).unwrap();
        assert_eq!(c.dirs, vec![0, 2]);
        assert_eq!(c.sign, -1);
        let c = OrientedCell::new(vec![0, 0, 0], vec![2, 1, 0], 1).unwrap();
        assert_eq!(c.dirs, vec![0, 1, 2]);
        assert_eq!(c.sign, -1);
        let c = OrientedCell::new(vec![0, 0, 0], vec![1, 2, 0], 1).unwrap();
        assert_eq!(c.sign, 1);
    }

    #[test]
    fn rejects_repeats_and_range() {
        assert!(OrientedCell::new(vec![0, 0], vec![1, 1], 1).is_err());
        assert!(OrientedCell::new(vec![0, 0], vec![2], 1).is_err());
        assert!(OrientedCell::new(vec![0, 0], vec![0], 0).is_err());
    }

    #[test]
    fn double_negation_is_identity() {
        let c = OrientedCell::plaquette(vec![1, -2], 0, 1);
        assert_eq!(c.neg().neg(), c);
        assert_eq!(c.neg().to_positive(), c);
    }

    #[test]
    fn edge_boundary() {
        let e = OrientedCell::edge(vec![0, 0], 0);
        let b = e.boundary().unwrap();
        assert_eq!(b.coeff(&OrientedCell::vertex(vec![1, 0])), 1);
        assert_eq!(b.coeff(&OrientedCell::vertex(vec![0, 0])), -1);
        assert_eq!(b.support_len(), 2);
        let b = e.neg().boundary().unwrap();
        assert_eq!(b.coeff(&OrientedCell::vertex(vec![1, 0])), -1);
    }

    #[test]
    fn plaquette_boundary_is_counterclockwise() {
        let p = OrientedCell::plaquette(vec![0, 0], 0, 1);
        let b = p.boundary().unwrap();
        assert_eq!(b.support_len(), 4);
        assert_eq!(b.coeff(&OrientedCell::edge(vec![0, 0], 0)), 1);
        assert_eq!(b.coeff(&OrientedCell::edge(vec![1, 0], 1)), 1);
        assert_eq!(b.coeff(&OrientedCell::edge(vec![0, 1], 0)), -1);
        assert_eq!(b.coeff(&OrientedCell::edge(vec![0, 0], 1)), -1);
    }

    #[test]
    fn faces_match_boundary() {
        for c in [
            OrientedCell::edge(vec![1, -2, 0], 1).neg(),
            OrientedCell::plaquette(vec![0, 3, -1], 0, 2),
            OrientedCell::positive(vec![0, 0, 0], vec![0, 1, 2]).neg(),
        ] {
            let mut chain = Chain::zero(c.dim() - 1);
            for (f, q) in c.faces() {
                chain.add(&f, q);
            }
            assert_eq!(chain, c.boundary().unwrap());
            assert_eq!(c.faces().len(), 2 * c.dim());
        }
        assert!(OrientedCell::vertex(vec![0]).faces().is_empty());
    }

    #[test]
    fn vertex_has_no_boundary() {
        assert!(OrientedCell::vertex(vec![0, 0]).boundary().is_err());
    }

    #[test]
    fn cofaces_count() {
        let e = OrientedCell::edge(vec![0, 0, 0, 0], 2);
        assert_eq!(e.cofaces().len(), 6);
        let v = OrientedCell::vertex(vec![0, 0]);
        assert_eq!(v.cofaces().len(), 4);
    }
}
