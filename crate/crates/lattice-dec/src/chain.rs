use std::collections::BTreeMap;

use crate::cell::OrientedCell;
use crate::error::{LatticeError, Result};

/// Finite formal integer combination of k-cells.
///
/// Only positive cells are stored; the coefficient of `-c` is `-q[c]`.
/// Zero coefficients are never kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    coeffs: BTreeMap<OrientedCell, i64>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: BTreeMap::new() }
    }

    pub fn from_cells<'a>(dim: usize, cells: impl IntoIterator<Item = (&'a OrientedCell, i64)>) -> Result<Self> {
        let mut c = Self::zero(dim);
        for (cell, q) in cells {
            if cell.dim() != dim {
                return Err(LatticeError::Dimension(format!("cell {cell} has dimension {}, chain has {dim}", cell.dim())));
            }
            c.add(cell, q);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `q` times the oriented cell `cell`.
    pub fn add(&mut self, cell: &OrientedCell, q: i64) {
        debug_assert_eq!(cell.dim(), self.dim);
        if q == 0 {
            return;
        }
        let key = cell.to_positive();
        let q = q * cell.sign as i64;
        let entry = self.coeffs.entry(key).or_insert(0);
        *entry += q;
        if *entry == 0 {
            let key = cell.to_positive();
            self.coeffs.remove(&key);
        }
    }

    pub fn add_chain(&mut self, other: &Chain, scale: i64) {
        for (c, &q) in &other.coeffs {
            self.add(c, scale * q);
        }
    }

    /// Coefficient of an oriented cell, honoring q[-c] = -q[c].
    pub fn coeff(&self, cell: &OrientedCell) -> i64 {
        let key = cell.to_positive();
        self.coeffs.get(&key).copied().unwrap_or(0) * cell.sign as i64
    }

    /// Positive cells with nonzero coefficient, canonical order.
    pub fn support(&self) -> impl Iterator<Item = &OrientedCell> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrientedCell, i64)> {
        self.coeffs.iter().map(|(c, &q)| (c, q))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn contains(&self, cell: &OrientedCell) -> bool {
        self.coeffs.contains_key(&cell.to_positive())
    }

    /// Boundary of the chain, extended linearly.
    pub fn boundary(&self) -> Result<Chain> {
        if self.dim == 0 {
            return Err(LatticeError::Dimension("boundary of a 0-chain".into()));
        }
        let mut out = Chain::zero(self.dim - 1);
        for (c, q) in self.iter() {
            out.add_chain(&c.boundary()?, q);
        }
        Ok(out)
    }
}
