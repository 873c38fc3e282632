use std::collections::HashMap;

use crate::cell::OrientedCell;
use crate::error::{LatticeError, Result};
use crate::form::{reduce, FormZn};
use crate::lattice_box::LatticeBox;
use crate::path::LatticePath;

/// Dense indexing of the vertices, edges and plaquettes of a box, with
/// precomputed incidences. Index order is the canonical cell order.
#[derive(Clone, Debug)]
pub struct IndexedComplex {
    lbox: LatticeBox,
    pub vertices: Vec<OrientedCell>,
    pub edges: Vec<OrientedCell>,
    pub plaquettes: Vec<OrientedCell>,
    vertex_index: HashMap<OrientedCell, usize>,
    edge_index: HashMap<OrientedCell, usize>,
    plaquette_index: HashMap<OrientedCell, usize>,
    /// (start, end) vertex of each positive edge.
    pub edge_ends: Vec<(usize, usize)>,
    /// The four boundary edges of each plaquette with their signs.
    pub plaquette_edges: Vec<[(usize, i8); 4]>,
    /// Plaquettes in the box containing each edge, with `boundary(p)[e]`.
    pub edge_plaquettes: Vec<Vec<(usize, i8)>>,
}

impl IndexedComplex {
    pub fn new(lbox: &LatticeBox) -> Self {
        let vertices = lbox.cells(0);
        let edges = lbox.cells(1);
        let plaquettes = lbox.cells(2);
        let index = |cells: &[OrientedCell]| -> HashMap<OrientedCell, usize> { cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect() };
        let vertex_index = index(&vertices);
        let edge_index = index(&edges);
        let plaquette_index = index(&plaquettes);

        let edge_ends = edges
            .iter()
            .map(|e| {
                let start = vertex_index[&OrientedCell::vertex(e.base.clone())];
                let mut top = e.base.clone();
                top[e.dirs[0]] += 1;
                (start, vertex_index[&OrientedCell::vertex(top)])
            })
            .collect();

        let mut edge_plaquettes = vec![Vec::new(); edges.len()];
        let plaquette_edges = plaquettes
            .iter()
            .enumerate()
            .map(|(pi, p)| {
                let b = p.boundary().expect("plaquette has a boundary");
                let mut arr = [(0usize, 0i8); 4];
                for (slot, (e, q)) in arr.iter_mut().zip(b.iter()) {
                    let ei = edge_index[e];
                    *slot = (ei, q as i8);
                    edge_plaquettes[ei].push((pi, q as i8));
                }
                arr
            })
            .collect();

        Self { lbox: lbox.clone(), vertices, edges, plaquettes, vertex_index, edge_index, plaquette_index, edge_ends, plaquette_edges, edge_plaquettes }
    }

    pub fn lattice_box(&self) -> &LatticeBox {
        &self.lbox
    }

    pub fn vertex_id(&self, c: &OrientedCell) -> Option<usize> {
        self.vertex_index.get(&c.to_positive()).copied()
    }

    pub fn edge_id(&self, c: &OrientedCell) -> Option<usize> {
        self.edge_index.get(&c.to_positive()).copied()
    }

    pub fn plaquette_id(&self, c: &OrientedCell) -> Option<usize> {
        self.plaquette_index.get(&c.to_positive()).copied()
    }

    /// Dense plaquette values of a 2-form (cells outside the box are an error).
    pub fn dense_form(&self, form: &FormZn) -> Result<Vec<u32>> {
        if form.dim() != 2 {
            return Err(LatticeError::Dimension("dense_form expects a 2-form".into()));
        }
        let mut out = vec![0; self.plaquettes.len()];
        for (c, v) in form.iter() {
            let i = self.plaquette_id(c).ok_or_else(|| LatticeError::OutsideBox(c.to_string()))?;
            out[i] = v;
        }
        Ok(out)
    }

    pub fn sparse_form(&self, values: &[u32], n: u32) -> Result<FormZn> {
        let mut f = FormZn::zero(2, n)?;
        for (p, &v) in self.plaquettes.iter().zip(values) {
            f.set(p, v as i64);
        }
        Ok(f)
    }

    /// `delta omega` on every positive edge, from dense plaquette values.
    pub fn delta_dense(&self, values: &[u32], n: u32) -> Vec<u32> {
        self.edge_plaquettes.iter().map(|ps| reduce(ps.iter().map(|&(p, s)| s as i64 * values[p] as i64).sum(), n)).collect()
    }

    /// Path coefficient on every positive edge; errors if the path leaves the box.
    pub fn dense_path(&self, path: &LatticePath) -> Result<Vec<i8>> {
        let mut out = vec![0i8; self.edges.len()];
        for (e, q) in path.chain().iter() {
            let i = self.edge_id(e).ok_or_else(|| LatticeError::OutsideBox(e.to_string()))?;
            out[i] = q as i8;
        }
        Ok(out)
    }
}
