//! Component decomposition, restrictions, the order on forms and the
//! path statistics built on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::cell::OrientedCell;
use crate::error::{LatticeError, Result};
use crate::form::FormZn;
use crate::lattice_box::LatticeBox;
use crate::path::LatticePath;

/// Connected components of `(supp omega)^+` for a 2-form, where two
/// plaquettes are adjacent iff their boundaries share an edge. Returns the
/// restrictions of `omega`, ordered by their smallest plaquette.
pub fn connected_components(form: &FormZn) -> Vec<FormZn> {
    assert_eq!(form.dim(), 2, "components are defined for 2-forms");
    let cells: Vec<&OrientedCell> = form.support().collect();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut by_edge: BTreeMap<OrientedCell, usize> = BTreeMap::new();
    for (i, p) in cells.iter().enumerate() {
        for (e, _) in p.faces() {
            match by_edge.get(&e) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    by_edge.insert(e, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<&OrientedCell>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(c);
    }
    // roots are the minimal index in each group, and cells are sorted, so
    // iterating roots in order sorts components by their smallest plaquette
    groups.into_values().map(|g| form.restrict(g)).collect()
}

/// `||omega||`, the number of connected components.
pub fn component_count(form: &FormZn) -> usize {
    connected_components(form).len()
}

/// `omega^E`: the sum of the components containing a plaquette whose
/// boundary meets the edge set `edges` (positive edges).
pub fn restrict_to_edges(form: &FormZn, edges: &BTreeSet<OrientedCell>) -> FormZn {
    let mut out = FormZn::zero(2, form.n()).expect("n >= 2");
    for comp in connected_components(form) {
        let touches = comp.support().any(|p| p.boundary().expect("2-cell").support().any(|e| edges.contains(e)));
        if touches {
            out = out.add(&comp).expect("same shape");
        }
    }
    out
}

/// Positive edges of `supp delta omega` that lie on `gamma`.
pub fn delta_on_path(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<BTreeSet<OrientedCell>> {
    let dw = form.delta(lbox)?;
    Ok(gamma.chain().support().filter(|e| dw.contains(e)).cloned().collect())
}

/// `omega^gamma`: components whose coderivative meets `supp gamma`.
pub fn restrict_gamma(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<FormZn> {
    Ok(restrict_to_edges(form, &delta_on_path(form, gamma, lbox)?))
}

/// `omega^{gamma,2}`: components touching some edge of `supp gamma`.
pub fn restrict_gamma2(form: &FormZn, gamma: &LatticePath) -> FormZn {
    restrict_to_edges(form, &gamma.support_set())
}

/// The order `sub <| whole`: `whole` agrees with `sub` on `supp sub`, and
/// `delta sub`, `delta(whole - sub)` have disjoint supports.
pub fn lhd(sub: &FormZn, whole: &FormZn, lbox: &LatticeBox) -> Result<bool> {
    if sub.dim() != whole.dim() || sub.n() != whole.n() {
        return Err(LatticeError::Dimension("lhd needs forms of the same degree and group".into()));
    }
    if sub.iter().any(|(c, v)| whole.get(c) != v) {
        return Ok(false);
    }
    let d1 = sub.delta(lbox)?;
    let d2 = whole.sub(sub)?.delta(lbox)?;
    let disjoint = !d1.support().any(|e| d2.contains(e));
    Ok(disjoint)
}

/// Corner plaquettes: positive plaquettes of the full lattice whose boundary
/// contains at least two edges of `gamma`.
pub fn corner_plaquettes(gamma: &LatticePath) -> BTreeSet<OrientedCell> {
    let edges = gamma.support_set();
    let mut out = BTreeSet::new();
    for e in &edges {
        for p in e.cofaces() {
            let hits = p.boundary().expect("2-cell").support().filter(|f| edges.contains(*f)).count();
            if hits >= 2 {
                out.insert(p);
            }
        }
    }
    out
}

/// Oriented plaquettes of the box bordering `gamma`, oriented so that
/// `boundary(p)[e] = gamma[e]` on the shared edge.
pub fn p_gamma(gamma: &LatticePath, lbox: &LatticeBox) -> Result<BTreeSet<OrientedCell>> {
    let mut out = BTreeSet::new();
    for (e, q) in gamma.chain().iter() {
        if !lbox.contains(e) {
            return Err(LatticeError::OutsideBox(e.to_string()));
        }
        for (p, s) in lbox.coboundary(e)?.iter() {
            out.insert(p.with_sign((s * q) as i8));
        }
    }
    Ok(out)
}

/// `P_{omega,gamma,c}`: support plaquettes with exactly two boundary edges in
/// `supp gamma` and `supp delta omega`.
pub fn corner_set(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<BTreeSet<OrientedCell>> {
    let on = delta_on_path(form, gamma, lbox)?;
    Ok(form.support().filter(|p| p.boundary().expect("2-cell").support().filter(|e| on.contains(*e)).count() == 2).cloned().collect())
}

pub fn corner_count(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<usize> {
    Ok(corner_set(form, gamma, lbox)?.len())
}

/// `V^{gamma,omega}`: vertices where the coderivative of
/// `delta(omega^gamma)` restricted to `supp gamma_R` is nonzero.
pub fn v_set(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<BTreeSet<OrientedCell>> {
    let gr = gamma.gamma_r()?;
    let wg = restrict_gamma(form, gamma, lbox)?;
    let dwg = wg.delta(lbox)?;
    let restricted = dwg.restrict(gr.support());
    let dd = restricted.delta(lbox)?;
    Ok(dd.support().cloned().collect())
}

/// Event E: `|(supp omega^{gamma,2})^+| = ||omega^gamma||` and no corner
/// plaquette of `omega` along `gamma`.
pub fn in_event_e(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<bool> {
    let w2 = restrict_gamma2(form, gamma);
    let wg = restrict_gamma(form, gamma, lbox)?;
    Ok(w2.support_len() == component_count(&wg) && corner_count(form, gamma, lbox)? == 0)
}
