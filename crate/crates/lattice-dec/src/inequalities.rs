//! Integer statistics of a 2-form along a rectangular path, and the
//! geometric inequalities relating them.

use std::collections::{BTreeMap, BTreeSet};

use crate::cell::OrientedCell;
use crate::error::{LatticeError, Result};
use crate::form::FormZn;
use crate::geometry::connected_components;
use crate::lattice_box::LatticeBox;
use crate::path::LatticePath;

/// Counts entering the inequalities. All sets are of positive cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormStats {
    /// `|(supp omega)^+|`
    pub support: usize,
    /// `|(supp delta omega)^+|`
    pub delta_support: usize,
    /// `|supp delta omega ∩ supp gamma|`
    pub delta_on_gamma: usize,
    /// `|supp delta omega ∩ supp gamma_R|`
    pub delta_on_gamma_r: usize,
    /// `|P_{omega,gamma,c}|`
    pub corners: usize,
    /// `|V^{gamma,omega}|`
    pub v: usize,
    /// `||omega^gamma||`
    pub gamma_components: usize,
    /// `|supp gamma_R|`
    pub gamma_r_len: usize,
    /// shorter rectangle side
    pub l1: usize,
}

impl FormStats {
    pub fn compute(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<Self> {
        Self::with_components(form, &connected_components(form), gamma, lbox)
    }

    /// Same as [`FormStats::compute`] with the component decomposition of
    /// `form` supplied by the caller.
    pub fn with_components(form: &FormZn, comps: &[FormZn], gamma: &LatticePath, lbox: &LatticeBox) -> Result<Self> {
        let rect = gamma.rect().ok_or(LatticeError::MissingRectangle)?;
        let gr = gamma.gamma_r()?;
        let dw = form.delta(lbox)?;
        let on: BTreeSet<OrientedCell> = gamma.chain().support().filter(|e| dw.contains(e)).cloned().collect();
        // support plaquettes with an edge in `on`, and how many such edges each has
        let mut touching: BTreeMap<OrientedCell, usize> = BTreeMap::new();
        for e in &on {
            for p in e.cofaces() {
                if form.contains(&p) {
                    *touching.entry(p).or_insert(0) += 1;
                }
            }
        }
        let corners = touching.values().filter(|&&k| k == 2).count();
        let hit: Vec<&FormZn> = comps.iter().filter(|c| touching.keys().any(|p| c.contains(p))).collect();
        let gamma_components = hit.len();
        // distinct components have disjoint delta supports, so when every
        // component meets gamma the delta of omega^gamma is delta omega
        let dwg = if gamma_components == comps.len() {
            dw.clone()
        } else {
            let mut wg = FormZn::zero(2, form.n())?;
            for c in hit {
                wg = wg.add(c)?;
            }
            wg.delta(lbox)?
        };
        let v = dwg.restrict(gr.support()).delta(lbox)?.support_len();
        Ok(Self {
            support: form.support_len(),
            delta_support: dw.support_len(),
            delta_on_gamma: on.len(),
            delta_on_gamma_r: gr.support().filter(|e| dw.contains(e)).count(),
            corners,
            v,
            gamma_components,
            gamma_r_len: gr.support_len(),
            l1: rect.side_lengths().0 as usize,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub name: &'static str,
    /// Whether the hypotheses of the inequality are met.
    pub applicable: bool,
    /// Conclusion; `true` when not applicable.
    pub holds: bool,
}

fn check(name: &'static str, applicable: bool, holds: bool) -> InequalityCheck {
    InequalityCheck { name, applicable, holds: !applicable || holds }
}

/// Evaluates every inequality on one form. Names are stable identifiers used
/// in reports.
pub fn check_all(form: &FormZn, gamma: &LatticePath, lbox: &LatticeBox) -> Result<Vec<InequalityCheck>> {
    let comps = connected_components(form);
    let s = FormStats::with_components(form, &comps, gamma, lbox)?;
    let parts = if comps.len() == 1 {
        vec![s.clone()]
    } else {
        comps.iter().map(|c| FormStats::with_components(c, std::slice::from_ref(c), gamma, lbox)).collect::<Result<Vec<_>>>()?
    };
    let sum = |f: fn(&FormStats) -> usize| parts.iter().map(f).sum::<usize>();

    let supp = s.support as i64;
    let dsupp = s.delta_support as i64;
    let dog = s.delta_on_gamma as i64;
    let corners = s.corners as i64;
    let v = s.v as i64;
    let norm = s.gamma_components as i64;
    let l1 = s.l1 as i64;

    let hyp_85 = l1 >= 8 && norm > 0 && supp + dsupp + 2 * corners <= 3 * dog;
    Ok(vec![
        check("split.support", true, s.support == sum(|p| p.support)),
        check("split.delta_support", true, s.delta_support == sum(|p| p.delta_support)),
        check("split.delta_on_gamma", true, s.delta_on_gamma == sum(|p| p.delta_on_gamma)),
        check("split.corners", true, s.corners == sum(|p| p.corners)),
        check("split.v_subadditive", true, s.v <= sum(|p| p.v)),
        check("support_covers_path", l1 >= 2, supp + corners >= dog),
        check("support_plus_delta", l1 >= 8, supp + dsupp >= 3 * dog + v - 3 * corners),
        check("support_plus_delta_components", l1 >= 8 && s.delta_on_gamma < s.gamma_r_len, supp + dsupp + 3 * corners >= 3 * dog + 2 * norm),
        check("long_support", hyp_85, supp >= l1 && s.delta_on_gamma_r as i64 >= l1 + 2),
    ])
}
