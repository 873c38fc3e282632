use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cell::OrientedCell;
use crate::chain::Chain;
use crate::error::{LatticeError, Result};
use crate::lattice_box::LatticeBox;

/// A Z_n-valued k-form, stored on positive cells with values in 1..n.
///
/// `omega(-c) = -omega(c) mod n`; absent cells carry 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormZn {
    dim: usize,
    n: u32,
    values: BTreeMap<OrientedCell, u32>,
}

pub(crate) fn reduce(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

impl FormZn {
    pub fn zero(dim: usize, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(LatticeError::GroupOrder(n));
        }
        Ok(Self { dim, n, values: BTreeMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Sets the value on an oriented cell; the stored positive value is
    /// adjusted by the orientation.
    pub fn set(&mut self, cell: &OrientedCell, value: i64) {
        assert_eq!(cell.dim(), self.dim, "cell dimension does not match form");
        let v = reduce(value * cell.sign as i64, self.n);
        let key = cell.to_positive();
        if v == 0 {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn get(&self, cell: &OrientedCell) -> u32 {
        let key = cell.to_positive();
        let v = self.values.get(&key).copied().unwrap_or(0);
        if cell.sign > 0 {
            v
        } else {
            reduce(-(v as i64), self.n)
        }
    }

    /// Positive support cells in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &OrientedCell> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrientedCell, u32)> {
        self.values.iter().map(|(c, &v)| (c, v))
    }

    /// `|(supp omega)^+|`.
    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, cell: &OrientedCell) -> bool {
        self.values.contains_key(&cell.to_positive())
    }

    /// `omega(q)` for a chain q of the same dimension.
    pub fn eval_chain(&self, q: &Chain) -> u32 {
        debug_assert_eq!(q.dim(), self.dim);
        let s: i64 = q.iter().map(|(c, k)| k * self.get(c) as i64).sum();
        reduce(s, self.n)
    }

    fn check_compatible(&self, other: &FormZn) -> Result<()> {
        if self.dim != other.dim || self.n != other.n {
            return Err(LatticeError::Dimension(format!("forms differ: ({}, Z_{}) vs ({}, Z_{})", self.dim, self.n, other.dim, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &FormZn) -> Result<FormZn> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &FormZn) -> Result<FormZn> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &FormZn, s: i64) -> Result<FormZn> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, v) in other.iter() {
            let cur = out.get(c) as i64;
            out.set(c, cur + s * v as i64);
        }
        Ok(out)
    }

    /// `omega` restricted to a set of positive cells.
    pub fn restrict<'a>(&self, cells: impl IntoIterator<Item = &'a OrientedCell>) -> FormZn {
        let mut out = FormZn { dim: self.dim, n: self.n, values: BTreeMap::new() };
        for c in cells {
            let v = self.get(&c.to_positive());
            if v != 0 {
                out.values.insert(c.to_positive(), v);
            }
        }
        out
    }

    /// Exterior derivative `d omega(c) = omega(boundary c)` on every
    /// (k+1)-cell of the box.
    pub fn d(&self, lbox: &LatticeBox) -> Result<FormZn> {
        if self.dim + 1 > lbox.m() {
            return Err(LatticeError::Dimension(format!("d of a {}-form in m = {}", self.dim, lbox.m())));
        }
        let mut candidates = BTreeSet::new();
        for c in self.support() {
            for cf in c.cofaces() {
                if lbox.contains(&cf) {
                    candidates.insert(cf);
                }
            }
        }
        let mut out = FormZn::zero(self.dim + 1, self.n)?;
        for c in candidates {
            let v = self.eval_chain(&c.boundary()?);
            out.set(&c, v as i64);
        }
        Ok(out)
    }

    /// Coderivative `delta omega(c) = omega(coboundary c)` with the
    /// coboundary clipped to the box.
    pub fn delta(&self, lbox: &LatticeBox) -> Result<FormZn> {
        if self.dim == 0 {
            return Err(LatticeError::Dimension("delta of a 0-form".into()));
        }
        // delta omega(c) = sum over box cells c' of boundary(c')[c] omega(c');
        // only support cells contribute, so accumulate from them.
        let mut acc: BTreeMap<OrientedCell, i64> = BTreeMap::new();
        for (c, v) in self.iter() {
            if !lbox.contains(c) {
                continue;
            }
            for (f, q) in c.faces() {
                *acc.entry(f).or_insert(0) += q * v as i64;
            }
        }
        let mut out = FormZn::zero(self.dim - 1, self.n)?;
        for (c, v) in acc {
            out.set(&c, v);
        }
        Ok(out)
    }

    /// Line-based text serialization: a header line, then one
    /// `base dirs value` line per positive support cell, e.g. `0,-1 0,1 2`.
    /// A vertex has dirs written as `-`.
    pub fn to_text(&self) -> String {
        let mut s = format!("form dim={} n={}\n", self.dim, self.n);
        for (c, v) in self.iter() {
            let base: Vec<String> = c.base.iter().map(|x| x.to_string()).collect();
            let dirs: Vec<String> = c.dirs.iter().map(|x| x.to_string()).collect();
            let dirs = if dirs.is_empty() { "-".to_string() } else { dirs.join(",") };
            let _ = writeln!(s, "{} {} {}", base.join(","), dirs, v);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<FormZn> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(LatticeError::Parse { line: 1, msg: "empty input".into() })?;
        let mut dim = None;
        let mut n = None;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("form") {
            return Err(LatticeError::Parse { line: 1, msg: "expected `form` header".into() });
        }
        for p in parts {
            match p.split_once('=') {
                Some(("dim", v)) => dim = v.parse().ok(),
                Some(("n", v)) => n = v.parse().ok(),
                _ => return Err(LatticeError::Parse { line: 1, msg: format!("bad header field `{p}`") }),
            }
        }
        let (dim, n) = match (dim, n) {
            (Some(d), Some(n)) => (d, n),
            _ => return Err(LatticeError::Parse { line: 1, msg: "header needs dim and n".into() }),
        };
        let mut form = FormZn::zero(dim, n)?;
        for (i, line) in lines {
            let err = |msg: &str| LatticeError::Parse { line: i + 1, msg: msg.to_string() };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(err("expected `base dirs value`"));
            }
            let base: Vec<i64> = f[0].split(',').map(|x| x.parse()).collect::<std::result::Result<_, _>>().map_err(|_| err("bad base"))?;
            let dirs: Vec<usize> = if f[1] == "-" {
                Vec::new()
            } else {
                f[1].split(',').map(|x| x.parse()).collect::<std::result::Result<_, _>>().map_err(|_| err("bad dirs"))?
            };
            let value: i64 = f[2].parse().map_err(|_| err("bad value"))?;
            let cell = OrientedCell::new(base, dirs, 1)?;
            if cell.dim() != dim {
                return Err(err("cell dimension does not match header"));
            }
            form.set(&cell, value);
        }
        Ok(form)
    }
}

/// Random 2-form: each positive plaquette of the box is independently
/// nonzero with probability `density`, with a uniform value in 1..n.
/// Uses ChaCha8 seeded from `seed`, so the result is platform independent.
pub fn random_form(lbox: &LatticeBox, n: u32, density: f64, seed: u64) -> Result<FormZn> {
    if !(0.0..=1.0).contains(&density) {
        return Err(LatticeError::Density(density));
    }
    let mut form = FormZn::zero(2, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in lbox.cells(2) {
        let u: f64 = rng.random();
        if u < density {
            let v = rng.random_range(1..n);
            form.set(&p, v as i64);
        }
    }
    Ok(form)
}
