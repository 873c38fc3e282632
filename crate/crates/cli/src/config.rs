//! Plain-text experiment configuration.
//!
//! Grammar, one item per line:
//!
//! ```text
//! file    := line*
//! line    := blank | comment | section | entry
//! comment := ('#' | ';') any*
//! section := '[' name ('.' label)? ']'
//! entry   := key '=' value            (value runs to end of line, trimmed)
//! list    := value (',' value)*
//! ```
//!
//! Entries before the first section belong to the top level. Keys are
//! unique within a section and unknown keys are rejected, so a typo never
//! silently falls back to a default. `[path]` may be repeated with labels
//! (`[path.loop]`, `[path.open]`) for modes that accept several paths.
//!
//! | section   | keys                                                                 |
//! |-----------|----------------------------------------------------------------------|
//! | top level | `mode`                                                               |
//! | `model`   | `m` (2), `n`, `beta`, `kappa`, `half_side`                           |
//! | `path`    | `kind` = rectangle / segment / steps; see [`PathSpec`]               |
//! | `sampler` | `sweeps`, `burn_in` (sweeps/10), `seed` (0), `chains` (1), `batches` (64), `trace` (false) |
//! | `grid`    | `beta`, `kappa` (lists; default 0, 0.25, 0.5, 0.75, 1)             |
//! | `exact`   | `tol` (1e-10), `beta_zero_tol` (1e-12), `full` (false)              |
//! | `predict` | `truncation` (0 = skip the truncated sums)                           |
//! | `render`  | `block` (8), `snapshots` (4), `spacing` (10), `burn_in` (100), `plane` (0,1), `slice`, `window_lo`, `window_hi` |
//! | `lemma`   | `dims` (2,3), `sides` (8,8), `half_side` (10), `forms` (10000), `orders` (2,8), `seed` (0) |
//! | `output`  | `dir` (out)                                                          |

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use couplings::ModelParams;
use lattice_dec::{LatticePath, Rectangle};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Run modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    ExactVerify,
    Sample,
    Predict,
    Render,
    LemmaCheck,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ExactVerify => "exact-verify",
            Mode::Sample => "sample",
            Mode::Predict => "predict",
            Mode::Render => "render",
            Mode::LemmaCheck => "lemma-check",
        }
    }

    /// File stem of the main output.
    pub fn stem(self) -> String {
        self.name().replace('-', "_")
    }
}

/// Sections and the keys each accepts.
const KNOWN: &[(&str, &[&str])] = &[
    ("", &["mode"]),
    ("model", &["m", "n", "beta", "kappa", "half_side"]),
    ("path", &["kind", "corner", "axes", "sides", "orientation", "closed", "arc_start", "arc_len", "start", "dir", "len", "steps"]),
    ("sampler", &["sweeps", "burn_in", "seed", "chains", "batches", "trace"]),
    ("grid", &["beta", "kappa"]),
    ("exact", &["tol", "beta_zero_tol", "full"]),
    ("predict", &["truncation"]),
    ("render", &["block", "snapshots", "spacing", "burn_in", "plane", "slice", "window_lo", "window_hi"]),
    ("lemma", &["dims", "sides", "half_side", "forms", "orders", "seed"]),
    ("output", &["dir"]),
];

/// Parsed but untyped file: section (with label) to key to value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    sections: BTreeMap<String, BTreeMap<String, String>>,
    /// Section names in order of first appearance.
    order: Vec<String>,
}

fn cfg_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut raw = RawConfig::default();
        raw.order.push(String::new());
        raw.sections.insert(String::new(), BTreeMap::new());
        let mut current = String::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| cfg_err(format!("line {lineno}: unclosed section header")))?.trim();
                let base = name.split('.').next().unwrap_or_default();
                if name.is_empty() || !KNOWN.iter().any(|(s, _)| *s == base) {
                    return Err(cfg_err(format!("line {lineno}: unknown section [{name}]")));
                }
                if base != "path" && name != base {
                    return Err(cfg_err(format!("line {lineno}: only [path] takes a label")));
                }
                if raw.sections.contains_key(name) {
                    return Err(cfg_err(format!("line {lineno}: section [{name}] repeated")));
                }
                raw.sections.insert(name.to_string(), BTreeMap::new());
                raw.order.push(name.to_string());
                current = name.to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| cfg_err(format!("line {lineno}: expected key = value")))?;
            let (key, value) = (key.trim(), value.trim());
            let base = current.split('.').next().unwrap_or_default();
            let allowed = KNOWN.iter().find(|(s, _)| *s == base).map(|(_, k)| *k).unwrap_or(&[]);
            if !allowed.contains(&key) {
                let where_ = if current.is_empty() { "top level".to_string() } else { format!("[{current}]") };
                return Err(cfg_err(format!("line {lineno}: unknown key '{key}' in {where_}")));
            }
            if value.is_empty() {
                return Err(cfg_err(format!("line {lineno}: empty value for '{key}'")));
            }
            let sec = raw.sections.get_mut(&current).expect("section exists");
            if sec.insert(key.to_string(), value.to_string()).is_some() {
                return Err(cfg_err(format!("line {lineno}: key '{key}' repeated")));
            }
        }
        Ok(raw)
    }

    fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section).and_then(|s| s.get(key)).map(String::as_str)
    }

    /// Path sections in file order.
    fn path_sections(&self) -> Vec<&str> {
        self.order.iter().filter(|s| *s == "path" || s.starts_with("path.")).map(String::as_str).collect()
    }
}

/// Records every value actually used, defaults included, in canonical form.
struct Resolver<'a> {
    raw: &'a RawConfig,
    resolved: BTreeMap<String, String>,
}

fn parse_value<T: FromStr>(section: &str, key: &str, v: &str) -> Result<T, CliError>
where
    T::Err: Display,
{
    v.parse().map_err(|e| cfg_err(format!("[{section}] {key} = {v}: {e}")))
}

fn parse_list<T: FromStr>(section: &str, key: &str, v: &str) -> Result<Vec<T>, CliError>
where
    T::Err: Display,
{
    v.split(',').map(|s| parse_value(section, key, s.trim())).collect()
}

fn pair<T>(xs: Vec<T>, what: &str) -> Result<[T; 2], CliError> {
    <[T; 2]>::try_from(xs).map_err(|_| cfg_err(format!("{what} takes two values")))
}

fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl<'a> Resolver<'a> {
    fn record(&mut self, section: &str, key: &str, value: String) {
        let name = if section.is_empty() { key.to_string() } else { format!("{section}.{key}") };
        self.resolved.insert(name, value);
    }

    fn opt<T: FromStr + Display>(&mut self, section: &str, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.raw.get(section, key) {
            Some(v) => {
                let x: T = parse_value(section, key, v)?;
                self.record(section, key, x.to_string());
                Ok(Some(x))
            }
            None => Ok(None),
        }
    }

    fn or<T: FromStr + Display>(&mut self, section: &str, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        let x = match self.raw.get(section, key) {
            Some(v) => parse_value(section, key, v)?,
            None => default,
        };
        self.record(section, key, x.to_string());
        Ok(x)
    }

    fn req<T: FromStr + Display>(&mut self, section: &str, key: &str, mode: Mode) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        self.opt(section, key)?.ok_or_else(|| cfg_err(format!("mode {} needs [{section}] {key}", mode.name())))
    }

    fn list_opt<T: FromStr + Display>(&mut self, section: &str, key: &str) -> Result<Option<Vec<T>>, CliError>
    where
        T::Err: Display,
    {
        match self.raw.get(section, key) {
            Some(v) => {
                let xs: Vec<T> = parse_list(section, key, v)?;
                self.record(section, key, join(&xs));
                Ok(Some(xs))
            }
            None => Ok(None),
        }
    }

    fn list_or<T: FromStr + Display + Clone>(&mut self, section: &str, key: &str, default: &[T]) -> Result<Vec<T>, CliError>
    where
        T::Err: Display,
    {
        let xs = match self.raw.get(section, key) {
            Some(v) => parse_list(section, key, v)?,
            None => default.to_vec(),
        };
        self.record(section, key, join(&xs));
        Ok(xs)
    }
}

/// How a path is described in a `[path]` section.
///
/// * `kind = rectangle`: `sides = l_a,l_b` (required), `axes` (0,1),
///   `corner` (centered when absent), `orientation` (1), `closed` (true);
///   an open path takes `arc_len` edges of the loop from position `arc_start`.
/// * `kind = segment`: `start`, `dir`, `len`.
/// * `kind = steps`: `start` and `steps`, a list of signed directions such
///   as `+0,+1,-0` (0-based axes).
#[derive(Clone, Debug, PartialEq)]
pub enum PathSpec {
    Rectangle { rect: Rectangle, closed: bool, arc_start: usize, arc_len: usize },
    Segment { start: Vec<i64>, dir: usize, len: usize },
    Steps { start: Vec<i64>, steps: Vec<(usize, i8)> },
}

impl PathSpec {
    pub fn build(&self) -> Result<LatticePath, CliError> {
        let p = match self {
            PathSpec::Rectangle { rect, closed: true, .. } => LatticePath::rectangle_loop(rect.clone()),
            PathSpec::Rectangle { rect, arc_start, arc_len, .. } => LatticePath::rectangle_arc(rect.clone(), *arc_start, *arc_len),
            PathSpec::Segment { start, dir, len } => LatticePath::segment(start.clone(), *dir, *len),
            PathSpec::Steps { start, steps } => LatticePath::from_steps(start.clone(), steps),
        };
        p.map_err(|e| cfg_err(format!("path: {e}")))
    }
}

fn parse_step(s: &str) -> Result<(usize, i8), CliError> {
    let (sign, rest) = match s.as_bytes().first() {
        Some(b'+') => (1, &s[1..]),
        Some(b'-') => (-1, &s[1..]),
        _ => return Err(cfg_err(format!("step '{s}' needs a sign, e.g. +0 or -1"))),
    };
    let d = rest.parse().map_err(|_| cfg_err(format!("step '{s}' has no direction")))?;
    Ok((d, sign))
}

fn resolve_path(r: &mut Resolver, section: &str, m: usize) -> Result<PathSpec, CliError> {
    let kind: String = r.or(section, "kind", "rectangle".to_string())?;
    let coords = |what: &str, v: &[i64]| -> Result<(), CliError> {
        if v.len() != m {
            return Err(cfg_err(format!("[{section}] {what} needs {m} coordinates")));
        }
        Ok(())
    };
    match kind.as_str() {
        "rectangle" => {
            let sides: Vec<u32> = r.list_opt(section, "sides")?.ok_or_else(|| cfg_err(format!("[{section}] needs sides = l_a,l_b")))?;
            let [la, lb] = sides[..] else { return Err(cfg_err(format!("[{section}] sides takes two values"))) };
            let axes: Vec<usize> = r.list_or(section, "axes", &[0, 1])?;
            let [a, b] = axes[..] else { return Err(cfg_err(format!("[{section}] axes takes two values"))) };
            let corner = match r.list_opt::<i64>(section, "corner")? {
                Some(c) => c,
                None => {
                    let mut c = vec![0i64; m];
                    if a < m && b < m {
                        c[a] = -((la / 2) as i64);
                        c[b] = -((lb / 2) as i64);
                    }
                    r.record(section, "corner", join(&c));
                    c
                }
            };
            coords("corner", &corner)?;
            let orientation: i8 = r.or(section, "orientation", 1)?;
            let rect = Rectangle::new(corner, [a, b], [la, lb], orientation).map_err(|e| cfg_err(format!("[{section}] {e}")))?;
            let closed: bool = r.or(section, "closed", true)?;
            let (arc_start, arc_len) = if closed {
                (0, rect.perimeter())
            } else {
                (
                    r.or(section, "arc_start", 0)?,
                    r.opt(section, "arc_len")?.ok_or_else(|| cfg_err(format!("[{section}] an open rectangle path needs arc_len")))?,
                )
            };
            Ok(PathSpec::Rectangle { rect, closed, arc_start, arc_len })
        }
        "segment" => {
            let start: Vec<i64> = r.list_opt(section, "start")?.ok_or_else(|| cfg_err(format!("[{section}] needs start")))?;
            coords("start", &start)?;
            let dir = r.opt(section, "dir")?.ok_or_else(|| cfg_err(format!("[{section}] needs dir")))?;
            let len = r.opt(section, "len")?.ok_or_else(|| cfg_err(format!("[{section}] needs len")))?;
            Ok(PathSpec::Segment { start, dir, len })
        }
        "steps" => {
            let start: Vec<i64> = r.list_opt(section, "start")?.ok_or_else(|| cfg_err(format!("[{section}] needs start")))?;
            coords("start", &start)?;
            let text = r.raw.get(section, "steps").ok_or_else(|| cfg_err(format!("[{section}] needs steps")))?;
            let steps = text.split(',').map(|s| parse_step(s.trim())).collect::<Result<Vec<_>, _>>()?;
            let canon: Vec<String> = steps.iter().map(|(d, s)| format!("{}{d}", if *s > 0 { '+' } else { '-' })).collect();
            r.record(section, "steps", canon.join(","));
            Ok(PathSpec::Steps { start, steps })
        }
        other => Err(cfg_err(format!("[{section}] unknown path kind '{other}'"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerSpec {
    pub sweeps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub chains: usize,
    pub batches: usize,
    pub trace: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub block: usize,
    pub snapshots: usize,
    pub spacing: u64,
    pub burn_in: u64,
    pub plane: [usize; 2],
    pub slice: Vec<i64>,
    pub window_lo: [i64; 2],
    pub window_hi: [i64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaSpec {
    pub dims: Vec<usize>,
    pub sides: [u32; 2],
    pub half_side: i64,
    pub forms: usize,
    pub orders: (u32, u32),
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactSpec {
    pub betas: Vec<f64>,
    pub kappas: Vec<f64>,
    pub tol: f64,
    pub beta_zero_tol: f64,
    pub full: bool,
}

/// A fully resolved configuration for one mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Model parameters; for exact-verify, `beta` and `kappa` are replaced
    /// by the grid.
    pub params: Option<ModelParams>,
    /// Labelled paths in file order.
    pub paths: Vec<(String, PathSpec)>,
    pub sampler: SamplerSpec,
    pub exact: Option<ExactSpec>,
    pub render: Option<RenderSpec>,
    pub lemma: Option<LemmaSpec>,
    pub truncation: usize,
    pub out_dir: std::path::PathBuf,
    /// Every key that influenced the run, after defaults and overrides.
    /// The output directory is excluded: it locates results rather than
    /// producing them.
    pub resolved: BTreeMap<String, String>,
}

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<std::path::PathBuf>,
}

const DEFAULT_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

impl ExperimentConfig {
    pub fn from_text(text: &str, mode: Mode, ov: &Overrides) -> Result<Self, CliError> {
        let raw = RawConfig::parse(text)?;
        Self::resolve(&raw, mode, ov)
    }

    pub fn resolve(raw: &RawConfig, mode: Mode, ov: &Overrides) -> Result<Self, CliError> {
        if let Some(m) = raw.get("", "mode") {
            if m != mode.name() {
                return Err(cfg_err(format!("config is for mode {m}, invoked as {}", mode.name())));
            }
        }
        let mut r = Resolver { raw, resolved: BTreeMap::new() };
        r.record("", "mode", mode.name().to_string());

        let seed = match ov.seed {
            Some(s) => {
                r.record("sampler", "seed", s.to_string());
                s
            }
            None => r.or("sampler", "seed", 0u64)?,
        };

        let needs_model = mode != Mode::LemmaCheck;
        let params = if needs_model {
            let m: usize = r.or("model", "m", 2)?;
            let n: u32 = r.req("model", "n", mode)?;
            let half: i64 = r.req("model", "half_side", mode)?;
            let (beta, kappa) = if mode == Mode::ExactVerify { (0.0, 0.0) } else { (r.req("model", "beta", mode)?, r.req("model", "kappa", mode)?) };
            Some(ModelParams::new(m, n, beta, kappa, half).map_err(|e| cfg_err(format!("[model] {e}")))?)
        } else {
            None
        };

        let mut paths = Vec::new();
        if let Some(p) = &params {
            let sections = raw.path_sections();
            if sections.is_empty() && mode != Mode::ExactVerify {
                return Err(cfg_err(format!("mode {} needs a [path] section", mode.name())));
            }
            if sections.len() > 1 && mode != Mode::ExactVerify {
                return Err(cfg_err(format!("mode {} takes exactly one [path] section", mode.name())));
            }
            for s in sections {
                let label = s.strip_prefix("path.").unwrap_or("path").to_string();
                paths.push((label, resolve_path(&mut r, s, p.m)?));
            }
            if paths.is_empty() {
                // exact-verify default: a unit plaquette loop and an open 2-edge path
                let mut corner = vec![0i64; p.m];
                corner[0] = 0;
                let rect = Rectangle::new(corner, [0, 1], [1, 1], 1).map_err(|e| cfg_err(e.to_string()))?;
                paths.push(("loop".into(), PathSpec::Rectangle { rect, closed: true, arc_start: 0, arc_len: 4 }));
                let mut start = vec![0i64; p.m];
                start[0] = -1;
                paths.push(("open".into(), PathSpec::Segment { start, dir: 0, len: 2 }));
                r.record("path", "default", "loop: unit square at origin; open: 2 edges from -e0 along e0".into());
            }
            for (label, spec) in &paths {
                let g = spec.build()?;
                let lbox = lattice_dec::LatticeBox::centered(p.m, p.half_side).map_err(|e| cfg_err(e.to_string()))?;
                for e in g.support_set() {
                    if !lbox.contains(&e) {
                        return Err(CliError::Guard(format!("path {label}: edge {e} lies outside the box")));
                    }
                }
            }
        } else if !raw.path_sections().is_empty() {
            return Err(cfg_err("lemma-check builds its own paths; remove [path]"));
        }

        let sampler = if mode == Mode::Sample {
            let sweeps: u64 = r.req("sampler", "sweeps", mode)?;
            SamplerSpec {
                sweeps,
                burn_in: r.or("sampler", "burn_in", sweeps / 10)?,
                seed,
                chains: r.or("sampler", "chains", 1)?,
                batches: r.or("sampler", "batches", ht_sampler::DEFAULT_BATCHES)?,
                trace: r.or("sampler", "trace", false)?,
            }
        } else {
            SamplerSpec { sweeps: 0, burn_in: 0, seed, chains: 0, batches: 0, trace: false }
        };

        let exact = if mode == Mode::ExactVerify {
            let spec = ExactSpec {
                betas: r.list_or("grid", "beta", &DEFAULT_GRID)?,
                kappas: r.list_or("grid", "kappa", &DEFAULT_GRID)?,
                tol: r.or("exact", "tol", 1e-10)?,
                beta_zero_tol: r.or("exact", "beta_zero_tol", 1e-12)?,
                full: r.or("exact", "full", false)?,
            };
            if spec.betas.iter().chain(&spec.kappas).any(|x| !x.is_finite() || *x < 0.0) {
                return Err(cfg_err("[grid] couplings must be finite and nonnegative"));
            }
            Some(spec)
        } else {
            None
        };

        let render = if mode == Mode::Render {
            let p = params.as_ref().expect("render has a model");
            let plane: Vec<usize> = r.list_or("render", "plane", &[0, 1])?;
            let [a, b] = plane[..] else { return Err(cfg_err("[render] plane takes two axes")) };
            if a >= b || b >= p.m {
                return Err(cfg_err(format!("[render] plane axes must satisfy a < b < {}", p.m)));
            }
            let slice: Vec<i64> = r.list_or("render", "slice", &vec![0; p.m])?;
            if slice.len() != p.m {
                return Err(cfg_err(format!("[render] slice needs {} coordinates", p.m)));
            }
            let lo = pair(r.list_or("render", "window_lo", &[-p.half_side, -p.half_side])?, "[render] window_lo")?;
            let hi = pair(r.list_or("render", "window_hi", &[p.half_side, p.half_side])?, "[render] window_hi")?;
            Some(RenderSpec {
                block: r.or("render", "block", 8)?,
                snapshots: r.or("render", "snapshots", 4)?,
                spacing: r.or("render", "spacing", 10)?,
                burn_in: r.or("render", "burn_in", 100)?,
                plane: [a, b],
                slice,
                window_lo: lo,
                window_hi: hi,
            })
        } else {
            None
        };

        let lemma = if mode == Mode::LemmaCheck {
            let sides: Vec<u32> = r.list_or("lemma", "sides", &[8, 8])?;
            let orders: Vec<u32> = r.list_or("lemma", "orders", &[2, 8])?;
            let [s0, s1] = pair(sides, "[lemma] sides")?;
            let [o0, o1] = pair(orders, "[lemma] orders")?;
            let spec = LemmaSpec {
                dims: r.list_or("lemma", "dims", &[2, 3])?,
                sides: [s0, s1],
                half_side: r.or("lemma", "half_side", 10)?,
                forms: r.or("lemma", "forms", 10_000)?,
                orders: (o0, o1),
                seed: match ov.seed {
                    Some(s) => {
                        r.record("lemma", "seed", s.to_string());
                        s
                    }
                    None => r.or("lemma", "seed", 0)?,
                },
            };
            if o0 < 2 || o1 < o0 {
                return Err(cfg_err("[lemma] orders must be lo,hi with 2 <= lo <= hi"));
            }
            if spec.dims.iter().any(|&m| m < 2) {
                return Err(cfg_err("[lemma] dims must be at least 2"));
            }
            if s0.min(s1) + 4 > 2 * spec.half_side as u32 {
                return Err(CliError::Guard("[lemma] rectangle plus window does not fit in the box".into()));
            }
            Some(spec)
        } else {
            None
        };

        let truncation = if mode == Mode::Predict { r.or("predict", "truncation", 0usize)? } else { 0 };
        if truncation != 0 && truncation < bounds::MIN_TRUNCATION {
            return Err(cfg_err(format!("[predict] truncation must be 0 or at least {}", bounds::MIN_TRUNCATION)));
        }

        let out_dir = match &ov.out {
            Some(d) => d.clone(),
            None => raw.get("output", "dir").unwrap_or("out").into(),
        };

        // keys present in the file but never consulted by this mode are
        // reported rather than ignored
        for (section, keys) in &raw.sections {
            let base = section.split('.').next().unwrap_or_default();
            for key in keys.keys() {
                let name = if section.is_empty() { key.clone() } else { format!("{section}.{key}") };
                let used = r.resolved.contains_key(&name) || (base == "output" && key == "dir") || (section.is_empty() && key == "mode");
                if !used {
                    return Err(cfg_err(format!("{name} is not used by mode {}", mode.name())));
                }
            }
        }

        Ok(Self { mode, params, paths, sampler, exact, render, lemma, truncation, out_dir, resolved: r.resolved })
    }

    /// One `key = value` line per resolved key, sorted.
    pub fn canonical_text(&self) -> String {
        self.resolved.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// SHA-256 of [`canonical_text`](Self::canonical_text), hex encoded.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn seed(&self) -> u64 {
        self.lemma.as_ref().map(|l| l.seed).unwrap_or(self.sampler.seed)
    }

    /// The single path of modes that take one.
    pub fn path(&self) -> Result<LatticePath, CliError> {
        self.paths.first().ok_or_else(|| cfg_err("no path configured"))?.1.build()
    }
}
