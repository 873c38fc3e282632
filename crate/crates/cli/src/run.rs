use std::path::PathBuf;
use std::time::Instant;

use bounds::{appendix_sums, constants, BoundReport, BoundsError, GammaStats};
use couplings::{eta, eta_hat, lemmas, xi, ModelParams};
use exact_oracle::ExactModel;
use ht_sampler::{estimate_with_runs, sample_tilted_snapshots, HeatBath, RunPlan, Schedule};
use lattice_dec::{LatticeBox, LatticePath};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Mode};
use crate::output::{csv_document, json_document, out_path, schema, write_atomic};
use crate::render::{render_pgm, PlaneWindow};
use crate::trials::geometric_trials;
use crate::CliError;

/// Relative slack for floating-point comparisons of exact values against
/// lower bounds.
const FLOOR_SLACK: f64 = 1e-12;

/// One pass/fail line of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOutcome {
    /// Files written, in order; the timing file is last.
    pub files: Vec<PathBuf>,
    pub checks: Vec<Check>,
    /// Mode-specific result, as written into the main output.
    pub result: Value,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            3
        }
    }
}

/// Runs the configured mode and writes its outputs under `cfg.out_dir`.
/// Besides the main output every mode writes `<mode>_checks.csv` and
/// `<mode>_timing.json`; the latter holds the wall time and is the only
/// file whose bytes vary between identical runs.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let start = Instant::now();
    let mut out = match cfg.mode {
        Mode::ExactVerify => exact_verify(cfg)?,
        Mode::Sample => sample(cfg)?,
        Mode::Predict => predict(cfg)?,
        Mode::Render => render(cfg)?,
        Mode::LemmaCheck => lemma_check(cfg)?,
    };
    let stem = cfg.mode.stem();
    let checks = out_path(cfg, &format!("{stem}_checks.csv"));
    write_atomic(&checks, &csv_document(cfg, &format!("{}-checks", cfg.mode.name()), &out.checks)?)?;
    out.files.push(checks);
    let timing = out_path(cfg, &format!("{stem}_timing.json"));
    let doc = json_document(cfg, "timing", json!({ "wall_seconds": start.elapsed().as_secs_f64() }));
    write_atomic(&timing, &doc)?;
    out.files.push(timing);
    Ok(out)
}

fn params(cfg: &ExperimentConfig) -> ModelParams {
    cfg.params.expect("mode with a model")
}

fn powu(x: f64, k: usize) -> f64 {
    x.powi(k as i32)
}

#[derive(Serialize)]
struct ExactRow {
    path: String,
    beta: f64,
    kappa: f64,
    gauge_value: f64,
    form_value: f64,
    abs_diff: f64,
    full_value: Option<f64>,
    full_diff: Option<f64>,
    eta_hat_pow: f64,
    eta_pow: f64,
}

fn exact_verify(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let base = params(cfg);
    let spec = cfg.exact.as_ref().expect("exact section resolved");
    let paths = cfg.paths.iter().map(|(l, s)| Ok((l.clone(), s.build()?))).collect::<Result<Vec<(String, LatticePath)>, CliError>>()?;
    let mut rows = Vec::new();
    for (label, g) in &paths {
        for &beta in &spec.betas {
            for &kappa in &spec.kappas {
                let p = ModelParams::new(base.m, base.n, beta, kappa, base.half_side).map_err(|e| CliError::Config(e.to_string()))?;
                let model = ExactModel::new(p)?;
                let gauge = model.wilson_unitary(g)?.value;
                let form = model.wilson_hat_form(g)?.value;
                let full = if spec.full { Some(model.wilson_full(g)?.value) } else { None };
                rows.push(ExactRow {
                    path: label.clone(),
                    beta,
                    kappa,
                    gauge_value: gauge,
                    form_value: form,
                    abs_diff: (gauge - form).abs(),
                    full_value: full,
                    full_diff: full.map(|f| (f - gauge).abs()),
                    eta_hat_pow: powu(eta_hat(kappa, p.n), g.len()),
                    eta_pow: powu(eta(kappa, p.n), g.len()),
                });
            }
        }
    }

    let mut checks = Vec::new();
    for (label, _) in &paths {
        let mine: Vec<&ExactRow> = rows.iter().filter(|r| &r.path == label).collect();
        let worst = mine.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
        checks.push(Check::new(format!("{label}: gauge side = form side"), worst < spec.tol, format!("max |diff| {worst:e}, tol {:e}", spec.tol)));
        if spec.full {
            let worst = mine.iter().filter_map(|r| r.full_diff).fold(0.0, f64::max);
            checks.push(Check::new(format!("{label}: full = unitary gauge"), worst < spec.tol, format!("max |diff| {worst:e}, tol {:e}", spec.tol)));
        }
        let zero: Vec<_> = mine.iter().filter(|r| r.beta == 0.0).collect();
        if !zero.is_empty() {
            let worst = zero.iter().map(|r| (r.form_value - r.eta_hat_pow).abs().max((r.gauge_value - r.eta_hat_pow).abs())).fold(0.0, f64::max);
            checks.push(Check::new(
                format!("{label}: beta = 0 product law"),
                worst <= spec.beta_zero_tol,
                format!("max |value - eta_hat^len| {worst:e} over {} points", zero.len()),
            ));
        }
        let low = mine.iter().filter(|r| r.form_value < r.eta_pow * (1.0 - FLOOR_SLACK)).count();
        let tightest = mine.iter().map(|r| r.form_value - r.eta_pow).fold(f64::INFINITY, f64::min);
        checks.push(Check::new(format!("{label}: perimeter floor"), low == 0, format!("{low} points below eta^len; smallest margin {tightest:e}")));
    }

    let stem = cfg.mode.stem();
    let path = out_path(cfg, &format!("{stem}.csv"));
    write_atomic(&path, &csv_document(cfg, cfg.mode.name(), &rows)?)?;
    Ok(RunOutcome { files: vec![path], checks, result: serde_json::to_value(&rows).expect("rows serialize") })
}

/// Constants for a closed rectangle loop, or the reason there are none.
fn bound_report(p: &ModelParams, g: &LatticePath, lbox: &LatticeBox) -> Result<BoundReport, String> {
    if !g.is_closed() || g.rect().is_none() {
        return Err("path is not a closed rectangle loop".into());
    }
    let stats = GammaStats::from_path(g, lbox).map_err(|e| e.to_string())?;
    constants(p, &stats).map_err(|e| e.to_string())
}

fn sample(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let p = params(cfg);
    let g = cfg.path()?;
    let s = &cfg.sampler;
    let bath = HeatBath::new(p)?;
    let plan = RunPlan { sweeps: s.sweeps, burn_in: s.burn_in, seed: s.seed, chains: s.chains, batches: s.batches };
    let (est, runs) = estimate_with_runs(&bath, &g, &plan)?;
    let len = g.len();
    let wilson = est.wilson();
    let wilson_se = est.std_error * est.scale;
    let xi_pow = powu(xi(p.kappa, p.n), len);
    let floor = powu(eta(p.kappa, p.n), len);

    let mut checks = vec![Check::new(
        "perimeter floor",
        wilson >= floor - 3.0 * wilson_se - FLOOR_SLACK * floor,
        format!("estimate {wilson:e} +- {wilson_se:e}, eta^len {floor:e}"),
    )];

    let bounds = bound_report(&p, &g, bath.lattice_box());
    let (per_xi, per_xi_se) = (wilson / xi_pow, wilson_se / xi_pow);
    let window = match &bounds {
        Ok(r) if r.rigorous => {
            let center = (r.gamma.p_gamma as f64 * r.alpha.ln()).exp();
            let half = r.c0 * r.zeta_beta * center;
            let (lo, hi) = (center - half - 3.0 * per_xi_se, center + half + 3.0 * per_xi_se);
            checks.push(Check::new(
                "small-beta window",
                (lo..=hi).contains(&per_xi),
                format!("E/xi^len = {per_xi:e} +- {per_xi_se:e}; window [{lo:e}, {hi:e}] around alpha^|P| = {center:e}"),
            ));
            Some([lo, hi])
        }
        _ => None,
    };

    let mut files = Vec::new();
    if s.trace {
        for (k, r) in runs.iter().enumerate() {
            let mut buf = crate::output::csv_preamble(cfg, "sample-trace").into_bytes();
            r.write_trace(&mut buf).map_err(|e| CliError::Io { path: "trace".into(), source: e })?;
            let path = out_path(cfg, &format!("sample_trace_{k}.csv"));
            write_atomic(&path, &buf)?;
            files.push(path);
        }
    }

    let result = json!({
        "estimator": est,
        "wilson": wilson,
        "wilson_std_error": wilson_se,
        "per_xi": { "mean": per_xi, "std_error": per_xi_se },
        "perimeter_floor": floor,
        "bounds": bounds.as_ref().ok(),
        "bounds_unavailable": bounds.as_ref().err(),
        "window": window,
    });
    let path = out_path(cfg, "sample.json");
    write_atomic(&path, &json_document(cfg, cfg.mode.name(), result.clone()))?;
    files.insert(0, path);
    Ok(RunOutcome { files, checks, result })
}

fn predict(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let p = params(cfg);
    let g = cfg.path()?;
    if !g.is_closed() || g.rect().is_none() {
        return Err(CliError::Config("predict needs a closed rectangle path".into()));
    }
    let lbox = LatticeBox::centered(p.m, p.half_side)?;
    let stats = GammaStats::from_path(&g, &lbox)?;
    let report = constants(&p, &stats)?;
    let asserted = match bounds::prediction(&p, &stats) {
        Ok(_) => true,
        Err(BoundsError::ShortSides { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let mut checks = vec![Check::new("alpha bracket", report.alpha_in_bracket, format!("alpha = {}", report.alpha))];
    let appendix = if cfg.truncation > 0 {
        let a = appendix_sums(&p, &stats, cfg.truncation)?;
        let b = appendix_sums(&p, &stats, 2 * cfg.truncation)?;
        for (x, y) in a.iter().zip(&b) {
            checks.push(Check::new(format!("{} below closed form", x.name), x.holds(), format!("{:e} <= {:e}", x.numeric, x.bound)));
            let rel = (x.numeric - y.numeric).abs() / x.numeric.abs().max(y.numeric.abs()).max(f64::MIN_POSITIVE);
            let stable = rel < 1e-12 || x.numeric == y.numeric;
            checks.push(Check::new(format!("{} truncation doubling", x.name), stable, format!("relative change {rel:e}")));
        }
        Some(a)
    } else {
        None
    };
    let result = json!({
        "prediction": report.prediction,
        "radius": report.radius,
        "asserted": asserted,
        "report": report,
        "appendix": appendix,
    });
    let path = out_path(cfg, "predict.json");
    write_atomic(&path, &json_document(cfg, cfg.mode.name(), result.clone()))?;
    Ok(RunOutcome { files: vec![path], checks, result })
}

fn render(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let p = params(cfg);
    let g = cfg.path()?;
    let spec = cfg.render.as_ref().expect("render section resolved");
    let lbox = LatticeBox::centered(p.m, p.half_side)?;
    let window = PlaneWindow { axes: spec.plane, base: spec.slice.clone(), lo: spec.window_lo, hi: spec.window_hi };
    let schedule = Schedule { burn_in: spec.burn_in, count: spec.snapshots, spacing: spec.spacing };
    let snaps = sample_tilted_snapshots(p, &g, schedule, cfg.sampler.seed)?;
    let mut files = Vec::new();
    let mut index = Vec::new();
    for (k, form) in snaps.iter().enumerate() {
        let sweep = spec.burn_in + (k as u64 + 1) * spec.spacing.max(1);
        let mut comments =
            vec![format!("schema={} config_sha256={} seed={}", schema("render"), cfg.hash(), cfg.seed()), format!("snapshot {k} after sweep {sweep}")];
        comments.extend(cfg.canonical_text().lines().map(String::from));
        let img = render_pgm(form, Some(&g), &window, &lbox, spec.block, &comments)?;
        let path = out_path(cfg, &format!("render_{k:03}.pgm"));
        write_atomic(&path, &img)?;
        files.push(path);
        index.push(json!({ "file": format!("render_{k:03}.pgm"), "sweep": sweep, "support": form.support_len() }));
    }
    let result = json!({ "snapshots": index });
    let path = out_path(cfg, "render.json");
    write_atomic(&path, &json_document(cfg, cfg.mode.name(), result.clone()))?;
    files.push(path);
    Ok(RunOutcome { files, checks: Vec::new(), result })
}

#[derive(Serialize)]
struct LemmaRow {
    suite: &'static str,
    setting: String,
    check: String,
    trials: usize,
    applicable: usize,
    failures: usize,
}

fn lemma_check(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let spec = cfg.lemma.as_ref().expect("lemma section resolved");
    let (lo, hi) = spec.orders;
    let outcomes = lemmas::check_grid(&lemmas::default_grid(), lo..=hi);
    let setting = format!("a in 0.01..1.00, n in {lo}..{hi}");
    let mut rows: Vec<LemmaRow> = lemmas::summarize(&outcomes)
        .into_iter()
        .map(|(name, applicable, failures)| LemmaRow {
            suite: "couplings",
            setting: setting.clone(),
            check: name.to_string(),
            trials: outcomes.iter().filter(|o| o.name == name).count(),
            applicable,
            failures,
        })
        .collect();
    for t in geometric_trials(&spec.dims, spec.sides, spec.half_side, spec.forms, spec.seed)? {
        rows.push(LemmaRow {
            suite: "geometry",
            setting: t.setting,
            check: t.check.to_string(),
            trials: t.trials,
            applicable: t.applicable,
            failures: t.failures,
        });
    }
    let checks = rows
        .iter()
        .map(|r| {
            Check::new(
                format!("{} [{}] {}", r.suite, r.setting, r.check),
                r.failures == 0,
                format!("{} failures in {} applicable of {}", r.failures, r.applicable, r.trials),
            )
        })
        .collect();
    let path = out_path(cfg, "lemma_check.csv");
    write_atomic(&path, &csv_document(cfg, cfg.mode.name(), &rows)?)?;
    Ok(RunOutcome { files: vec![path], checks, result: serde_json::to_value(&rows).expect("rows serialize") })
}
