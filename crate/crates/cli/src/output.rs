use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::ExperimentConfig;
use crate::CliError;

/// Bumped whenever a column is added, removed or reinterpreted.
pub const SCHEMA_VERSION: u32 = 1;

pub fn schema(kind: &str) -> String {
    format!("lattice-higgs/{kind}/v{SCHEMA_VERSION}")
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(dir, e))?;
    tmp.write_all(bytes).map_err(|e| io_err(path, e))?;
    tmp.as_file().sync_all().map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

/// Comment lines heading every CSV: schema, config hash, seed, then the
/// resolved configuration one key per line.
pub fn csv_preamble(cfg: &ExperimentConfig, kind: &str) -> String {
    let mut s = format!("# schema={} config_sha256={} seed={}\n", schema(kind), cfg.hash(), cfg.seed());
    for line in cfg.canonical_text().lines() {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s
}

/// CSV body via the `csv` crate, after the preamble.
pub fn csv_document<S: serde::Serialize>(cfg: &ExperimentConfig, kind: &str, rows: &[S]) -> Result<Vec<u8>, CliError> {
    let mut out = csv_preamble(cfg, kind).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        for r in rows {
            w.serialize(r).map_err(|e| CliError::Guard(format!("csv: {e}")))?;
        }
        w.flush().map_err(|e| CliError::Guard(format!("csv: {e}")))?;
    }
    Ok(out)
}

/// JSON object `{"provenance": ..., "result": ...}`.
pub fn json_document(cfg: &ExperimentConfig, kind: &str, result: Value) -> Vec<u8> {
    let doc = json!({
        "provenance": {
            "schema": schema(kind),
            "config_sha256": cfg.hash(),
            "seed": cfg.seed(),
            "config": cfg.resolved,
        },
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json value serializes");
    s.push('\n');
    s.into_bytes()
}

pub fn out_path(cfg: &ExperimentConfig, name: &str) -> PathBuf {
    cfg.out_dir.join(name)
}
