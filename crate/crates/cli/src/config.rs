//! Settings files in TOML. Keys: `lexicon_path`, `gazetteer_dir`,
//! `wx_table_path`, `emit_audit`, and under `mlm`: `endpoint`, `top_k`,
//! `timeout_ms`.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use devspell::PipelineConfig;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    lexicon_path: Option<PathBuf>,
    gazetteer_dir: Option<PathBuf>,
    wx_table_path: Option<PathBuf>,
    emit_audit: Option<bool>,
    #[serde(default)]
    mlm: Mlm,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Mlm {
    endpoint: Option<String>,
    top_k: Option<usize>,
    timeout_ms: Option<u64>,
}

pub fn apply_file(cfg: &mut PipelineConfig, path: &Path) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(path).with_context(|| format!("config {}", path.display()))?;
    apply(cfg, &text).with_context(|| format!("config {}", path.display()))
}

pub fn apply(cfg: &mut PipelineConfig, text: &str) -> anyhow::Result<()> {
    let file: File = toml::from_str(text)?;
    if file.lexicon_path.is_some() {
        cfg.lexicon_path = file.lexicon_path;
    }
    if file.gazetteer_dir.is_some() {
        cfg.gazetteer_dir = file.gazetteer_dir;
    }
    if file.wx_table_path.is_some() {
        cfg.wx_table_path = file.wx_table_path;
    }
    if let Some(b) = file.emit_audit {
        cfg.emit_audit = b;
    }
    if let Some(e) = file.mlm.endpoint {
        cfg.mlm.endpoint = (!e.is_empty()).then_some(e);
    }
    if let Some(k) = file.mlm.top_k {
        cfg.mlm.top_k = k;
    }
    if let Some(ms) = file.mlm.timeout_ms {
        cfg.mlm.timeout = Duration::from_millis(ms);
    }
    Ok(())
}
