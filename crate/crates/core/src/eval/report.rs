//! Experiment reports.
//!
//! JSON schema (`jguard-report-v1`):
//!
//! ```text
//! {
//!   "format": "jguard-report-v1",
//!   "entries": [
//!     {"type":"eval","detector":"LR+JF","generator":"gpt3","auroc":0.97,
//!      "n_test":200,"config_digest":"9f2c..."},
//!     {"type":"robustness","detector":"LR+JF","generator":"gpt3","attack":"cyrillic",
//!      "auroc_pre":0.97,"auroc_post":0.97,"delta":0.0}
//!   ]
//! }
//! ```
//!
//! Alongside the JSON file, [`emit_report`] writes a fixed-width text table
//! with detectors as rows and generators (or generator/attack pairs) as
//! columns.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::hash::Fnv64;

pub const REPORT_FORMAT: &str = "jguard-report-v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub detector: String,
    pub generator: String,
    pub auroc: f64,
    pub n_test: usize,
    pub config_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub detector: String,
    pub generator: String,
    pub attack: String,
    pub auroc_pre: f64,
    pub auroc_post: f64,
    /// `auroc_pre - auroc_post`
    pub delta: f64,
}

impl RobustnessReport {
    pub fn new(detector: &str, generator: &str, attack: &str, auroc_pre: f64, auroc_post: f64) -> Self {
        RobustnessReport {
            detector: detector.to_string(),
            generator: generator.to_string(),
            attack: attack.to_string(),
            auroc_pre,
            auroc_post,
            delta: auroc_pre - auroc_post,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ReportEntry {
    Eval(EvalReport),
    Robustness(RobustnessReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: String,
    pub entries: Vec<ReportEntry>,
}

/// 16 hex digits identifying a training configuration and corpus.
pub fn config_digest(config_json: &str, corpus_name: &str) -> String {
    let h = Fnv64::new()
        .write_field(config_json.as_bytes())
        .write_field(corpus_name.as_bytes())
        .finish();
    format!("{h:016x}")
}

pub fn report_to_json(entries: &[ReportEntry]) -> String {
    let doc = ReportDocument {
        format: REPORT_FORMAT.to_string(),
        entries: entries.to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn report_from_json(input: &str) -> Result<Vec<ReportEntry>, EvalError> {
    let doc: ReportDocument =
        serde_json::from_str(input).map_err(|e| EvalError::CorruptReport(e.to_string()))?;
    if doc.format != REPORT_FORMAT {
        return Err(EvalError::CorruptReport(format!("unsupported format `{}`", doc.format)));
    }
    Ok(doc.entries)
}

pub fn read_report(path: impl AsRef<Path>) -> Result<Vec<ReportEntry>, EvalError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| EvalError::Io(format!("{}: {e}", path.display())))?;
    report_from_json(&text)
}

/// Path of the text table written next to a JSON report.
pub fn table_path(json_path: &Path) -> PathBuf {
    json_path.with_extension("txt")
}

/// Writes the JSON report to `path` and the text table next to it.
pub fn emit_report(entries: &[ReportEntry], path: impl AsRef<Path>) -> Result<(), EvalError> {
    if entries.is_empty() {
        return Err(EvalError::EmptyReport);
    }
    let path = path.as_ref();
    let io = |p: &Path, e: std::io::Error| EvalError::Io(format!("{}: {e}", p.display()));
    fs::write(path, report_to_json(entries)).map_err(|e| io(path, e))?;
    let tpath = table_path(path);
    fs::write(&tpath, render_table(entries)).map_err(|e| io(&tpath, e))
}

fn push_unique(v: &mut Vec<String>, s: &str) {
    if !v.iter().any(|x| x == s) {
        v.push(s.to_string());
    }
}

fn render_grid(title: &str, rows: &[String], cols: &[String], cell: impl Fn(&str, &str) -> Option<String>) -> String {
    let first_w = rows.iter().map(String::len).chain([title.len()]).max().unwrap_or(0);
    let widths: Vec<usize> = cols.iter().map(|c| c.len().max(8)).collect();
    let mut out = String::new();
    let _ = write!(out, "{title:<first_w$}");
    for (c, w) in cols.iter().zip(&widths) {
        let _ = write!(out, "  {c:>w$}");
    }
    out.push('\n');
    let total = first_w + widths.iter().map(|w| w + 2).sum::<usize>();
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{r:<first_w$}");
        for (c, w) in cols.iter().zip(&widths) {
            let v = cell(r, c).unwrap_or_else(|| "-".to_string());
            let _ = write!(out, "  {v:>w$}");
        }
        out.push('\n');
    }
    out
}

/// Fixed-width tables: AUROC by detector x generator, then AUROC change
/// (pre - post) by detector x generator/attack.
pub fn render_table(entries: &[ReportEntry]) -> String {
    let mut out = String::new();
    let evals: Vec<&EvalReport> = entries
        .iter()
        .filter_map(|e| match e {
            ReportEntry::Eval(r) => Some(r),
            _ => None,
        })
        .collect();
    let robust: Vec<&RobustnessReport> = entries
        .iter()
        .filter_map(|e| match e {
            ReportEntry::Robustness(r) => Some(r),
            _ => None,
        })
        .collect();
    if !evals.is_empty() {
        let (mut rows, mut cols) = (Vec::new(), Vec::new());
        for r in &evals {
            push_unique(&mut rows, &r.detector);
            push_unique(&mut cols, &r.generator);
        }
        out.push_str("AUROC\n");
        out.push_str(&render_grid("detector", &rows, &cols, |d, g| {
            evals
                .iter()
                .rev()
                .find(|r| r.detector == d && r.generator == g)
                .map(|r| format!("{:.4}", r.auroc))
        }));
    }
    if !robust.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        let (mut rows, mut cols) = (Vec::new(), Vec::new());
        for r in &robust {
            push_unique(&mut rows, &r.detector);
            push_unique(&mut cols, &format!("{}/{}", r.generator, r.attack));
        }
        out.push_str("AUROC change under attack (pre - post)\n");
        out.push_str(&render_grid("detector", &rows, &cols, |d, c| {
            robust
                .iter()
                .rev()
                .find(|r| r.detector == d && format!("{}/{}", r.generator, r.attack) == c)
                .map(|r| format!("{:.4}", r.delta))
        }));
    }
    out
}
