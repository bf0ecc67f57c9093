//! Reading and writing graphs, certificates, reports and solution files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use misreg_core::{Graph, IndependentSet, ReductionCertificate};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::format::{self, Format};

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format.unwrap_or_else(|| Format::from_path(path));
    format::parse_graph(&bytes, format).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_graph(path: &Path, g: &Graph, format: Option<Format>) -> Result<()> {
    let format = format.unwrap_or_else(|| Format::from_path(path));
    fs::write(path, format::serialize_graph(g, format))
        .with_context(|| format!("writing {}", path.display()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)).with_context(|| format!("writing {}", path.display()))
}

pub fn read_certificate(path: &Path) -> Result<ReductionCertificate> {
    read_json(path)
}

/// Newline-separated 0-indexed vertex ids; blank lines and `#` lines are
/// ignored.
pub fn parse_solution(text: &str) -> Result<IndependentSet> {
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: usize = line
            .parse()
            .with_context(|| format!("line {}: `{line}` is not a vertex id", i + 1))?;
        ids.push(v);
    }
    Ok(IndependentSet::new(ids))
}

pub fn read_solution(path: &Path) -> Result<IndependentSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_solution(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn serialize_solution(set: &IndependentSet) -> String {
    set.iter().map(|v| format!("{v}\n")).collect()
}
