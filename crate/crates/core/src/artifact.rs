//! Line-delimited JSON artifacts with an optional leading header record.
//!
//! The header is a single object `{"header": {...}}` on the first line. It
//! carries the fingerprint of the configuration that produced the file.
//! Readers accept files without one, so hand-written prediction files need
//! no header.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::instances::Variant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactHeader {
    pub artifact: String,
    pub fingerprint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default)]
    pub config: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    header: ArtifactHeader,
}

pub fn to_jsonl_string<T: Serialize>(
    header: Option<&ArtifactHeader>,
    records: &[T],
) -> Result<String> {
    let mut out = String::new();
    if let Some(h) = header {
        out.push_str(&serde_json::to_string(&HeaderLine { header: h.clone() })?);
        out.push('\n');
    }
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn write_jsonl<T: Serialize>(
    path: &Path,
    header: Option<&ArtifactHeader>,
    records: &[T],
) -> Result<()> {
    let content = to_jsonl_string(header, records)?;
    fs::write(path, content).map_err(|e| BenchError::io(path, e))
}

pub fn parse_jsonl<T: DeserializeOwned>(
    content: &str,
    path: &Path,
) -> Result<(Option<ArtifactHeader>, Vec<T>)> {
    let mut header = None;
    let mut records = Vec::new();
    let mut first = true;
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record_err = |e: serde_json::Error| BenchError::Record {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        };
        if std::mem::take(&mut first) {
            let value: serde_json::Value = serde_json::from_str(line).map_err(record_err)?;
            if value
                .as_object()
                .is_some_and(|o| o.len() == 1 && o.contains_key("header"))
            {
                let h: HeaderLine = serde_json::from_value(value).map_err(record_err)?;
                header = Some(h.header);
                continue;
            }
            records.push(serde_json::from_value(value).map_err(record_err)?);
            continue;
        }
        records.push(serde_json::from_str(line).map_err(record_err)?);
    }
    Ok((header, records))
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<(Option<ArtifactHeader>, Vec<T>)> {
    let content = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_jsonl(&content, path)
}
