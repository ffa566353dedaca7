//! Report serialization and atomic file output.
//!
//! JSON is the primary format (serde_json, shortest round-trip decimals);
//! CSV is a flat `section,key,r,value` projection of the same content so
//! reports stay diffable. Files are written to a temporary sibling and
//! renamed into place.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

/// One flat row of the CSV projection.
pub struct CsvRow {
    pub section: &'static str,
    pub key: String,
    pub r: Option<f64>,
    pub value: String,
}

impl CsvRow {
    pub fn new(section: &'static str, key: impl Into<String>, r: Option<f64>, value: impl std::fmt::Display) -> CsvRow {
        CsvRow { section, key: key.into(), r, value: value.to_string() }
    }
}

pub fn csv_table(rows: &[CsvRow]) -> String {
    let mut out = String::from("section,key,r,value\n");
    for row in rows {
        let r = row.r.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},\"{}\"\n", row.section, row.key, r, row.value));
    }
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Writes via a temporary sibling plus rename, so readers never observe a
/// half-written report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Writes to `path` when given, stdout otherwise.
pub fn emit(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => write_atomic(p, content.as_bytes()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
