//! Run headers and line-oriented result writers.
//!
//! Every JSONL artifact starts with a header line carrying the schema name,
//! tool version and a hash of the full run configuration, so results can be
//! traced back to the exact settings that produced them.

use crate::error::Result;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunHeader {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub relaxed_premises: Vec<String>,
}

impl RunHeader {
    pub fn new(schema: &str, config_canonical: &str) -> Self {
        RunHeader {
            schema: schema.into(),
            tool: "gronwall".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_hash: config_hash(config_canonical),
            relaxed_premises: Vec::new(),
        }
    }

    pub fn with_relaxed(mut self, relaxed: Vec<String>) -> Self {
        self.relaxed_premises = relaxed;
        self
    }
}

/// Hex SHA-256 of the canonical configuration string.
pub fn config_hash(canonical: &str) -> String {
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    let d = h.finalize();
    d.iter().map(|b| format!("{b:02x}")).collect()
}

/// Header line followed by one JSON object per item.
pub fn write_jsonl<W: Write, T: Serialize>(
    mut w: W,
    header: &RunHeader,
    items: &[T],
) -> Result<()> {
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Plain CSV: caller supplies the column names and a row projection.
pub fn write_csv<W: Write, T, F>(mut w: W, columns: &[&str], items: &[T], row: F) -> Result<()>
where
    F: Fn(&T) -> Vec<String>,
{
    writeln!(w, "{}", columns.join(","))?;
    for item in items {
        let cells = row(item);
        debug_assert_eq!(cells.len(), columns.len());
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = config_hash("ladder=64,256;segment=1048576");
        let b = config_hash("ladder=64,256;segment=1048576");
        let c = config_hash("ladder=64,256;segment=1048577");
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn jsonl_shape() {
        let header = RunHeader::new("test/1", "k=v");
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &header, &[serde_json::json!({"x": 1})]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("\"schema\":\"test/1\""));
        assert!(lines[0].contains("\"tool\":\"gronwall\""));
        assert!(!lines[0].contains("relaxed"));
        assert_eq!(lines[1], "{\"x\":1}");
    }

    #[test]
    fn csv_shape() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["a", "b"], &[(1, 2), (3, 4)], |t| {
            vec![t.0.to_string(), t.1.to_string()]
        })
        .unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,2\n3,4\n");
    }
}
