//! JSON and CSV emission.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Field excluded from the canonical form of every document.
pub const TIMESTAMP_FIELD: &str = "timestamp";

/// Compact JSON with every float printed to 17 significant digits.
struct RoundTrip;

impl serde_json::ser::Formatter for RoundTrip {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, RoundTrip);
    value.serialize(&mut ser).map_err(|e| CliError::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
}

/// Seconds since the Unix epoch.
pub fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// The document with its top-level timestamp removed.
pub fn canonical(text: &str) -> Result<Value, serde_json::Error> {
    let mut value: Value = serde_json::from_str(text)?;
    if let Value::Object(map) = &mut value {
        map.remove(TIMESTAMP_FIELD);
    }
    Ok(value)
}

pub fn with_extension(prefix: &str, ext: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.{ext}"))
}

fn ensure_parent(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
        }
        _ => Ok(()),
    }
}

pub fn write_json<T: Serialize>(prefix: &str, value: &T) -> Result<PathBuf, CliError> {
    let path = with_extension(prefix, "json");
    ensure_parent(&path)?;
    std::fs::write(&path, to_json(value)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

/// Writes `rows` under the fixed `header`.
pub fn write_csv(prefix: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf, CliError> {
    let path = with_extension(prefix, "csv");
    ensure_parent(&path)?;
    let io_err = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(&path).map_err(io_err)?;
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(path)
}

/// Float cell for CSV output, same precision as the JSON.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Left-aligned text table with a header rule.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for row in rows {
        out.push(line(row.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        let values = [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, f64::MIN_POSITIVE];
        let text = to_json(&values).unwrap();
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, values);
        assert!(text.contains("1.0000000000000001e-1"));
    }

    #[test]
    fn canonical_drops_timestamp() {
        let a = canonical(r#"{"timestamp": 1, "x": 2}"#).unwrap();
        let b = canonical(r#"{"timestamp": 9, "x": 2}"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_alignment() {
        let t = text_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1");
    }
}
