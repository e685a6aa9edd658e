use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// A tabulation ready to be written as CSV or JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    /// `key=value` metadata; CSV writes it as `#` lines before the header.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Table {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&JsonTable::from(self))
                    .map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    meta: serde_json::Map<String, serde_json::Value>,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

impl<'a> From<&'a Table> for JsonTable<'a> {
    fn from(t: &'a Table) -> Self {
        JsonTable {
            meta: t
                .meta
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect(),
            columns: &t.columns,
            rows: &t.rows,
        }
    }
}

/// Writes `contents` to `path` through a sibling temp file and a rename, or
/// to stdout when no path is given. A failed run leaves no partial file.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
