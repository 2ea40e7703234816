use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use super::ExperimentError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Csv,
    Markdown,
}

const COLUMNS: [&str; 12] = [
    "source",
    "kind",
    "schema_version",
    "tool_version",
    "config_hash",
    "vertices",
    "edges",
    "depth",
    "compute_cycles",
    "seconds",
    "joules",
    "bytes",
];

/// Rows merged from simulation reports and solve summaries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportTable {
    pub rows: Vec<Vec<String>>,
}

fn field(v: &Value, path: &[&str]) -> String {
    let mut cur = v;
    for key in path {
        match cur.get(key) {
            Some(next) => cur = next,
            None => return String::new(),
        }
    }
    match cur {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn row_for(path: &Path, v: &Value) -> Result<(u64, Vec<String>), ExperimentError> {
    let source = path.display().to_string();
    if v.get("header").is_some() {
        let schema = v["header"]["schema_version"].as_u64();
        let schema = schema.ok_or_else(|| ExperimentError::Schema(format!("{source}: report without schema_version")))?;
        let row = vec![
            source,
            "sim_report".into(),
            schema.to_string(),
            field(v, &["header", "tool_version"]),
            field(v, &["header", "config_hash"]),
            field(v, &["workload", "vertices"]),
            field(v, &["workload", "edges"]),
            field(v, &["workload", "depth"]),
            field(v, &["totals", "compute_cycles"]),
            field(v, &["totals", "critical_path_seconds"]),
            field(v, &["totals", "energy_j"]),
            field(v, &["totals", "bytes"]),
        ];
        return Ok((schema, row));
    }
    if v.get("kind").and_then(Value::as_str) == Some("solve_summary") {
        let schema = v["schema_version"]
            .as_u64()
            .ok_or_else(|| ExperimentError::Schema(format!("{source}: summary without schema_version")))?;
        let row = vec![
            source,
            "solve_summary".into(),
            schema.to_string(),
            field(v, &["tool_version"]),
            String::new(),
            field(v, &["vertices"]),
            field(v, &["edges"]),
            field(v, &["depth"]),
            String::new(),
            field(v, &["wall_time_s"]),
            String::new(),
            String::new(),
        ];
        return Ok((schema, row));
    }
    Err(ExperimentError::Schema(format!("{source}: neither a simulation report nor a solve summary")))
}

/// Merges report/summary JSON files into one table. All inputs must share
/// one schema version.
pub fn cmd_report(inputs: &[PathBuf]) -> Result<ReportTable, ExperimentError> {
    let mut table = ReportTable::default();
    let mut schema: Option<u64> = None;
    for path in inputs {
        let text = fs::read_to_string(path).map_err(|source| ExperimentError::Io {
            path: path.clone(),
            source,
        })?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| ExperimentError::Schema(format!("{}: {e}", path.display())))?;
        let (version, row) = row_for(path, &v)?;
        match schema {
            Some(s) if s != version => {
                return Err(ExperimentError::Schema(format!(
                    "{} has schema version {version}, earlier inputs have {s}",
                    path.display()
                )))
            }
            _ => schema = Some(version),
        }
        table.rows.push(row);
    }
    Ok(table)
}

impl ReportTable {
    pub fn columns() -> &'static [&'static str] {
        &COLUMNS
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => {
                let mut s = COLUMNS.join(",") + "\n";
                for r in &self.rows {
                    s += &(r.join(",") + "\n");
                }
                s
            }
            ReportFormat::Markdown => {
                let mut s = format!("| {} |\n", COLUMNS.join(" | "));
                s += &format!("|{}\n", "---|".repeat(COLUMNS.len()));
                for r in &self.rows {
                    s += &format!("| {} |\n", r.join(" | "));
                }
                s
            }
        }
    }
}
