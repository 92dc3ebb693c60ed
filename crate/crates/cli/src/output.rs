use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Pass,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Result of one invocation: a table of string cells plus scalar summary
/// fields. Rationals and big integers are always strings, so nothing is
/// rounded.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: BTreeMap<String, String>,
    pub status: Status,
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
            status: Status::Ok,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.summary.insert(key.to_string(), value.to_string());
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": {
                "rows": rows,
                "summary": self.summary,
            },
            "status": self.status.as_str(),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("record serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Table => self.to_table(),
        }
    }

    /// Rows only; a record with no rows prints its summary as key/value pairs
    /// instead.
    fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.rows.is_empty() {
            out.push_str("key,value\n");
            for (k, v) in &self.summary {
                let _ = writeln!(out, "{},{}", csv_cell(k), csv_cell(v));
            }
            return out;
        }
        out.push_str(&self.columns.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.command, self.status.as_str());
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        if !self.columns.is_empty() && !self.rows.is_empty() {
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| self.rows.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(&self.columns));
            for row in &self.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("seq", &["n", "value"]).param("name", "bell");
        r.push_row(vec!["0".into(), "1".into()]);
        r.push_row(vec!["1".into(), "1/2".into()]);
        r.set("provenance", "recurrence");
        r
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["results"]["rows"][1]["value"], "1/2");
        assert_eq!(v["parameters"]["name"], "bell");
    }

    #[test]
    fn csv_quotes_cells() {
        let mut r = OutputRecord::new("x", &["a"]);
        r.push_row(vec!["1,2".into()]);
        assert_eq!(r.render(Format::Csv), "a\n\"1,2\"\n");
        assert_eq!(sample().render(Format::Csv), "n,value\n0,1\n1,1/2\n");
        let mut empty = OutputRecord::new("x", &["a"]);
        empty.set("count", 3);
        assert_eq!(empty.render(Format::Csv), "key,value\ncount,3\n");
    }

    #[test]
    fn table_aligns() {
        let t = sample().render(Format::Table);
        assert!(t.contains("n  value\n0      1"), "{t}");
        assert!(t.contains("provenance: recurrence"));
    }
}
