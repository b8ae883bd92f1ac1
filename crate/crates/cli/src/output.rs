use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::{Failure, Format};

pub const CSV_SCHEMA: &str = "photoion-csv/1";
pub const JSON_SCHEMA: &str = "photoion-json/1";

/// A numeric table; `None` cells are written empty (CSV) or `null` (JSON).
pub struct Table {
    pub name: &'static str,
    pub columns: &'static [&'static str],
    pub rows: Rows,
}

/// Seventeen significant digits, fixed layout.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = format!("# {CSV_SCHEMA} {}\n{}\n", self.name, self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.map(fmt).unwrap_or_default()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    m.insert((*col).into(), cell.map_or(Value::Null, Value::from));
                }
                Value::Object(m)
            })
            .collect();
        to_json(&serde_json::json!({ "schema": JSON_SCHEMA, "table": self.name, "rows": rows }))
    }

    pub fn render(&self, format: Option<Format>) -> String {
        match format.unwrap_or(Format::Csv) {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub type Rows = Vec<Vec<Option<f64>>>;

/// Reads a CSV written by [`Table::to_csv`] into named columns.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Rows), Failure> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Failure::usage("empty table"))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<Option<f64>> = line
            .split(',')
            .map(|c| {
                let c = c.trim();
                if c.is_empty() {
                    Ok(None)
                } else {
                    c.parse()
                        .map(Some)
                        .map_err(|_| Failure::usage(format!("row {}: bad number {c:?}", i + 1)))
                }
            })
            .collect::<Result<_, _>>()?;
        if cells.len() != header.len() {
            return Err(Failure::usage(format!(
                "row {}: expected {} cells",
                i + 1,
                header.len()
            )));
        }
        rows.push(cells);
    }
    Ok((header, rows))
}
