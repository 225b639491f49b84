//! Tables and their CSV/JSON serialization. Floats are written as
//! `{:.16e}` (17 significant digits) so identical runs give identical bytes.

use std::fmt::Write as _;

use crate::config::Settings;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

fn float(v: f64) -> Option<String> {
    v.is_finite().then(|| format!("{v:.16e}"))
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn config_json(settings: &Settings) -> String {
    serde_json::to_string(settings).expect("settings serialize")
}

pub fn to_csv(table: &Table, settings: &Settings) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# config: {}", config_json(settings));
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(v) => float(*v).unwrap_or_default(),
                Cell::Int(i) => i.to_string(),
                Cell::Text(s) => csv_text(s),
                Cell::Empty => String::new(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(table: &Table, settings: &Settings) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"config\":{},\"rows\":[", config_json(settings));
    for (i, row) in table.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('{');
        for (j, (name, cell)) in table.columns.iter().zip(row).enumerate() {
            if j > 0 {
                out.push(',');
            }
            let value = match cell {
                Cell::Num(v) => float(*v).unwrap_or_else(|| "null".into()),
                Cell::Int(i) => i.to_string(),
                Cell::Text(s) => serde_json::to_string(s).expect("string serialize"),
                Cell::Empty => "null".into(),
            };
            let _ = write!(out, "{}:{}", serde_json::to_string(name).expect("string serialize"), value);
        }
        out.push('}');
    }
    out.push_str("]}\n");
    out
}
