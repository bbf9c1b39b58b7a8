//! Report model and its text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Rounds to 12 significant digits, mapping `-0` to `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<Cell>),
}

impl Cell {
    pub fn float(x: f64) -> Self {
        Self::Float(round_sig(x))
    }

    pub fn opt_float(x: Option<f64>) -> Self {
        x.map_or(Self::Null, Self::float)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Self::Text(s.into())
    }

    pub fn floats(xs: impl IntoIterator<Item = f64>) -> Self {
        Self::List(xs.into_iter().map(Self::float).collect())
    }

    fn render(&self, sep: &str) -> String {
        match self {
            Self::Null => String::new(),
            Self::Bool(b) => b.to_string(),
            Self::Int(i) => i.to_string(),
            Self::Float(x) if x.is_nan() => "nan".into(),
            Self::Float(x) if *x != 0.0 && !(1e-4..1e15).contains(&x.abs()) => format!("{x:e}"),
            Self::Float(x) => x.to_string(),
            Self::Text(s) => s.clone(),
            Self::List(items) => items.iter().map(|c| c.render(sep)).collect::<Vec<_>>().join(sep),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Null => Value::Null,
            Self::Bool(b) => Value::Bool(*b),
            Self::Int(i) => Value::from(*i),
            Self::Float(x) => Value::from(*x),
            Self::Text(s) => Value::String(s.clone()),
            Self::List(items) => Value::Array(items.iter().map(Cell::to_json).collect()),
        }
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Self::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Self::Int(i as i64)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Self::Int(i64::from(i))
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Self::float(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Self::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Self::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Section {
    Fields { name: String, fields: Vec<(String, Cell)> },
    Table { name: String, columns: Vec<String>, rows: Vec<Vec<Cell>> },
    Matrix { name: String, rows: Vec<Vec<Cell>> },
}

impl Section {
    pub fn fields(name: &str, fields: Vec<(&str, Cell)>) -> Self {
        Self::Fields { name: name.into(), fields: fields.into_iter().map(|(k, v)| (k.to_owned(), v)).collect() }
    }

    pub fn table(name: &str, columns: &[&str], rows: Vec<Vec<Cell>>) -> Self {
        Self::Table { name: name.into(), columns: columns.iter().map(|&c| c.to_owned()).collect(), rows }
    }

    pub fn matrix(name: &str, rows: Vec<Vec<Cell>>) -> Self {
        Self::Matrix { name: name.into(), rows }
    }

    fn name(&self) -> &str {
        match self {
            Self::Fields { name, .. } | Self::Table { name, .. } | Self::Matrix { name, .. } => name,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Fields { fields, .. } => {
                Value::Object(fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect())
            }
            Self::Table { columns, rows, .. } => Value::Array(
                rows.iter()
                    .map(|row| Value::Object(columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect()))
                    .collect(),
            ),
            Self::Matrix { rows, .. } => {
                Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(Cell::to_json).collect())).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, Cell)>,
    pub sections: Vec<Section>,
    pub wall_time: f64,
}

impl Report {
    pub fn new(command: String) -> Self {
        Self { command, inputs: Vec::new(), sections: Vec::new(), wall_time: 0.0 }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Cell>) {
        self.inputs.push((key.to_owned(), value.into()));
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    /// Text and CSV carry the results only; JSON adds the command, inputs and wall time.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        let results: Map<String, Value> = self.sections.iter().map(|s| (s.name().to_owned(), s.to_json())).collect();
        json!({
            "schema": 1,
            "command": self.command,
            "inputs": inputs,
            "results": results,
            "wall_time_s": round_sig(self.wall_time),
        })
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match section {
                Section::Fields { fields, .. } => {
                    for (k, v) in fields {
                        let v = if *v == Cell::Null { "none".to_owned() } else { v.render(", ") };
                        let _ = writeln!(out, "{k}: {v}");
                    }
                }
                Section::Table { name, columns, rows } => {
                    let _ = writeln!(out, "{name}:");
                    let mut grid = vec![columns.clone()];
                    grid.extend(rows.iter().map(|r| r.iter().map(|c| c.render(" ")).collect()));
                    write_aligned(&mut out, &grid);
                }
                Section::Matrix { name, rows } => {
                    let _ = writeln!(out, "{name}:");
                    let grid: Vec<Vec<String>> =
                        rows.iter().map(|r| r.iter().map(|c| c.render(" ")).collect()).collect();
                    write_aligned(&mut out, &grid);
                }
            }
        }
        out
    }

    fn to_csv(&self) -> String {
        let blocks: Vec<String> = self.sections.iter().map(|s| csv_block(s).expect("writing CSV to memory")).collect();
        blocks.join("\n")
    }
}

fn csv_block(section: &Section) -> csv::Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let cells = |row: &[Cell]| row.iter().map(|c| c.render(";")).collect::<Vec<_>>();
    match section {
        Section::Fields { fields, .. } => {
            w.write_record(["key", "value"])?;
            for (k, v) in fields {
                w.write_record([k.clone(), v.render(";")])?;
            }
        }
        Section::Table { columns, rows, .. } => {
            w.write_record(columns)?;
            for row in rows {
                w.write_record(cells(row))?;
            }
        }
        Section::Matrix { rows, .. } => {
            for row in rows {
                w.write_record(cells(row))?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn write_aligned(out: &mut String, grid: &[Vec<String>]) {
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| grid.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for row in grid {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(13.211102550927978), 13.2111025509);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(-1e-300 * 1e-300), 0.0);
        assert_eq!(Cell::float(4.000000000000001).render(""), "4");
        assert_eq!(Cell::float(-3.9999999999999996).render(""), "-4");
        assert_eq!(Cell::float(3.552713678800501e-15).render(""), "3.5527136788e-15");
        assert_eq!(Cell::float(0.00012).render(""), "0.00012");
    }

    #[test]
    fn csv_quotes_and_lists() {
        let mut r = Report::new("ecctree test".into());
        r.push(Section::table("t", &["a", "b"], vec![vec![Cell::text("x,y"), Cell::floats([1.0, 2.5])]]));
        assert_eq!(r.render(Format::Csv), "a,b\n\"x,y\",1;2.5\n");
    }

    #[test]
    fn json_envelope() {
        let mut r = Report::new("ecctree test".into());
        r.input("n", 4usize);
        r.push(Section::fields("summary", vec![("energy", Cell::float(1.0 / 3.0))]));
        let v = r.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["inputs"]["n"], 4);
        assert_eq!(v["results"]["summary"]["energy"], 0.333333333333);
    }
}
