//! Rectangular result tables and their CSV / JSON renderings.
//!
//! CSV: UTF-8, comma separated, `\n` line endings, header row first, floats
//! with 17 significant digits (`%.17g` style) so every value round-trips.
//! JSON: one object `{"command", "params", "rows"}` with keys in
//! lexicographic order at every level.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

use crate::gains::GainReport;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Float)
    }
}

impl From<Option<&str>> for Cell {
    fn from(v: Option<&str>) -> Self {
        v.map_or(Cell::Null, Cell::from)
    }
}

/// A row type that can be laid out in a [`SweepTable`].
pub trait Tabular {
    fn columns() -> Vec<&'static str>;
    fn cells(&self) -> Vec<Cell>;
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepTable {
    pub fn from_rows<T: Tabular>(rows: &[T]) -> Self {
        Self {
            columns: T::columns().into_iter().map(String::from).collect(),
            rows: rows.iter().map(Tabular::cells).collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_escape(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn rows_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), json_cell(v)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    /// `{"command": ..., "params": {...}, "rows": [...]}`, pretty-printed,
    /// newline-terminated.
    pub fn to_json(&self, command: &str, params: Map<String, Value>) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(command.into()));
        doc.insert("params".into(), Value::Object(params));
        doc.insert("rows".into(), self.rows_json());
        let mut s = serde_json::to_string_pretty(&Value::Object(doc))
            .expect("serialising a Value cannot fail");
        s.push('\n');
        s
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
        Cell::Int(v) => Value::Number((*v).into()),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Null => Value::Null,
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Float(v) => format_g17(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => csv_escape(s),
        Cell::Null => String::new(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Formats like C's `%.17g`: 17 significant digits, fixed notation for
/// decimal exponents in [−5, 17), scientific otherwise, trailing zeros dropped.
pub fn format_g17(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let mut out = trim_zeros(mantissa.to_owned());
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        out
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_owned()
}

impl Tabular for GainReport {
    fn columns() -> Vec<&'static str> {
        vec![
            "alpha",
            "n",
            "h",
            "next",
            "i_diff",
            "i_rel",
            "i_expected",
            "i_diff_asym",
            "i_rel_asym",
            "i_expected_asym",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.alpha.into(),
            self.n.into(),
            self.h.into(),
            self.next.as_str().into(),
            self.i_diff.into(),
            self.i_rel.into(),
            self.i_expected.into(),
            self.i_diff_asym.into(),
            self.i_rel_asym.into(),
            self.i_expected_asym.into(),
        ]
    }
}
