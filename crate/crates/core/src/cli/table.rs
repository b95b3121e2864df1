//! Small tabular writer for CSV and JSON artifacts.
//!
//! Numbers are written with 6 significant digits; infinities as `inf` and
//! missing or empty values as `empty`.

use serde_json::{Map, Number, Value};

use crate::interval::ExtendedInterval;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// `(lower, upper)` cells of an interval; both `empty` when it is empty.
pub fn interval_cells(i: &ExtendedInterval) -> [Cell; 2] {
    match i.bounds() {
        Some((lo, hi)) => [Cell::Num(lo), Cell::Num(hi)],
        None => [Cell::Empty, Cell::Empty],
    }
}

/// Formats `x` with 6 significant digits, trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "empty".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => if *b { "1" } else { "0" }.into(),
            Cell::Empty => "empty".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => {
                let rounded: f64 = fmt_num(*v).parse().expect("formatted number parses");
                Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Int(v) => Value::Number((*v).into()),
            Cell::Bool(b) => Value::Bool(*b),
            other => Value::String(other.text()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_escape(&c.text())).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (k, c) in self.columns.iter().zip(row) {
                    obj.insert(k.clone(), c.json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
        s.push('\n');
        s
    }

    /// Looks up a cell by row index and column name.
    pub fn get(&self, row: usize, column: &str) -> Option<&Cell> {
        let idx = self.columns.iter().position(|c| c == column)?;
        self.rows.get(row)?.get(idx)
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_num(20.2), "20.2");
        assert_eq!(fmt_num(0.0573352033), "0.0573352");
        assert_eq!(fmt_num(15450.0), "15450");
        assert_eq!(fmt_num(1.682955859), "1.68296");
        assert_eq!(fmt_num(123456789.0), "123456789");
        assert_eq!(fmt_num(-0.30594059), "-0.305941");
        assert_eq!(fmt_num(1.5e-9), "1.50000e-9");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(0.0), "0");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(["name", "lo", "hi", "ok"]);
        let [lo, hi] = interval_cells(&ExtendedInterval::unbounded_from(0.25));
        t.push(vec!["a,b".into(), lo, hi, true.into()]);
        let [lo, hi] = interval_cells(&ExtendedInterval::Empty);
        t.push(vec!["c".into(), lo, hi, false.into()]);
        assert_eq!(
            t.to_csv(),
            "name,lo,hi,ok\n\"a,b\",0.25,inf,1\nc,empty,empty,0\n"
        );
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["hi"], "inf");
        assert_eq!(v[0]["lo"], 0.25);
        assert_eq!(v[1]["lo"], "empty");
        assert_eq!(t.get(0, "name"), Some(&Cell::Text("a,b".into())));
    }
}
