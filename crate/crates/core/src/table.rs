//! Column tables and their CSV rendering.
//!
//! Every CSV starts with `# magicwalk <version> <command>`, then the column
//! names, then one row per record. Floats carry 12 significant digits in the
//! style of C's `%.12g`, so output is byte-stable across runs and platforms.

use std::io::{self, Write};

use crate::error::{Result, WalkError};
use crate::VERSION;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Int(v) => v as f64,
            Value::Float(v) => v,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(v) => f.write_str(&format_float(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(WalkError::Layout(format!(
                "row has {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of one column as floats.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    /// Rewrites every float in `name` through `f`.
    pub fn map_column(&mut self, name: &str, f: impl Fn(f64) -> f64) -> Result<()> {
        let idx = self
            .column_index(name)
            .ok_or_else(|| WalkError::Layout(format!("no column `{name}`")))?;
        for row in &mut self.rows {
            if let Value::Float(v) = row[idx] {
                row[idx] = Value::Float(f(v));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut out: W, command: &str) -> io::Result<()> {
        writeln!(out, "# magicwalk {VERSION} {command}")?;
        writeln!(out, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&v.to_string());
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self, command: &str) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, command).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

const SIG_DIGITS: usize = 12;

/// `%.12g`: 12 significant digits, trailing zeros trimmed, scientific
/// notation outside `1e-4 ≤ |v| < 1e12`. Negative zero prints as `0`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_matches_percent_g() {
        let cases = [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (std::f64::consts::LN_2, "0.69314718056"),
            (std::f64::consts::PI, "3.14159265359"),
            (-2.5, "-2.5"),
            (6.5e-5, "6.5e-05"),
            (1.0e-4, "0.0001"),
            (123456789012.0, "123456789012"),
            (1.0e12, "1e+12"),
            (1.0 / 3.0, "0.333333333333"),
            (1e-300, "1e-300"),
            (0.99999999999999, "1"),
        ];
        for (v, expected) in cases {
            assert_eq!(format_float(v), expected, "formatting {v:e}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["t", "sre2"]);
        t.push(vec![Value::Int(0), Value::Float(0.25)]).unwrap();
        t.push(vec![Value::Int(1), Value::Float(1e-7)]).unwrap();
        assert!(t.push(vec![Value::Int(2)]).is_err());
        let csv = t.to_csv_string("walk1");
        assert_eq!(csv, format!("# magicwalk {VERSION} walk1\nt,sre2\n0,0.25\n1,1e-07\n"));
    }

    #[test]
    fn column_access_and_mapping() {
        let mut t = Table::new(["t", "entropy"]);
        t.push(vec![Value::Int(3), Value::Float(2.0)]).unwrap();
        t.map_column("entropy", |v| v / 2.0).unwrap();
        assert_eq!(t.column("entropy").unwrap(), vec![1.0]);
        assert_eq!(t.column("t").unwrap(), vec![3.0]);
        assert!(t.column("nope").is_none());
        assert!(t.map_column("nope", |v| v).is_err());
    }
}
