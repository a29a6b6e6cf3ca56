//! Tabular reports rendered as aligned text or JSON.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(i64),
    Float(f64),
    /// Rendered in scientific notation in text mode.
    Sci(f64),
    Complex(Complex64),
    Bool(bool),
    /// Comma-joined in text mode, an array in JSON.
    List(Vec<String>),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{:.10}", clean(*x)),
            Cell::Sci(x) => format!("{x:.3e}"),
            Cell::Complex(z) => format_complex(*z),
            Cell::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
            Cell::List(items) => items.join(","),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => json!(s),
            Cell::Int(i) => json!(i),
            Cell::Float(x) | Cell::Sci(x) => json!(clean(*x)),
            Cell::Complex(z) => json!([clean(z.re), clean(z.im)]),
            Cell::Bool(b) => json!(b),
            Cell::List(items) => json!(items),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// `-0.0` prints as `0.0`.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn format_complex(z: Complex64) -> String {
    let r = |x: f64| {
        let y = (x * 1e6).round() / 1e6;
        clean(y)
    };
    let (re, im) = (r(z.re), r(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra lines shown after the table in text mode only.
    pub footer: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Text,
    Json,
}

impl Report {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Text: header plus aligned rows. JSON: an array of objects keyed by column.
pub fn render_report(report: &Report, mode: Mode) -> Vec<u8> {
    match mode {
        Mode::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = report
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&Value::Array(rows)).expect("serializable");
            out.push(b'\n');
            out
        }
        Mode::Text => {
            let cells: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::text).collect())
                .collect();
            let widths: Vec<usize> = report
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([c.chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: &[String]| {
                let parts: Vec<String> = items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect();
                format!("{}\n", parts.join("  ").trim_end())
            };
            let mut out = line(&report.columns);
            for r in &cells {
                out.push_str(&line(r));
            }
            for f in &report.footer {
                out.push_str(f);
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(["name", "value", "ok"]);
        r.push(vec!["a".into(), 1.5.into(), true.into()]);
        r.push(vec!["longer".into(), Cell::Sci(1e-12), false.into()]);
        r
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::new(["x", "y"]);
        assert_eq!(render_report(&r, Mode::Text), b"x  y\n");
        assert_eq!(render_report(&r, Mode::Json), b"[]\n");
    }

    #[test]
    fn text_columns_align() {
        let out = String::from_utf8(render_report(&sample(), Mode::Text)).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        let col = lines[0].find("value").unwrap();
        assert_eq!(lines[1].find("1.5").unwrap(), col);
        assert_eq!(lines[2].find("1.000e-12").unwrap(), col);
    }

    #[test]
    fn json_round_trips() {
        let out = render_report(&sample(), Mode::Json);
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v[0]["name"], "a");
        assert_eq!(v[1]["ok"], false);
        assert_eq!(v[0]["value"], 1.5);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            render_report(&sample(), Mode::Json),
            render_report(&sample(), Mode::Json)
        );
        assert_eq!(
            render_report(&sample(), Mode::Text),
            render_report(&sample(), Mode::Text)
        );
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1");
        assert_eq!(format_complex(Complex64::new(0.0, -1.0)), "-1i");
        assert_eq!(
            format_complex(Complex64::new(-0.5, 0.8660254)),
            "-0.5+0.866025i"
        );
    }
}
