//! Reference theories and the JSON theory document format.
//!
//! A theory document is a JSON object with exactly the keys
//! `name`, `labels`, `vacuum`, `central_charge`, `weights` and `S`:
//!
//! ```json
//! {
//!   "name": "ising",
//!   "labels": ["1", "psi", "sigma"],
//!   "vacuum": 0,
//!   "central_charge": {"num": 1, "den": 2},
//!   "weights": [{"num": 0, "den": 1}, {"num": 1, "den": 2}, {"num": 1, "den": 16}],
//!   "S": [[0.5, 0.0], [0.5, 0.0], ...]
//! }
//! ```
//!
//! `S` is row-major, one `[re, im]` pair per entry. Weights are taken mod 1.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::modular::{frac, CMatrix, ModularData};

const KEYS: [&str; 6] = ["name", "labels", "vacuum", "central_charge", "weights", "S"];

/// `SU(2)` at level `k`: labels `j = 0..=k` (Dynkin label).
pub fn builtin_su2(k: u32) -> Result<ModularData> {
    if k == 0 {
        return Err(Error::Parameter(
            "su2 needs level k >= 1 (use builtin:trivial for k = 0)".into(),
        ));
    }
    let k = k as i64;
    let n = (k + 1) as usize;
    let h = (k + 2) as f64;
    let norm = (2.0 / h).sqrt();
    let s = CMatrix::from_fn(n, n, |j, l| {
        Complex64::new(norm * (PI * ((j + 1) * (l + 1)) as f64 / h).sin(), 0.0)
    });
    let weights = (0..=k)
        .map(|j| Rational64::new(j * (j + 2), 4 * (k + 2)))
        .collect();
    ModularData::new(
        format!("su2_{k}"),
        (0..=k).map(|j| j.to_string()).collect(),
        0,
        s,
        weights,
        Rational64::new(3 * k, k + 2),
    )
}

/// The Ising theory with labels `1, psi, sigma`.
pub fn builtin_ising() -> ModularData {
    let r = std::f64::consts::SQRT_2;
    let rows = [[1.0, 1.0, r], [1.0, 1.0, -r], [r, -r, 0.0]];
    let s = CMatrix::from_fn(3, 3, |i, j| Complex64::new(0.5 * rows[i][j], 0.0));
    ModularData::new(
        "ising",
        vec!["1".into(), "psi".into(), "sigma".into()],
        0,
        s,
        vec![
            Rational64::zero(),
            Rational64::new(1, 2),
            Rational64::new(1, 16),
        ],
        Rational64::new(1, 2),
    )
    .expect("ising data is well-formed")
}

/// The one-label theory with `S = [1]`.
pub fn builtin_trivial() -> ModularData {
    ModularData::new(
        "trivial",
        vec!["1".into()],
        0,
        CMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)),
        vec![Rational64::zero()],
        Rational64::zero(),
    )
    .expect("trivial data is well-formed")
}

/// Where a theory comes from: a `builtin:` URI or a file path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheorySpec {
    Builtin {
        name: String,
        params: Vec<(String, i64)>,
    },
    File(PathBuf),
}

impl FromStr for TheorySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(rest) = s.strip_prefix("builtin:") else {
            return Ok(TheorySpec::File(PathBuf::from(s)));
        };
        let (name, query) = match rest.split_once('?') {
            Some((n, q)) => (n, Some(q)),
            None => (rest, None),
        };
        if !matches!(name, "su2" | "ising" | "trivial") {
            return Err(Error::Parameter(format!("unknown builtin theory `{name}`")));
        }
        let mut params = Vec::new();
        for kv in query.into_iter().flat_map(|q| q.split('&')) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("malformed parameter `{kv}`")))?;
            let v = v
                .parse::<i64>()
                .map_err(|_| Error::Parameter(format!("parameter `{k}` must be an integer")))?;
            params.push((k.to_string(), v));
        }
        let spec = TheorySpec::Builtin {
            name: name.to_string(),
            params,
        };
        if name == "su2" {
            let k = spec.param("k").ok_or_else(|| {
                Error::Parameter("builtin:su2 requires a level, e.g. builtin:su2?k=3".into())
            })?;
            if k < 1 {
                return Err(Error::Parameter("su2 requires level k >= 1".into()));
            }
        }
        Ok(spec)
    }
}

impl TheorySpec {
    fn param(&self, key: &str) -> Option<i64> {
        match self {
            TheorySpec::Builtin { params, .. } => {
                params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
            }
            TheorySpec::File(_) => None,
        }
    }

    /// Builds or reads the theory. No modular validation is performed.
    pub fn load(&self) -> Result<ModularData> {
        match self {
            TheorySpec::Builtin { name, .. } => match name.as_str() {
                "su2" => {
                    let k = self.param("k").unwrap_or(0);
                    let k = u32::try_from(k)
                        .map_err(|_| Error::Parameter(format!("bad su2 level {k}")))?;
                    builtin_su2(k)
                }
                "ising" => Ok(builtin_ising()),
                "trivial" => Ok(builtin_trivial()),
                other => Err(Error::Parameter(format!(
                    "unknown builtin theory `{other}`"
                ))),
            },
            TheorySpec::File(path) => {
                let bytes = std::fs::read(path).map_err(|e| {
                    Error::Parameter(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_theory(&bytes)
            }
        }
    }
}

/// A parsed document plus any normalisation warnings.
#[derive(Debug, Clone)]
pub struct ParsedTheory {
    pub data: ModularData,
    pub warnings: Vec<String>,
}

/// Parses a theory document, logging normalisation warnings.
pub fn parse_theory(bytes: &[u8]) -> Result<ModularData> {
    let parsed = parse_theory_with_warnings(bytes)?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    Ok(parsed.data)
}

pub fn parse_theory_with_warnings(bytes: &[u8]) -> Result<ParsedTheory> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        offset: byte_offset(bytes, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| Error::Parse {
        offset: 0,
        message: "top-level value must be a JSON object".into(),
    })?;
    if let Some(extra) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(schema(extra, "unknown key"));
    }
    let mut warnings = Vec::new();

    let name = field(obj, "name")?
        .as_str()
        .ok_or_else(|| schema("name", "must be a string"))?
        .to_string();

    let labels: Vec<String> = field(obj, "labels")?
        .as_array()
        .ok_or_else(|| schema("labels", "must be an array of strings"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema("labels", "must be an array of strings"))
        })
        .collect::<Result<_>>()?;
    let m = labels.len();
    if m == 0 {
        return Err(schema("labels", "must not be empty"));
    }

    let vacuum = match obj.get("vacuum") {
        None => 0,
        Some(v) => v
            .as_u64()
            .map(|x| x as usize)
            .filter(|&x| x < m)
            .ok_or_else(|| schema("vacuum", "must be a label index"))?,
    };

    let central_charge = rational(field(obj, "central_charge")?, "central_charge")?;

    let raw_weights = field(obj, "weights")?
        .as_array()
        .ok_or_else(|| schema("weights", "must be an array of rationals"))?;
    if raw_weights.len() != m {
        return Err(schema(
            "weights",
            &format!("has {} entries for {m} labels", raw_weights.len()),
        ));
    }
    let mut weights = Vec::with_capacity(m);
    for (i, w) in raw_weights.iter().enumerate() {
        let w = rational(w, "weights")?;
        let reduced = frac(w);
        if reduced != w {
            warnings.push(format!(
                "weight of `{}` is {w}, outside [0, 1); reduced to {reduced}",
                labels[i]
            ));
        }
        weights.push(reduced);
    }

    let raw_s = field(obj, "S")?
        .as_array()
        .ok_or_else(|| schema("S", "must be an array of [re, im] pairs"))?;
    if raw_s.len() != m * m {
        return Err(schema(
            "S",
            &format!("has {} entries, expected {}", raw_s.len(), m * m),
        ));
    }
    let entries: Vec<Complex64> = raw_s
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(schema("S", "entries must be numeric [re, im] pairs")),
            },
            _ => Err(schema("S", "entries must be [re, im] pairs")),
        })
        .collect::<Result<_>>()?;
    let s = CMatrix::from_row_slice(m, m, &entries);

    let data = ModularData::new(name, labels, vacuum, s, weights, central_charge)
        .map_err(|e| schema("labels", &e.to_string()))?;
    Ok(ParsedTheory { data, warnings })
}

pub(crate) fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(key, "missing"))
}

pub(crate) fn schema(field: &str, message: &str) -> Error {
    Error::Schema {
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn rational(v: &Value, name: &str) -> Result<Rational64> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(name, "rationals are {\"num\": int, \"den\": int}"))?;
    if obj.len() != 2 {
        return Err(schema(name, "rationals have exactly the keys num and den"));
    }
    let num = obj.get("num").and_then(Value::as_i64);
    let den = obj.get("den").and_then(Value::as_i64);
    match (num, den) {
        (Some(n), Some(d)) if d > 0 => Ok(Rational64::new(n, d)),
        (Some(_), Some(_)) => Err(schema(name, "denominator must be positive")),
        _ => Err(schema(name, "num and den must be integers")),
    }
}

pub(crate) fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = bytes
        .split(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum();
    (line_start + column.saturating_sub(1)).min(bytes.len())
}

fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_rational(r: &Rational64) -> String {
    format!("{{\"num\": {}, \"den\": {}}}", r.numer(), r.denom())
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

/// Serialises with a fixed key order and 17 significant digits per float.
pub fn serialize_theory(md: &ModularData) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_str(md.name()));
    let labels: Vec<String> = md.labels().iter().map(|l| json_str(&l.name)).collect();
    let _ = writeln!(out, "  \"labels\": [{}],", labels.join(", "));
    let _ = writeln!(out, "  \"vacuum\": {},", md.vacuum());
    let _ = writeln!(
        out,
        "  \"central_charge\": {},",
        fmt_rational(&md.central_charge())
    );
    let weights: Vec<String> = md.weights().iter().map(fmt_rational).collect();
    let _ = writeln!(out, "  \"weights\": [{}],", weights.join(", "));
    let m = md.rank();
    let s = md.s();
    let rows: Vec<String> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| format!("[{}, {}]", fmt_float(s[(i, j)].re), fmt_float(s[(i, j)].im)))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    let _ = writeln!(out, "  \"S\": [\n    {}\n  ]", rows.join(",\n    "));
    out.push_str("}\n");
    out.into_bytes()
}
