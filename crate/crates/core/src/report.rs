//! Uniform report rows and deterministic CSV/JSON emission.
//!
//! Every command and scenario emits the same flat schema:
//! `scenario,name,param_json,verdict,lhs,rhs,value,abs_err,tail_exponent,floor_sensitivity`.
//! Numbers are printed by the JSON float formatter in both formats so the
//! two outputs carry identical numeric content; non-finite values appear
//! as the tokens `inf`, `-inf`, `NaN` (quoted strings in JSON).

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::Result;
use crate::inequalities::{InequalityReport, Verdict};
use crate::quad::IntegralVerdict;

pub const HEADER: [&str; 10] = [
    "scenario",
    "name",
    "param_json",
    "verdict",
    "lhs",
    "rhs",
    "value",
    "abs_err",
    "tail_exponent",
    "floor_sensitivity",
];

#[derive(Debug, Clone, Default)]
pub struct Row {
    pub scenario: String,
    pub name: String,
    pub params: Map<String, Value>,
    pub verdict: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub value: Option<f64>,
    pub abs_err: Option<f64>,
    pub tail_exponent: Option<f64>,
    pub floor_sensitivity: Option<f64>,
}

impl Row {
    pub fn new(scenario: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            scenario: scenario.into(),
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn from_verdict(
        scenario: impl Into<String>,
        name: impl Into<String>,
        v: &IntegralVerdict,
    ) -> Self {
        let mut row = Self::new(scenario, name);
        row.verdict = v.kind_name().to_string();
        row.value = v.value();
        row.abs_err = v.abs_err();
        row.tail_exponent = v.tail_exponent;
        row.floor_sensitivity = Some(v.floor_sensitivity);
        row
    }

    pub fn from_inequality(scenario: impl Into<String>, r: &InequalityReport) -> Self {
        let mut row = Self::new(scenario, r.name.clone());
        row.params = r.params.clone();
        row.verdict = match &r.verdict {
            Verdict::Skipped(reason) => format!("Skipped:{reason}"),
            v => v.as_str().to_string(),
        };
        row.lhs = Some(r.lhs);
        row.rhs = Some(r.rhs);
        row
    }

    pub fn with_param(mut self, key: &str, value: Value) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn param_json(&self) -> String {
        serde_json::to_string(&Value::Object(self.params.clone())).expect("param map serializes")
    }
}

/// JSON-compatible float token; non-finite values get readable names.
pub fn fmt_f64(v: f64) -> String {
    match serde_json::Number::from_f64(v) {
        Some(n) => n.to_string(),
        None => {
            if v.is_nan() {
                "NaN".into()
            } else if v > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            }
        }
    }
}

fn fmt_opt(v: &Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn write_csv<W: Write>(mut out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(HEADER)
        .map_err(|e| crate::error::Error::Io(std::io::Error::other(e)))?;
    for r in rows {
        w.write_record([
            r.scenario.clone(),
            r.name.clone(),
            r.param_json(),
            r.verdict.clone(),
            fmt_opt(&r.lhs),
            fmt_opt(&r.rhs),
            fmt_opt(&r.value),
            fmt_opt(&r.abs_err),
            fmt_opt(&r.tail_exponent),
            fmt_opt(&r.floor_sensitivity),
        ])
        .map_err(|e| crate::error::Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

fn json_field(v: &Option<f64>) -> String {
    match v {
        None => "null".into(),
        Some(x) => match serde_json::Number::from_f64(*x) {
            Some(n) => n.to_string(),
            None => format!("\"{}\"", fmt_f64(*x)),
        },
    }
}

pub fn write_json<W: Write>(mut out: W, rows: &[Row]) -> Result<()> {
    writeln!(out, "[")?;
    for (i, r) in rows.iter().enumerate() {
        let comma = if i + 1 == rows.len() { "" } else { "," };
        writeln!(
            out,
            "  {{\"scenario\":{},\"name\":{},\"param_json\":{},\"verdict\":{},\"lhs\":{},\"rhs\":{},\"value\":{},\"abs_err\":{},\"tail_exponent\":{},\"floor_sensitivity\":{}}}{}",
            Value::String(r.scenario.clone()),
            Value::String(r.name.clone()),
            Value::String(r.param_json()),
            Value::String(r.verdict.clone()),
            json_field(&r.lhs),
            json_field(&r.rhs),
            json_field(&r.value),
            json_field(&r.abs_err),
            json_field(&r.tail_exponent),
            json_field(&r.floor_sensitivity),
            comma
        )?;
    }
    writeln!(out, "]")?;
    Ok(())
}

pub fn to_string(rows: &[Row], format: Format) -> Result<String> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(&mut buf, rows)?,
        Format::Json => write_json(&mut buf, rows)?,
    }
    Ok(String::from_utf8(buf).expect("report output is utf-8"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(crate::error::Error::Parse(format!(
                "unknown format `{other}`"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::{num, params};

    fn sample_rows() -> Vec<Row> {
        let rep = InequalityReport::check("demo", params(&[("s", num(0.5))]), 0.25, 1.0);
        vec![
            Row::from_inequality("unit", &rep),
            Row::new("unit", "sentinels").with_param("note", Value::String("has, comma".into())),
            {
                let mut r = Row::new("unit", "exponents");
                r.verdict = "Finite".into();
                r.value = Some(1.0);
                r.tail_exponent = Some(f64::NEG_INFINITY);
                r
            },
        ]
    }

    #[test]
    fn csv_and_json_carry_identical_numbers() {
        let rows = sample_rows();
        let csv_text = to_string(&rows, Format::Csv).unwrap();
        let json_text = to_string(&rows, Format::Json).unwrap();
        // the json is parseable and mirrors the csv cells
        let parsed: Vec<serde_json::Map<String, Value>> = serde_json::from_str(&json_text).unwrap();
        assert_eq!(parsed.len(), rows.len());
        let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
        for (rec, obj) in rdr.records().zip(&parsed) {
            let rec = rec.unwrap();
            let lhs_csv = rec.get(4).unwrap();
            let lhs_json = match &obj["lhs"] {
                Value::Null => String::new(),
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                other => panic!("unexpected {other:?}"),
            };
            assert_eq!(lhs_csv, lhs_json);
            let te_csv = rec.get(8).unwrap();
            let te_json = match &obj["tail_exponent"] {
                Value::Null => String::new(),
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                other => panic!("unexpected {other:?}"),
            };
            assert_eq!(te_csv, te_json);
        }
    }

    #[test]
    fn deterministic_bytes() {
        let a = to_string(&sample_rows(), Format::Csv).unwrap();
        let b = to_string(&sample_rows(), Format::Csv).unwrap();
        assert_eq!(a, b);
        let a = to_string(&sample_rows(), Format::Json).unwrap();
        let b = to_string(&sample_rows(), Format::Json).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_finite_tokens() {
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert_eq!(fmt_f64(0.25), "0.25");
    }
}
