//! Text and JSON formats for node files, BD arrays and reports.
//!
//! Scalar files hold one literal per line (`3/7`, `0.25`, `-2`); blank
//! lines and anything after `#` are ignored. Scalars are written as strings
//! so JSON never loses precision: `f64` uses Rust's shortest round-trip
//! decimal, rationals print as `p/q`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::basis::Parity;
use crate::bd::BdFactorization;
use crate::eigen::Spectrum;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{parse_scalar, Rational};
use crate::scalar::Scalar;
use crate::tn_ops::SolveReport;

/// Scalars with a lossless text form.
pub trait ScalarText: Scalar {
    fn to_text(&self) -> String;
    fn from_text(text: &str) -> Result<Self>;
}

impl ScalarText for f64 {
    fn to_text(&self) -> String {
        format!("{self}")
    }

    /// Parsed exactly, then rounded once to the nearest double.
    fn from_text(text: &str) -> Result<Self> {
        Ok(parse_scalar(text)?.to_f64())
    }
}

impl ScalarText for Rational {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn from_text(text: &str) -> Result<Self> {
        parse_scalar(text)
    }
}

/// Parses a scalar file. Errors name the 1-based line.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let value = parse_scalar(body)
            .map_err(|_| Error::Format(format!("line {}: malformed scalar `{body}`", k + 1)))?;
        out.push(value);
    }
    Ok(out)
}

/// JSON shape of a BD array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BdDocument {
    pub order: usize,
    pub parity: Parity,
    pub rows: Vec<Vec<String>>,
    /// `‖B − B_e‖₂ / ‖B_e‖₂`, when checked against the oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
}

impl BdDocument {
    pub fn from_bd<S: ScalarText>(bd: &BdFactorization<S>) -> Self {
        BdDocument {
            order: bd.order(),
            parity: bd.parity(),
            rows: bd
                .entries()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ScalarText::to_text).collect())
                .collect(),
            relative_error: None,
        }
    }

    /// Checks shape, parity and strict positivity before wrapping.
    pub fn to_bd<S: ScalarText>(&self) -> Result<BdFactorization<S>> {
        if self.rows.len() != self.order || self.rows.iter().any(|r| r.len() != self.order) {
            return Err(Error::InvalidBd(format!("rows do not form a {0}×{0} array", self.order)));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|s| S::from_text(s)).collect::<Result<Vec<S>>>())
            .collect::<Result<Vec<_>>>()?;
        let bd = BdFactorization::from_matrix(Matrix::from_rows(rows)?)?;
        if bd.parity() != self.parity {
            return Err(Error::InvalidBd(format!(
                "parity {} does not match order {}",
                self.parity, self.order
            )));
        }
        if !bd.is_strictly_positive() {
            return Err(Error::InvalidBd("entries must be strictly positive".into()));
        }
        Ok(bd)
    }
}

pub fn bd_to_json<S: ScalarText>(bd: &BdFactorization<S>) -> String {
    serde_json::to_string_pretty(&BdDocument::from_bd(bd)).expect("serializable")
}

pub fn bd_from_json<S: ScalarText>(text: &str) -> Result<BdFactorization<S>> {
    let doc: BdDocument =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("BD JSON: {e}")))?;
    doc.to_bd()
}

/// One row per line, entries separated by two spaces.
pub fn bd_to_text<S: ScalarText>(bd: &BdFactorization<S>) -> String {
    let mut out = String::new();
    for row in bd.entries().to_rows() {
        let cells: Vec<String> = row.iter().map(ScalarText::to_text).collect();
        writeln!(out, "{}", cells.join("  ")).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub x: Vec<String>,
    pub residual_norm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
}

impl SolveDocument {
    pub fn from_report<S: ScalarText>(report: &SolveReport<S>) -> Self {
        SolveDocument {
            x: report.x.iter().map(ScalarText::to_text).collect(),
            residual_norm: report.residual_norm,
            relative_error: report.relative_error,
        }
    }
}

pub fn solve_to_json<S: ScalarText>(report: &SolveReport<S>) -> String {
    serde_json::to_string_pretty(&SolveDocument::from_report(report)).expect("serializable")
}

pub fn solve_to_text<S: ScalarText>(report: &SolveReport<S>) -> String {
    let mut out = String::new();
    for v in &report.x {
        writeln!(out, "{}", v.to_text()).unwrap();
    }
    writeln!(out, "residual_norm {:e}", report.residual_norm).unwrap();
    if let Some(e) = report.relative_error {
        writeln!(out, "relative_error {e:e}").unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
}

fn eigen_entries(spectrum: &Spectrum) -> Vec<EigenEntry> {
    spectrum
        .values
        .iter()
        .enumerate()
        .map(|(k, &value)| EigenEntry {
            value,
            relative_error: spectrum.relative_errors.as_ref().map(|e| e[k]),
        })
        .collect()
}

pub fn spectrum_to_json(spectrum: &Spectrum) -> String {
    serde_json::to_string_pretty(&eigen_entries(spectrum)).expect("serializable")
}

pub fn spectrum_from_json(text: &str) -> Result<Spectrum> {
    let entries: Vec<EigenEntry> =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("spectrum JSON: {e}")))?;
    let relative_errors = entries
        .iter()
        .map(|e| e.relative_error)
        .collect::<Option<Vec<f64>>>();
    Ok(Spectrum {
        values: entries.iter().map(|e| e.value).collect(),
        relative_errors,
    })
}

pub fn spectrum_to_text(spectrum: &Spectrum) -> String {
    let mut out = String::new();
    for e in eigen_entries(spectrum) {
        match e.relative_error {
            Some(r) => writeln!(out, "{:e}  relative_error {r:.2e}", e.value).unwrap(),
            None => writeln!(out, "{:e}", e.value).unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::NodeSet;
    use crate::bd::decompose;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn scalar_file_comments_and_blanks() {
        let v = parse_scalar_list("# nodes\n1/4\n\n  0.5  # half\n").unwrap();
        assert_eq!(v, vec![q(1, 4), q(1, 2)]);
    }

    #[test]
    fn scalar_file_error_names_line() {
        let err = parse_scalar_list("1/4\nabc\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn f64_text_roundtrips() {
        for x in [0.1, 1.0 / 3.0, 5.038950256334333e-9, 12345.678, 1e-300] {
            assert_eq!(f64::from_text(&x.to_text()).unwrap(), x);
        }
    }

    #[test]
    fn bd_json_roundtrip_exact() {
        let nodes = NodeSet::from_rationals(&[q(1, 5), q(1, 3), q(1, 2), q(4, 5)]).unwrap();
        let bd = decompose(&nodes);
        let back: BdFactorization<Rational> = bd_from_json(&bd_to_json(&bd)).unwrap();
        assert_eq!(back, bd);
    }

    #[test]
    fn bd_json_roundtrip_float() {
        let nodes = NodeSet::new(vec![0.1, 0.35, 0.6, 0.7, 0.95]).unwrap();
        let bd = decompose(&nodes);
        let back: BdFactorization<f64> = bd_from_json(&bd_to_json(&bd)).unwrap();
        assert_eq!(back, bd);
    }

    #[test]
    fn bd_json_rejects_bad_shapes() {
        let bad = r#"{"order":2,"parity":"odd","rows":[["1","2"]]}"#;
        assert!(matches!(bd_from_json::<f64>(bad), Err(Error::InvalidBd(_))));
        let parity = r#"{"order":2,"parity":"even","rows":[["1","2"],["3","4"]]}"#;
        assert!(matches!(bd_from_json::<f64>(parity), Err(Error::InvalidBd(_))));
        let negative = r#"{"order":2,"parity":"odd","rows":[["1","-2"],["3","4"]]}"#;
        assert!(matches!(bd_from_json::<f64>(negative), Err(Error::InvalidBd(_))));
        assert!(matches!(bd_from_json::<f64>("{"), Err(Error::Format(_))));
    }

    #[test]
    fn spectrum_json_roundtrip() {
        let s = Spectrum {
            values: vec![1.0, 0.125],
            relative_errors: Some(vec![0.0, 1e-16]),
        };
        assert_eq!(spectrum_from_json(&spectrum_to_json(&s)).unwrap(), s);
        let plain = Spectrum {
            values: vec![1.0],
            relative_errors: None,
        };
        let json = spectrum_to_json(&plain);
        assert!(!json.contains("relative_error"));
        assert_eq!(spectrum_from_json(&json).unwrap(), plain);
    }

    #[test]
    fn solve_json_omits_missing_error() {
        let r = SolveReport {
            x: vec![q(1, 1), q(1, 3)],
            residual_norm: 0.0,
            relative_error: None,
        };
        let json = solve_to_json(&r);
        assert!(!json.contains("relative_error"));
        let doc: SolveDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc.x, vec!["1", "1/3"]);
    }
}
