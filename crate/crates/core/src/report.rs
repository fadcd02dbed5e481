//! Verification records and their JSON / CSV / plain-text renderings.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactalg::BigRational;

/// `r` to six significant digits, trailing zeros dropped.
pub fn decimal6(r: &BigRational) -> String {
    use num_traits::ToPrimitive;
    let x = r.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let places = (5 - x.abs().log10().floor() as i64).max(0) as usize;
    let s = format!("{x:.places$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// One checked equality between two independently computed quantities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub family: String,
    pub parameters: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    /// Set when the expected side comes from an unproved identity.
    pub conjectural: bool,
    pub terms: u64,
    pub elapsed_ms: Option<u64>,
    /// Decimal rendering of an exact numeric `lhs`, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
}

impl Record {
    pub fn new(family: impl Into<String>, lhs: impl ToString, rhs: impl ToString, equal: bool) -> Self {
        Record {
            family: family.into(),
            parameters: BTreeMap::new(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            equal,
            conjectural: false,
            terms: 0,
            elapsed_ms: None,
            approx: None,
        }
    }

    pub fn param(mut self, key: &str, value: i64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn conjectural(mut self, yes: bool) -> Self {
        self.conjectural = yes;
        self
    }

    pub fn terms(mut self, n: u64) -> Self {
        self.terms = n;
        self
    }

    pub fn approx(mut self, value: &BigRational) -> Self {
        self.approx = Some(decimal6(value));
        self
    }

    pub fn elapsed(mut self, start: std::time::Instant) -> Self {
        self.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    fn param_string(&self) -> String {
        self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new(Vec::new())
    }
}

impl VerificationReport {
    pub fn new(records: Vec<Record>) -> Self {
        let mut r = VerificationReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: serde_json::Value::Null,
            records,
            summary: Summary::default(),
        };
        r.resummarize();
        r
    }

    pub fn push(&mut self, rec: Record) {
        self.records.push(rec);
        self.resummarize();
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        self.resummarize();
    }

    fn resummarize(&mut self) {
        let passed = self.records.iter().filter(|r| r.equal).count();
        self.summary = Summary { checked: self.records.len(), passed, failed: self.records.len() - passed };
    }

    pub fn all_equal(&self) -> bool {
        self.summary.failed == 0
    }

    /// Drop wall-clock timings so repeated runs serialize identically.
    pub fn strip_timing(&mut self) {
        for r in &mut self.records {
            r.elapsed_ms = None;
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(e.to_string());
        w.write_record(["family", "parameters", "lhs", "rhs", "equal", "conjectural", "terms", "elapsed_ms"])
            .map_err(io)?;
        for r in &self.records {
            w.write_record([
                r.family.clone(),
                r.param_string(),
                r.lhs.clone(),
                r.rhs.clone(),
                r.equal.to_string(),
                r.conjectural.to_string(),
                r.terms.to_string(),
                r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = if r.equal { "ok  " } else { "FAIL" };
            let conj = if r.conjectural { " [conjectural]" } else { "" };
            let _ = write!(out, "{tag} {} {}{conj}", r.family, r.param_string());
            if r.equal {
                match &r.approx {
                    Some(a) => writeln!(out, ": {} ({a})", r.lhs),
                    None => writeln!(out, ": {}", r.lhs),
                }
                .ok();
            } else {
                let _ = writeln!(out, "\n     lhs: {}\n     rhs: {}", r.lhs, r.rhs);
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "checked {}, passed {}, failed {}", s.checked, s.passed, s.failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_failures() {
        let mut r = VerificationReport::new(vec![Record::new("x", "1", "1", true).param("m", 1)]);
        assert!(r.all_equal());
        r.push(Record::new("x", "1", "2", false).param("m", 2).conjectural(true));
        assert_eq!(r.summary, Summary { checked: 2, passed: 1, failed: 1 });
        let csv = r.to_csv().unwrap();
        assert!(csv.lines().nth(2).unwrap().starts_with("x,m=2,1,2,false,true"));
        assert!(r.to_pretty().contains("FAIL x m=2 [conjectural]"));
        assert!(r.to_json().unwrap().contains("\"failed\": 1"));
        assert!(!r.to_json().unwrap().contains("approx"));
    }

    #[test]
    fn six_significant_digits() {
        let d = |n, m| decimal6(&crate::exactalg::rat(n, m));
        assert_eq!(d(11, 32), "0.34375");
        assert_eq!(d(7, 27), "0.259259");
        assert_eq!(d(41, 81), "0.506173");
        assert_eq!(d(1, 1), "1");
        assert_eq!(d(-1, 3), "-0.333333");
        assert_eq!(d(1000000, 3), "333333");
    }
}
