//! Check results, the suite report and their serialisations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::config::SuiteConfig;
use crate::error::CheckError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(serialize_with = "ser_metrics", deserialize_with = "de_metrics")]
    pub metrics: BTreeMap<String, f64>,
    #[serde(serialize_with = "ser_real", deserialize_with = "de_real")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Reasons for a failure or a skip; empty on success.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub duration_s: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(config: SuiteConfig, mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Self { config, results, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> Result<String, CheckError> {
        serde_json::to_string_pretty(self).map_err(|e| CheckError::Serialise(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, CheckError> {
        serde_json::from_str(text).map_err(|e| CheckError::Serialise(e.to_string()))
    }

    /// One row per metric: `check,status,metric,value,tolerance,duration_s`.
    pub fn to_csv(&self) -> Result<String, CheckError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CheckError::Serialise(e.to_string());
        w.write_record(["check", "status", "metric", "value", "tolerance", "duration_s"]).map_err(err)?;
        for r in &self.results {
            let tol = format_real(r.tolerance);
            let dur = format!("{:.6}", r.duration_s);
            if r.metrics.is_empty() {
                w.write_record([r.name.as_str(), r.status.as_str(), "", "", &tol, &dur]).map_err(err)?;
            }
            for (k, v) in &r.metrics {
                w.write_record([r.name.as_str(), r.status.as_str(), k, &format_real(*v), &tol, &dur]).map_err(err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CheckError::Serialise(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CheckError::Serialise(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "# Check report\n\nseed {} · {} pass · {} fail · {} skipped\n", self.config.seed, s.pass, s.fail, s.skipped);
        let _ = writeln!(out, "| check | status | tolerance | metrics | duration (s) |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for r in &self.results {
            let metrics: Vec<String> = r.metrics.iter().map(|(k, v)| format!("{k} = {}", format_short(*v))).collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {:.3} |",
                r.name,
                r.status.as_str(),
                format_short(r.tolerance),
                metrics.join("<br>"),
                r.duration_s
            );
        }
        let notes: Vec<_> = self.results.iter().filter(|r| !r.notes.is_empty()).collect();
        if !notes.is_empty() {
            let _ = writeln!(out, "\n## Notes\n");
            for r in notes {
                for n in &r.notes {
                    let _ = writeln!(out, "- `{}`: {n}", r.name);
                }
            }
        }
        out
    }
}

/// 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn format_short(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e9 {
        format!("{x}")
    } else {
        format!("{x:.3e}")
    }
}

fn raw_real(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format_real(x) } else { format!("\"{}\"", format_real(x)) };
    RawValue::from_string(text).expect("valid JSON number")
}

fn ser_real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw_real(*x).serialize(s)
}

fn ser_metrics<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &raw_real(*v))?;
    }
    map.end()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RealRepr {
    Number(f64),
    Text(String),
}

impl RealRepr {
    fn value<E: de::Error>(self) -> Result<f64, E> {
        match self {
            RealRepr::Number(x) => Ok(x),
            RealRepr::Text(t) => match t.as_str() {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(E::custom(format!("not a real number: {other}"))),
            },
        }
    }
}

fn de_real<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    RealRepr::deserialize(d)?.value()
}

fn de_metrics<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
    let raw = BTreeMap::<String, RealRepr>::deserialize(d)?;
    raw.into_iter().map(|(k, v)| Ok((k, v.value()?))).collect()
}

/// Accumulates metrics and the bounds they must satisfy.
#[derive(Debug, Default, Clone)]
pub struct Recorder {
    pub metrics: BTreeMap<String, f64>,
    pub failures: Vec<String>,
}

impl Recorder {
    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.to_string(), value);
    }

    /// `value ≤ bound`.
    pub fn at_most(&mut self, name: &str, value: f64, bound: f64) {
        self.metric(name, value);
        if !(value <= bound) {
            self.failures.push(format!("{name} = {value:e} exceeds {bound:e}"));
        }
    }

    /// `value ≥ bound`.
    pub fn at_least(&mut self, name: &str, value: f64, bound: f64) {
        self.metric(name, value);
        if !(value >= bound) {
            self.failures.push(format!("{name} = {value:e} is below {bound:e}"));
        }
    }

    /// `value > bound`.
    pub fn above(&mut self, name: &str, value: f64, bound: f64) {
        self.metric(name, value);
        if !(value > bound) {
            self.failures.push(format!("{name} = {value:e} is not above {bound:e}"));
        }
    }

    /// Exact equality, for counts and values that must be bit-exact.
    pub fn exactly(&mut self, name: &str, value: f64, want: f64) {
        self.metric(name, value);
        if value != want {
            self.failures.push(format!("{name} = {value:e}, expected exactly {want:e}"));
        }
    }

    pub fn require(&mut self, ok: bool, message: impl Into<String>) {
        if !ok {
            self.failures.push(message.into());
        }
    }
}
