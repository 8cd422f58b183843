//! One JSON line per verified identity.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qseries::{fmt_q, QSeries, Q};
use crate::symfunc::XLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ConjecturalPass,
    ConjecturalFail,
    Error,
}

impl Status {
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Error)
    }
}

/// Whether a failure of the identity would contradict a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Standing {
    Proved,
    Conjectural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstMismatch {
    /// t-exponent (0 for plain rational values).
    pub exponent: i64,
    pub expected: String,
    pub got: String,
}

impl FirstMismatch {
    pub fn series(expected: &QSeries, got: &QSeries) -> Option<Self> {
        expected.first_mismatch(got).map(|m| FirstMismatch {
            exponent: m.exponent,
            expected: fmt_q(&m.expected),
            got: fmt_q(&m.got),
        })
    }

    pub fn laurent(expected: &XLaurent, got: &XLaurent) -> Option<Self> {
        expected.first_mismatch(got).map(|(e, m)| {
            let mono = format!("x{:?}", e.iter().map(|d| *d as f64 / 2.0).collect::<Vec<_>>());
            FirstMismatch {
                exponent: m.exponent,
                expected: format!("{} {}", fmt_q(&m.expected), mono),
                got: format!("{} {}", fmt_q(&m.got), mono),
            }
        })
    }

    pub fn value(expected: &Q, got: &Q) -> Option<Self> {
        (expected != got).then(|| FirstMismatch { exponent: 0, expected: fmt_q(expected), got: fmt_q(got) })
    }

    pub fn flag(ok: bool) -> Option<Self> {
        (!ok).then(|| FirstMismatch { exponent: 0, expected: "true".into(), got: "false".into() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub order: i64,
    pub sample_points: usize,
    pub status: Status,
    pub first_mismatch: Option<FirstMismatch>,
    pub runtime_ms: u64,
}

/// Outcome of one sample: `Ok(None)` is agreement.
pub type Sample = Result<Option<FirstMismatch>, Error>;

impl IdentityReport {
    /// Fold sample outcomes into a report. The first error or mismatch wins;
    /// an error message is kept under the `error` parameter.
    pub fn from_samples(id: &str, standing: Standing, params: BTreeMap<String, String>, order: i64, samples: Vec<Sample>) -> Self {
        let mut params = params;
        let n = samples.len();
        let mut status = match standing {
            Standing::Proved => Status::Pass,
            Standing::Conjectural => Status::ConjecturalPass,
        };
        let mut first = None;
        for s in samples {
            match s {
                Ok(None) => {}
                Ok(Some(m)) => {
                    status = match standing {
                        Standing::Proved => Status::Fail,
                        Standing::Conjectural => Status::ConjecturalFail,
                    };
                    first = Some(m);
                    break;
                }
                Err(e) => {
                    status = Status::Error;
                    params.insert("error".into(), e.to_string());
                    break;
                }
            }
        }
        IdentityReport { id: id.to_string(), params, order, sample_points: n, status, first_mismatch: first, runtime_ms: 0 }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        let mut s = format!(
            "{:<16} {:<17} order={} points={} {}",
            self.id,
            serde_json::to_value(self.status).unwrap().as_str().unwrap(),
            self.order,
            self.sample_points,
            params.join(" ")
        );
        if let Some(m) = &self.first_mismatch {
            s.push_str(&format!(" mismatch at t^{}: expected {}, got {}", m.exponent, m.expected, m.got));
        }
        s
    }
}

/// Build a params map from pairs.
pub fn params<K: ToString, V: ToString>(pairs: &[(K, V)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Run `f` and record its wall time in the report when `timed`.
pub fn timed(timed: bool, f: impl FnOnce() -> IdentityReport) -> IdentityReport {
    let start = Instant::now();
    let mut r = f();
    if timed {
        r.runtime_ms = start.elapsed().as_millis() as u64;
    }
    r
}
