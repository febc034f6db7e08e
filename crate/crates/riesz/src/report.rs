//! Verification reports and their line-oriented serializations.

use std::fmt;
use std::time::Duration;

use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A float printed with 17 significant digits (`null` in JSON when not
/// finite).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sci(pub f64);

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.16e}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(self.to_string()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// How a statistic is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass iff `statistic < threshold` (residuals, z-scores).
    Below,
    /// Pass iff `statistic > threshold` (p-values, detection runs).
    Above,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Below => "below",
            Comparison::Above => "above",
        })
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub statistic: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
    /// Sample size, trial count or number of grid points.
    pub size: u64,
    pub detail: String,
    pub runtime: Option<Duration>,
}

#[derive(serde::Serialize)]
struct JsonLine<'a> {
    check: &'a str,
    statistic: Sci,
    threshold: Sci,
    comparison: Comparison,
    pass: bool,
    size: u64,
    detail: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_s: Option<Sci>,
}

impl VerificationReport {
    /// A report whose pass flag is derived from the comparison; a NaN
    /// statistic never passes.
    pub fn new(check: impl Into<String>, statistic: f64, threshold: f64, comparison: Comparison, size: u64) -> Self {
        let pass = match comparison {
            Comparison::Below => statistic < threshold,
            Comparison::Above => statistic > threshold,
        };
        VerificationReport {
            check: check.into(),
            statistic,
            threshold,
            comparison,
            pass,
            size,
            detail: String::new(),
            runtime: None,
        }
    }

    /// A failed report for a check that could not be evaluated.
    pub fn errored(check: impl Into<String>, message: impl fmt::Display) -> Self {
        let mut r = VerificationReport::new(check, f64::NAN, f64::NAN, Comparison::Below, 0);
        r.detail = format!("error: {message}");
        r
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// One JSON object; the runtime is included only when `timings` is set
    /// so that reports are otherwise bit-stable.
    pub fn to_json_line(&self, timings: bool) -> String {
        let line = JsonLine {
            check: &self.check,
            statistic: Sci(self.statistic),
            threshold: Sci(self.threshold),
            comparison: self.comparison,
            pass: self.pass,
            size: self.size,
            detail: &self.detail,
            runtime_s: if timings {
                self.runtime.map(|d| Sci(d.as_secs_f64()))
            } else {
                None
            },
        };
        serde_json::to_string(&line).expect("report serialization")
    }

    pub fn csv_header(timings: bool) -> &'static str {
        if timings {
            "check,statistic,threshold,comparison,pass,size,detail,runtime_s"
        } else {
            "check,statistic,threshold,comparison,pass,size,detail"
        }
    }

    pub fn to_csv_row(&self, timings: bool) -> String {
        let mut row = format!(
            "\"{}\",{},{},{},{},{},\"{}\"",
            self.check.replace('"', "\"\""),
            Sci(self.statistic),
            Sci(self.threshold),
            self.comparison,
            self.pass,
            self.size,
            self.detail.replace('"', "\"\"")
        );
        if timings {
            let t = self.runtime.map(|d| Sci(d.as_secs_f64()).to_string()).unwrap_or_default();
            row.push(',');
            row.push_str(&t);
        }
        row
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: statistic {} {} threshold {} (size {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            Sci(self.statistic),
            self.comparison,
            Sci(self.threshold),
            self.size
        )?;
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}
