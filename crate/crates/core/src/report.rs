//! Verification reports and the versioned JSON document wrapping them.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bigreal::{agree_digits, BigReal, PrecisionContext};

pub const SCHEMA_VERSION: &str = "1";

/// Outcome of one check. `pass` holds exactly when
/// `digits_matched >= digits_requested`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub id: String,
    pub anchor: String,
    pub digits_requested: u32,
    pub digits_matched: u32,
    pub lhs: String,
    pub rhs: String,
    pub terms: usize,
    pub method: String,
    pub pass: bool,
    pub ms: u64,
}

impl VerificationReport {
    /// Compares two values to `digits` decimal places. Agreement is capped
    /// at `cap`, the precision the values were computed at.
    #[allow(clippy::too_many_arguments)]
    pub fn compare(
        id: impl Into<String>,
        anchor: impl Into<String>,
        digits: u32,
        cap: u32,
        lhs: &BigReal,
        rhs: &BigReal,
        terms: usize,
        method: impl Into<String>,
        elapsed: Duration,
    ) -> Self {
        let matched = agree_digits(lhs, rhs, cap.max(digits));
        let shown = digits as usize + 3;
        VerificationReport {
            id: id.into(),
            anchor: anchor.into(),
            digits_requested: digits,
            digits_matched: matched,
            lhs: lhs.to_decimal(shown),
            rhs: rhs.to_decimal(shown),
            terms,
            method: method.into(),
            pass: matched >= digits,
            ms: elapsed.as_millis() as u64,
        }
    }

    /// Report for an exact (rational) certification.
    #[allow(clippy::too_many_arguments)]
    pub fn exact(
        id: impl Into<String>,
        anchor: impl Into<String>,
        digits: u32,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        terms: usize,
        holds: bool,
        elapsed: Duration,
    ) -> Self {
        VerificationReport {
            id: id.into(),
            anchor: anchor.into(),
            digits_requested: digits,
            digits_matched: if holds { digits } else { 0 },
            lhs: lhs.into(),
            rhs: rhs.into(),
            terms,
            method: "exact".into(),
            pass: holds,
            ms: elapsed.as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextEcho {
    pub digits: u32,
    pub bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub version: String,
    pub context: ContextEcho,
    pub reports: Vec<VerificationReport>,
    pub pass: bool,
    pub total_ms: u64,
}

impl ReportDocument {
    pub fn new(ctx: &PrecisionContext, reports: Vec<VerificationReport>, elapsed: Duration) -> Self {
        let pass = reports.iter().all(|r| r.pass);
        ReportDocument {
            version: SCHEMA_VERSION.into(),
            context: ContextEcho {
                digits: ctx.target_digits,
                bits: ctx.working_bits,
            },
            reports,
            pass,
            total_ms: elapsed.as_millis() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn compare_sets_pass_from_digits() {
        let a = BigReal::from_rational(&rat(355, 113), 200);
        let b = crate::bigreal::pi(&PrecisionContext::new(40));
        let r = VerificationReport::compare("x", "", 7, 40, &a, &b, 1, "direct", Duration::ZERO);
        assert_eq!(r.digits_matched, 7);
        assert!(r.pass);
        let r = VerificationReport::compare("x", "", 8, 40, &a, &b, 1, "direct", Duration::ZERO);
        assert!(!r.pass);
    }

    #[test]
    fn document_round_trips_and_rejects_unknown_fields() {
        let ctx = PrecisionContext::new(20);
        let rep = VerificationReport::exact("wz", "F", 20, "a", "b", 3, true, Duration::ZERO);
        let doc = ReportDocument::new(&ctx, vec![rep], Duration::from_millis(5));
        let text = serde_json::to_string(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(serde_json::from_value::<ReportDocument>(v).is_err());
    }
}
