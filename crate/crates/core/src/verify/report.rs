use serde::{Deserialize, Serialize};

use crate::spacetime::SpacetimePoint;

/// Aggregate of a residual over sample points.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ResidualStats {
    pub points: usize,
    pub skipped: usize,
    pub max_relative: f64,
    pub max_absolute: f64,
    pub worst_point: Option<SpacetimePoint>,
}

impl ResidualStats {
    pub(crate) fn from_samples(samples: impl IntoIterator<Item = (SpacetimePoint, Option<(f64, f64)>)>) -> Self {
        let mut s = ResidualStats::default();
        for (x, r) in samples {
            s.points += 1;
            match r {
                Some((rel, abs)) if rel.is_finite() && abs.is_finite() => {
                    if rel > s.max_relative || s.worst_point.is_none() {
                        s.max_relative = s.max_relative.max(rel);
                        s.worst_point = Some(x);
                    }
                    s.max_absolute = s.max_absolute.max(abs);
                }
                _ => s.skipped += 1,
            }
        }
        s
    }

    pub fn merge(self, o: ResidualStats) -> Self {
        let worst = if o.max_relative > self.max_relative { o.worst_point } else { self.worst_point };
        ResidualStats {
            points: self.points + o.points,
            skipped: self.skipped + o.skipped,
            max_relative: self.max_relative.max(o.max_relative),
            max_absolute: self.max_absolute.max(o.max_absolute),
            worst_point: worst.or(self.worst_point).or(o.worst_point),
        }
    }

    pub fn evaluated(&self) -> usize {
        self.points - self.skipped
    }

    pub fn into_record(self, check: &str, solution: &str, tolerance: f64) -> CheckRecord {
        let pass = self.evaluated() > 0 && self.max_relative <= tolerance;
        CheckRecord {
            check: check.to_string(),
            solution: solution.to_string(),
            points: self.points,
            skipped: self.skipped,
            max_residual: self.max_relative,
            max_absolute: self.max_absolute,
            tolerance,
            pass,
            note: None,
        }
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub solution: String,
    pub points: usize,
    /// Points whose stencil produced an error or a non-finite value.
    pub skipped: usize,
    pub max_residual: f64,
    pub max_absolute: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    /// A record for a single measured value compared against a tolerance.
    pub fn value(check: &str, solution: &str, value: f64, tolerance: f64) -> Self {
        CheckRecord {
            check: check.to_string(),
            solution: solution.to_string(),
            points: 1,
            skipped: 0,
            max_residual: value,
            max_absolute: value,
            tolerance,
            pass: value <= tolerance,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, o: VerificationReport) {
        self.records.extend(o.records);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn find(&self, check: &str, solution: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check == check && r.solution == solution)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        let s = ResidualStats::from_samples([
            (SpacetimePoint::ORIGIN, Some((1e-7, 1e-6))),
            (SpacetimePoint::new(1.0, 0.0, 0.0, 0.0), Some((2e-7, 1e-8))),
            (SpacetimePoint::new(2.0, 0.0, 0.0, 0.0), None),
        ]);
        assert_eq!((s.points, s.skipped), (3, 1));
        assert_eq!(s.worst_point.unwrap().t, 1.0);
        assert!(s.into_record("c", "s", 1e-6).pass);
        assert!(!s.into_record("c", "s", 1e-7).pass);
        let empty = ResidualStats::from_samples([(SpacetimePoint::ORIGIN, None)]);
        assert!(!empty.into_record("c", "s", 1.0).pass);
    }

    #[test]
    fn json_roundtrip() {
        let mut r = VerificationReport::new();
        r.push(CheckRecord::value("nullness", "knot-pq(2,3)", 1e-16, 1e-12).with_note("ok"));
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(back.all_pass());
    }
}
