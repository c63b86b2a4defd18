//! Report-style validation results shared by the instance validator and the
//! tour validator.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Machine-readable code for one validation finding.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationCode {
    SegmentNotOriented,
    SegmentDegenerate,
    EndpointOnSegment,
    ConsecutiveSegmentsIntersect,
    NonConsecutiveSegmentsIntersect,
    TourStartMismatch,
    TourEndMismatch,
    TourLinkNotOriented,
    TourLinkDegenerate,
    VisitPointOffSegment,
    VisitPointNotOnTour,
    VisitPointsOutOfOrder,
    VisitPointsMissing,
    LinkCountMismatch,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationCode::SegmentNotOriented => "segment-not-oriented",
            ViolationCode::SegmentDegenerate => "segment-degenerate",
            ViolationCode::EndpointOnSegment => "endpoint-on-segment",
            ViolationCode::ConsecutiveSegmentsIntersect => "consecutive-segments-intersect",
            ViolationCode::NonConsecutiveSegmentsIntersect => "non-consecutive-segments-intersect",
            ViolationCode::TourStartMismatch => "tour-start-mismatch",
            ViolationCode::TourEndMismatch => "tour-end-mismatch",
            ViolationCode::TourLinkNotOriented => "non-oriented-link",
            ViolationCode::TourLinkDegenerate => "degenerate-link",
            ViolationCode::VisitPointOffSegment => "visit-point-off-segment",
            ViolationCode::VisitPointNotOnTour => "visit-point-not-on-tour",
            ViolationCode::VisitPointsOutOfOrder => "visit-points-out-of-order",
            ViolationCode::VisitPointsMissing => "visit-points-missing",
            ViolationCode::LinkCountMismatch => "link-count-mismatch",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One finding: code, human-readable message, and where it was observed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    pub location: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.location, self.message)
    }
}

/// Result of a report-style check. `ok()` holds exactly when there are no
/// violations; informational findings do not affect validity.
#[derive(Clone, Default, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub infos: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, code: ViolationCode, message: String, location: String) {
        self.violations.push(Violation {
            code,
            message,
            location,
        });
    }

    pub fn push_info(&mut self, code: ViolationCode, message: String, location: String) {
        self.infos.push(Violation {
            code,
            message,
            location,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok")?;
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
        }
        for v in &self.infos {
            writeln!(f, "info: {v}")?;
        }
        Ok(())
    }
}
