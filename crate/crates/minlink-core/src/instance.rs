//! Problem instances: the direction set with its cyclic structure, the
//! ordered segment sequence, and the endpoints.
//!
//! The direction set is closed under reversal and spans the plane, so between
//! any two points there is a path of at most two links. Directions are kept
//! sorted in clockwise angular order; successor/predecessor indices realize
//! the neighbor relation the solver relies on.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::{
    point_on_segment, segments_intersect, Direction, Point, SegmentGeom,
};
use crate::report::{ValidationReport, ViolationCode};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrientationSetError {
    Empty,
    ZeroVector { index: usize },
    Duplicate { dir: Direction },
    NotClosedUnderNegation { missing: Direction },
    NotSpanning,
}

impl fmt::Display for OrientationSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientationSetError::Empty => write!(f, "orientation set must not be empty"),
            OrientationSetError::ZeroVector { index } => {
                write!(f, "orientation {index} is the zero vector")
            }
            OrientationSetError::Duplicate { dir } => write!(
                f,
                "duplicate direction ({}, {})",
                dir.dx(),
                dir.dy()
            ),
            OrientationSetError::NotClosedUnderNegation { missing } => write!(
                f,
                "set is not closed under negation: missing ({}, {})",
                missing.dx(),
                missing.dy()
            ),
            OrientationSetError::NotSpanning => {
                write!(f, "all directions are parallel; the set does not span the plane")
            }
        }
    }
}

/// The direction set: distinct primitive vectors in clockwise angular order,
/// closed under negation, spanning the plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientationSet {
    dirs: Vec<Direction>,
    opposite: Vec<usize>,
}

/// Clockwise order starting from east: the key puts directions with a
/// south component (and east itself) first, then the northern half.
fn clockwise_cmp(a: &Direction, b: &Direction) -> Ordering {
    let group = |d: &Direction| -> u8 {
        if d.dy() < 0 || (d.dy() == 0 && d.dx() > 0) {
            0
        } else {
            1
        }
    };
    group(a).cmp(&group(b)).then_with(|| {
        // Within a half-turn group, a precedes b clockwise iff cross(a, b) < 0.
        a.cross(b).cmp(&0)
    })
}

impl OrientationSet {
    /// Normalize, sort clockwise, and index a raw list of integer vectors.
    pub fn build(raw: &[(i64, i64)]) -> Result<Self, OrientationSetError> {
        if raw.is_empty() {
            return Err(OrientationSetError::Empty);
        }
        let mut dirs = Vec::with_capacity(raw.len());
        for (i, (dx, dy)) in raw.iter().enumerate() {
            let d = Direction::new(*dx, *dy)
                .map_err(|_| OrientationSetError::ZeroVector { index: i })?;
            dirs.push(d);
        }
        dirs.sort_by(clockwise_cmp);
        for w in dirs.windows(2) {
            if w[0] == w[1] {
                return Err(OrientationSetError::Duplicate { dir: w[0] });
            }
        }
        let mut opposite = Vec::with_capacity(dirs.len());
        for d in &dirs {
            let o = d.opposite();
            match dirs.binary_search_by(|x| clockwise_cmp(x, &o)) {
                Ok(j) => opposite.push(j),
                Err(_) => return Err(OrientationSetError::NotClosedUnderNegation { missing: o }),
            }
        }
        if dirs.iter().all(|d| d.cross(&dirs[0]) == 0) {
            return Err(OrientationSetError::NotSpanning);
        }
        Ok(OrientationSet { dirs, opposite })
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn dirs(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn dir(&self, j: usize) -> Direction {
        self.dirs[j]
    }

    pub fn opposite(&self, j: usize) -> usize {
        self.opposite[j]
    }

    /// Clockwise successor index.
    pub fn succ(&self, j: usize) -> usize {
        (j + 1) % self.dirs.len()
    }

    /// Clockwise predecessor index.
    pub fn pred(&self, j: usize) -> usize {
        (j + self.dirs.len() - 1) % self.dirs.len()
    }

    pub fn index_of(&self, d: &Direction) -> Option<usize> {
        self.dirs.binary_search_by(|x| clockwise_cmp(x, d)).ok()
    }

    /// Indices strictly between `j` and `k`, walking clockwise from `j`.
    /// Empty when `k` immediately follows `j` or when `j == k`.
    pub fn between(&self, j: usize, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if j == k {
            return out;
        }
        let mut cur = self.succ(j);
        while cur != k {
            out.push(cur);
            cur = self.succ(cur);
        }
        out
    }
}

/// Index of the set direction parallel to `seg`, preferring the direction of
/// travel from `p` to `q`, then the reverse; absent when `seg` is not
/// parallel to any direction of the set.
pub fn segment_orientation_index(seg: &SegmentGeom, oset: &OrientationSet) -> Option<usize> {
    if seg.is_point() {
        return None;
    }
    let v = seg.direction_vector();
    for (j, d) in oset.dirs().iter().enumerate() {
        if d.matches_vector(&v) {
            return Some(j);
        }
    }
    let w = seg.q.vector_to(&seg.p);
    for (j, d) in oset.dirs().iter().enumerate() {
        if d.matches_vector(&w) {
            return Some(j);
        }
    }
    None
}

/// A segment of the sequence together with the index of its carrier
/// direction in the orientation set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub geom: SegmentGeom,
    pub dir_index: usize,
}

#[derive(Clone, Debug)]
pub enum InstanceError {
    Invalid(ValidationReport),
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::Invalid(report) => {
                write!(f, "invalid instance: ")?;
                match report.violations.first() {
                    Some(v) => write!(f, "{v}"),
                    None => write!(f, "unknown violation"),
                }
            }
        }
    }
}

/// A full problem instance: direction set, endpoints, and the ordered
/// segment sequence. Immutable after construction and valid by construction.
#[derive(Clone, Debug)]
pub struct Instance {
    pub oset: OrientationSet,
    pub s: Point,
    pub t: Point,
    pub segments: Vec<Segment>,
}

impl Instance {
    /// Validate raw parts and assemble an instance. The endpoints may
    /// coincide; only consecutive segments must be disjoint.
    pub fn new(
        oset: OrientationSet,
        s: Point,
        t: Point,
        geoms: Vec<SegmentGeom>,
    ) -> Result<Self, InstanceError> {
        let report = Instance::check_parts(&oset, &s, &t, &geoms);
        if !report.ok() {
            return Err(InstanceError::Invalid(report));
        }
        let segments = geoms
            .into_iter()
            .map(|geom| {
                let dir_index = segment_orientation_index(&geom, &oset)
                    .expect("validated segments are oriented");
                Segment { geom, dir_index }
            })
            .collect();
        Ok(Instance {
            oset,
            s,
            t,
            segments,
        })
    }

    /// Report-style validation of raw parts. Violations: a segment not
    /// parallel to a set direction, a degenerate segment, an endpoint lying
    /// on a segment, consecutive segments intersecting. Intersections between
    /// non-consecutive segments are reported as informational only.
    pub fn validate_parts(
        oset: &OrientationSet,
        s: &Point,
        t: &Point,
        geoms: &[SegmentGeom],
    ) -> ValidationReport {
        Instance::validate_core(oset, s, t, geoms, true)
    }

    /// Violations only, skipping the quadratic informational scan for
    /// non-consecutive intersections. Validity is decided by violations
    /// alone, so this agrees with [`Instance::validate_parts`] on `ok()`.
    pub fn check_parts(
        oset: &OrientationSet,
        s: &Point,
        t: &Point,
        geoms: &[SegmentGeom],
    ) -> ValidationReport {
        Instance::validate_core(oset, s, t, geoms, false)
    }

    fn validate_core(
        oset: &OrientationSet,
        s: &Point,
        t: &Point,
        geoms: &[SegmentGeom],
        with_infos: bool,
    ) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (i, g) in geoms.iter().enumerate() {
            let loc = format!("segments[{i}]");
            if g.is_point() {
                report.push(
                    ViolationCode::SegmentDegenerate,
                    String::from("segment endpoints coincide"),
                    loc,
                );
                continue;
            }
            if segment_orientation_index(g, oset).is_none() {
                report.push(
                    ViolationCode::SegmentNotOriented,
                    String::from("segment is not parallel to any set direction"),
                    loc.clone(),
                );
            }
            if point_on_segment(s, g) {
                report.push(
                    ViolationCode::EndpointOnSegment,
                    String::from("start point lies on the segment"),
                    loc.clone(),
                );
            }
            if point_on_segment(t, g) {
                report.push(
                    ViolationCode::EndpointOnSegment,
                    String::from("end point lies on the segment"),
                    loc,
                );
            }
        }
        for i in 1..geoms.len() {
            if geoms[i - 1].is_point() || geoms[i].is_point() {
                continue;
            }
            if segments_intersect(&geoms[i - 1], &geoms[i]) {
                report.push(
                    ViolationCode::ConsecutiveSegmentsIntersect,
                    format!("segments {} and {} intersect", i - 1, i),
                    format!("segments[{i}]"),
                );
            }
        }
        if with_infos {
            for i in 0..geoms.len() {
                for j in i + 2..geoms.len() {
                    if geoms[i].is_point() || geoms[j].is_point() {
                        continue;
                    }
                    if segments_intersect(&geoms[i], &geoms[j]) {
                        report.push_info(
                            ViolationCode::NonConsecutiveSegmentsIntersect,
                            format!("segments {i} and {j} intersect"),
                            format!("segments[{j}]"),
                        );
                    }
                }
            }
        }
        report
    }

    /// Re-validate this instance (always clean for constructed instances;
    /// informational findings may still be present).
    pub fn validate(&self) -> ValidationReport {
        let geoms: Vec<SegmentGeom> = self.segments.iter().map(|s| s.geom.clone()).collect();
        Instance::validate_parts(&self.oset, &self.s, &self.t, &geoms)
    }

    /// Violations-only re-check, linear in the number of segments.
    pub fn check(&self) -> ValidationReport {
        let geoms: Vec<SegmentGeom> = self.segments.iter().map(|s| s.geom.clone()).collect();
        Instance::check_parts(&self.oset, &self.s, &self.t, &geoms)
    }

    /// Number of propagation layers: the start point, every segment, the end
    /// point.
    pub fn layer_count(&self) -> usize {
        self.segments.len() + 2
    }

    /// Geometry of layer `i`: `0` is the start point, `1..=n` the segments,
    /// `n + 1` the end point.
    pub fn layer_segment(&self, i: usize) -> SegmentGeom {
        let n = self.segments.len();
        if i == 0 {
            SegmentGeom::point(self.s.clone())
        } else if i <= n {
            self.segments[i - 1].geom.clone()
        } else {
            SegmentGeom::point(self.t.clone())
        }
    }
}
