//! Independent verification: a brute-force reimplementation of the interval
//! propagation, a tour validator, and an exact ledger comparator.
//!
//! The brute-force propagation shares only the geometric primitives with the
//! engine. From every stored interval it enumerates all turn sequences up to
//! a per-hop budget (consecutive turns always change direction; links may
//! have zero length), sweeps the corresponding regions, and clips them
//! against the next segment. None of the engine's shortcuts are used: no
//! exclusion of reversing first turns, no whole-segment shortcut, no
//! collapse of the one-extra-link families after a double jump. It is meant
//! for small instances and guards the engine in the test suites.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::engine::{merge_intervals, start_layer, Families, Interval, LayerRecord, Ledger};
use crate::geom::{point_on_segment, Cone, ConvexRegion, ParamRange, Point, Rational, SegmentGeom};
use crate::instance::Instance;
use crate::recovery::Tour;
pub use crate::report::{ValidationReport, Violation, ViolationCode};

/// Instance-size ceiling for the brute-force propagation.
pub const ORACLE_MAX_SEGMENTS: usize = 24;
pub const ORACLE_MAX_DIRECTIONS: usize = 12;

/// Default number of fresh links explored per hop. Two suffice once the
/// stored one-extra-link families are seeded; three leave a margin so the
/// budget itself is never the binding constraint.
pub const ORACLE_DEFAULT_TURNS: usize = 3;

#[derive(Clone, Debug)]
pub enum OracleError {
    TooLarge { segments: usize, directions: usize },
    Internal(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge {
                segments,
                directions,
            } => write!(
                f,
                "instance too large for the brute-force oracle ({segments} segments, {directions} directions)"
            ),
            OracleError::Internal(msg) => write!(f, "oracle internal error: {msg}"),
        }
    }
}

/// First point of divergence between two ledgers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LedgerDiff {
    pub layer: usize,
    pub detail: String,
}

impl fmt::Display for LedgerDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ledgers diverge at layer {}: {}", self.layer, self.detail)
    }
}

/// One propagation source: a base span on the current layer, the direction
/// of its arriving link (absent for the not-yet-started state), and its link
/// count.
struct Source {
    base: (Point, Point),
    prefix: Option<usize>,
    label: u32,
}

/// Brute-force recomputation of the stage-one ledger.
pub fn oracle_reachable_sets(inst: &Instance, max_turns: usize) -> Result<Ledger, OracleError> {
    let n = inst.segments.len();
    let m = inst.oset.len();
    if n > ORACLE_MAX_SEGMENTS || m > ORACLE_MAX_DIRECTIONS {
        return Err(OracleError::TooLarge {
            segments: n,
            directions: m,
        });
    }
    let report = inst.check();
    if !report.ok() {
        return Err(OracleError::Internal(String::from("invalid instance")));
    }

    let mut layers = Vec::with_capacity(n + 2);
    layers.push(start_layer(m));
    for next in 1..=n + 1 {
        let seg = inst.layer_segment(next);
        let sources = layer_sources(inst, layers.last().expect("nonempty"), next - 1);
        let record = propagate(inst, &sources, next, &seg, max_turns)?;
        layers.push(record);
    }
    Ok(Ledger { layers })
}

/// Minimum link count of a tour, via the brute-force propagation.
pub fn oracle_min_links(inst: &Instance) -> Result<u32, OracleError> {
    oracle_reachable_sets(inst, ORACLE_DEFAULT_TURNS).map(|ledger| ledger.link_count())
}

fn layer_sources(inst: &Instance, record: &LayerRecord, layer: usize) -> Vec<Source> {
    if layer == 0 {
        // The formal start families all sit on the single start point: one
        // not-yet-started source plus one zero-length-link source per
        // direction.
        let s = inst.s.clone();
        let mut sources = Vec::with_capacity(inst.oset.len() + 1);
        sources.push(Source {
            base: (s.clone(), s.clone()),
            prefix: None,
            label: 0,
        });
        for j in 0..inst.oset.len() {
            sources.push(Source {
                base: (s.clone(), s.clone()),
                prefix: Some(j),
                label: 1,
            });
        }
        return sources;
    }
    let seg = inst.layer_segment(layer);
    let mut sources = Vec::new();
    for fams in [&record.base, &record.plus] {
        for iv in fams.iter_all() {
            sources.push(Source {
                base: (seg.point_at(&iv.range.lo), seg.point_at(&iv.range.hi)),
                prefix: Some(iv.dir),
                label: iv.links,
            });
        }
    }
    sources
}

fn propagate(
    inst: &Instance,
    sources: &[Source],
    next: usize,
    seg: &SegmentGeom,
    max_turns: usize,
) -> Result<LayerRecord, OracleError> {
    let m = inst.oset.len();
    let mut buckets: BTreeMap<(u32, usize), Vec<ParamRange>> = BTreeMap::new();

    for source in sources {
        // Walk every turn sequence, collapsing sequences that accumulate the
        // same sweep cone. Zero-length links are admitted by the closed-ray
        // sweeps themselves.
        let start_cone = match source.prefix {
            Some(j) => Cone::Zero.sweep(inst.oset.dir(j)),
            None => Cone::Zero,
        };
        let mut seen: BTreeSet<(Cone, Option<usize>, usize)> = BTreeSet::new();
        let mut queue: Vec<(Cone, Option<usize>, usize)> =
            alloc::vec![(start_cone, source.prefix, 0)];
        seen.insert(queue[0]);
        let mut clip_cache: BTreeMap<Cone, Option<ParamRange>> = BTreeMap::new();
        while let Some((cone, last, turns)) = queue.pop() {
            let clipped = clip_cache
                .entry(cone)
                .or_insert_with(|| {
                    ConvexRegion::from_parts(source.base.0.clone(), source.base.1.clone(), cone)
                        .clip_segment(seg)
                })
                .clone();
            if let Some(range) = clipped {
                let label = source.label + turns as u32;
                match last {
                    Some(dir) => {
                        buckets.entry((label, dir)).or_default().push(range);
                    }
                    None => {
                        // A path with no links yet has no direction; record
                        // the reach under every formal direction.
                        for j in 0..m {
                            buckets.entry((label, j)).or_default().push(range.clone());
                        }
                    }
                }
            }
            if turns < max_turns {
                for d in 0..m {
                    if last == Some(d) {
                        continue;
                    }
                    let state = (cone.sweep(inst.oset.dir(d)), Some(d), turns + 1);
                    if seen.insert(state) {
                        queue.push(state);
                    }
                }
            }
        }
    }

    let Some(links) = buckets
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|((label, _), _)| *label)
        .min()
    else {
        return Err(OracleError::Internal(format!(
            "no reachable point on layer {next}"
        )));
    };

    let mut base = Families::new(m);
    let mut plus = Families::new(m);
    for (fams, label) in [(&mut base, links), (&mut plus, links + 1)] {
        for j in 0..m {
            let ranges = buckets.remove(&(label, j)).unwrap_or_default();
            let intervals: Vec<Interval> = ranges
                .into_iter()
                .map(|range| Interval {
                    layer: next,
                    range,
                    links: label,
                    dir: j,
                })
                .collect();
            let merged = merge_intervals(intervals)
                .map_err(|_| OracleError::Internal(String::from("mixed merge bucket")))?;
            fams.set_family(j, merged);
        }
    }
    Ok(LayerRecord {
        layer: next,
        links,
        base,
        plus,
    })
}

/// Exact comparison of two ledgers: link counts and interval families, first
/// divergence reported.
pub fn compare_ledgers(a: &Ledger, b: &Ledger) -> Option<LedgerDiff> {
    if a.layers.len() != b.layers.len() {
        return Some(LedgerDiff {
            layer: a.layers.len().min(b.layers.len()),
            detail: format!(
                "layer counts differ: {} vs {}",
                a.layers.len(),
                b.layers.len()
            ),
        });
    }
    for (la, lb) in a.layers.iter().zip(&b.layers) {
        if la.links != lb.links {
            return Some(LedgerDiff {
                layer: la.layer,
                detail: format!("link counts differ: {} vs {}", la.links, lb.links),
            });
        }
        for (kind, fa, fb) in [("base", &la.base, &lb.base), ("plus", &la.plus, &lb.plus)] {
            for j in 0..fa.dirs().max(fb.dirs()) {
                let va = fa.family(j);
                let vb = fb.family(j);
                if va != vb {
                    return Some(LedgerDiff {
                        layer: la.layer,
                        detail: format!(
                            "{kind} family for direction {j} differs: {} vs {} intervals ({:?} vs {:?})",
                            va.len(),
                            vb.len(),
                            va.first().map(|iv| (&iv.range.lo, &iv.range.hi, iv.links)),
                            vb.first().map(|iv| (&iv.range.lo, &iv.range.hi, iv.links)),
                        ),
                    });
                }
            }
        }
    }
    None
}

/// Check a tour against an instance: endpoint anchoring, direction
/// membership of every edge, exact segment membership and orderability of
/// the visit points, and the reported link count.
pub fn validate_tour(inst: &Instance, tour: &Tour) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = inst.segments.len();

    match tour.vertices.first() {
        Some(first) if *first == inst.s => {}
        _ => report.push(
            ViolationCode::TourStartMismatch,
            String::from("tour does not start at the start point"),
            String::from("vertices[0]"),
        ),
    }
    match tour.vertices.last() {
        Some(last) if *last == inst.t => {}
        _ => report.push(
            ViolationCode::TourEndMismatch,
            String::from("tour does not end at the end point"),
            String::from("vertices[last]"),
        ),
    }

    for (k, w) in tour.vertices.windows(2).enumerate() {
        let v = w[0].vector_to(&w[1]);
        if v.is_zero() {
            report.push(
                ViolationCode::TourLinkDegenerate,
                String::from("consecutive vertices coincide"),
                format!("vertices[{k}]"),
            );
            continue;
        }
        if !inst.oset.dirs().iter().any(|d| d.matches_vector(&v)) {
            report.push(
                ViolationCode::TourLinkNotOriented,
                String::from("edge direction is not in the direction set"),
                format!("vertices[{k}]"),
            );
        }
    }

    if tour.visit_points.len() != n
        || tour
            .visit_points
            .iter()
            .enumerate()
            .any(|(idx, (i, _))| *i != idx + 1)
    {
        report.push(
            ViolationCode::VisitPointsMissing,
            format!(
                "expected visit points for segments 1..={n}, got {}",
                tour.visit_points.len()
            ),
            String::from("visit_points"),
        );
    }

    for (i, p) in &tour.visit_points {
        if *i >= 1 && *i <= n && !point_on_segment(p, &inst.segments[i - 1].geom) {
            report.push(
                ViolationCode::VisitPointOffSegment,
                String::from("visit point does not lie on its segment"),
                format!("visit_points[{}]", i - 1),
            );
        }
    }

    // Greedy earliest-position matching along the polyline; the visits are
    // orderable exactly when every greedy step succeeds.
    let mut cursor: (usize, Rational) = (0, Rational::from_integer(0.into()));
    for (i, p) in &tour.visit_points {
        match position_at_or_after(&tour.vertices, p, &cursor) {
            Some(pos) => cursor = pos,
            None => {
                let anywhere = position_at_or_after(
                    &tour.vertices,
                    p,
                    &(0, Rational::from_integer(0.into())),
                );
                report.push(
                    if anywhere.is_none() {
                        ViolationCode::VisitPointNotOnTour
                    } else {
                        ViolationCode::VisitPointsOutOfOrder
                    },
                    String::from("visit point cannot be placed on the tour in order"),
                    format!("visit_points[{}]", i.saturating_sub(1)),
                );
            }
        }
    }

    if tour.link_count != tour.vertices.len().saturating_sub(1) {
        report.push(
            ViolationCode::LinkCountMismatch,
            format!(
                "link count {} does not match {} vertices",
                tour.link_count,
                tour.vertices.len()
            ),
            String::from("link_count"),
        );
    }

    report
}

/// Earliest polyline position of `p` at or after `cursor`, as
/// (edge index, parameter on the edge).
fn position_at_or_after(
    vertices: &[Point],
    p: &Point,
    cursor: &(usize, Rational),
) -> Option<(usize, Rational)> {
    if vertices.len() == 1 {
        return (p == &vertices[0]).then(|| cursor.clone());
    }
    for k in cursor.0..vertices.len() - 1 {
        let edge = SegmentGeom::new(vertices[k].clone(), vertices[k + 1].clone());
        let Some(t) = edge.param_on_carrier(p) else {
            continue;
        };
        use num_traits::Signed;
        if t.is_negative() || t > Rational::from_integer(1.into()) {
            continue;
        }
        if k == cursor.0 && t < cursor.1 {
            continue;
        }
        return Some((k, t));
    }
    None
}
