//! Stage two of the solver: walk the stage-one ledger backwards from the end
//! point and reconstruct an optimal tour.
//!
//! Each step starts from a point `p` inside a recorded interval on layer `i`
//! and produces a point `p'` inside a recorded interval on layer `i - 1`,
//! together with the connecting sub-path. The shape of the sub-path depends
//! only on how the interval's link count relates to the previous layer's:
//! equal counts walk straight back; one extra link inserts a single turn
//! through some straight-reachable region; two extra links insert two turns
//! through a once-turned region. Intervals one above a double jump first
//! re-anchor to a base interval containing the same point.
//!
//! All choice points are resolved deterministically: scans run in direction
//! index order and ray intersections take the point nearest the ray origin.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::engine::{extension_region, turn_region, Interval, Ledger};
use crate::geom::{ConvexRegion, Direction, Point, Rational, SegmentGeom, Vector};
use crate::instance::Instance;

#[derive(Clone, Debug)]
pub enum RecoveryError {
    /// The ledger and the recovery disagree; impossible for ledgers produced
    /// by stage one.
    InternalConsistency(String),
}

impl fmt::Display for RecoveryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoveryError::InternalConsistency(msg) => {
                write!(f, "internal consistency: {msg}")
            }
        }
    }
}

fn inconsistent<T>(msg: &str) -> Result<T, RecoveryError> {
    Err(RecoveryError::InternalConsistency(String::from(msg)))
}

/// A polygonal tour from the start point to the end point, with the witness
/// point recorded for every segment of the sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tour {
    /// Vertices from start to end; consecutive vertices differ.
    pub vertices: Vec<Point>,
    /// `(segment index, point)` pairs, one per input segment, in order.
    pub visit_points: Vec<(usize, Point)>,
    /// Number of edges after simplification.
    pub link_count: usize,
}

/// Point of `region ∩ ray(origin, d)` nearest to `origin`.
fn nearest_ray_point(region: &ConvexRegion, origin: &Point, d: &Direction) -> Option<Point> {
    region.first_ray_point(origin, d)
}

/// Deterministic landing point: the position inside both the clipped range
/// and one of the family intervals that is closest to `from` along the
/// carrier, preferring lower parameters on ties.
fn land_on_family(
    ray_origin: &Point,
    back: &Direction,
    seg: &SegmentGeom,
    family: &[Interval],
) -> Option<Point> {
    let hit = ConvexRegion::ray(ray_origin.clone(), *back).clip_segment(seg)?;
    let mut best: Option<(Rational, Point)> = None;
    for iv in family {
        let Some(cand_range) = hit.intersect(&iv.range) else {
            continue;
        };
        let cand = match seg.param_on_carrier(ray_origin) {
            Some(tp) => cand_range.clamp(&tp),
            None => cand_range.lo.clone(),
        };
        let point = seg.point_at(&cand);
        let dist = ray_origin.squared_distance(&point);
        match &best {
            Some((d, _)) if *d <= dist => {}
            _ => best = Some((dist, point)),
        }
    }
    best.map(|(_, p)| p)
}

/// Walk one layer back: from point `p` inside interval `a` on layer `i`,
/// return an interval `b` on layer `i - 1`, a point `p'` inside it, and the
/// connecting points `[p, ..., p']` (one entry per vertex, `links(a) -
/// links(b) + 1` edges before simplification).
pub fn recover_subpath(
    ledger: &Ledger,
    inst: &Instance,
    i: usize,
    a: &Interval,
    p: &Point,
) -> Result<(Interval, Point, Vec<Point>), RecoveryError> {
    let oset = &inst.oset;
    let prev = &ledger.layers[i - 1];
    let prev_seg = inst.layer_segment(i - 1);
    let l_prev = prev.links;

    // Equal counts: the arriving link extends one of the previous layer's
    // base intervals; walk straight back onto it.
    if a.links == l_prev {
        let back = oset.dir(a.dir).opposite();
        let Some(p1) = land_on_family(p, &back, &prev_seg, prev.base.family(a.dir)) else {
            return inconsistent("straight step found no base interval behind the point");
        };
        let b = find_containing(prev.base.family(a.dir), &prev_seg, &p1)
            .expect("landing point chosen inside the family");
        return Ok((b, p1.clone(), vec![p.clone(), p1]));
    }

    // One extra link: either the arriving link extends a spare interval, or
    // a single turn connects back to some base interval's straight region.
    // The back ray can cross the previous segment outside every spare
    // interval (the crossing need not be reachable at this level); only a
    // landing inside the family counts as a direct step.
    if a.links == l_prev + 1 {
        let back = oset.dir(a.dir).opposite();
        if let Some(p1) = land_on_family(p, &back, &prev_seg, prev.plus.family(a.dir)) {
            let b = find_containing(prev.plus.family(a.dir), &prev_seg, &p1)
                .expect("landing point chosen inside the family");
            return Ok((b, p1.clone(), vec![p.clone(), p1]));
        }
        for j in 0..oset.len() {
            if j == a.dir {
                continue;
            }
            for d in prev.base.family(j) {
                let reach = extension_region(d, inst);
                if let Some(q) = nearest_ray_point(&reach, p, &back) {
                    let p1 = step_back_to_interval(&q, d, &prev_seg, inst)?;
                    return Ok((d.clone(), p1.clone(), vec![p.clone(), q, p1]));
                }
            }
        }
        return inconsistent("no base interval explains a one-extra-link arrival");
    }

    // One above a double jump: re-anchor to a base interval holding the same
    // point, then fall through to the double-jump step.
    let mut a_work = a.clone();
    if a_work.links == l_prev + 3 {
        let cur = &ledger.layers[i];
        let cur_seg = inst.layer_segment(i);
        let Some(anchor) = (0..oset.len())
            .flat_map(|j| cur.base.family(j))
            .find(|iv| contains_point(iv, &cur_seg, p))
        else {
            return inconsistent("no base interval contains the re-anchor point");
        };
        a_work = anchor.clone();
    }

    if a_work.links == l_prev + 2 {
        let back = oset.dir(a_work.dir).opposite();
        // A single turn through a spare interval of another direction.
        for j in 0..oset.len() {
            if j == a_work.dir {
                continue;
            }
            for d in prev.plus.family(j) {
                let reach = extension_region(d, inst);
                if let Some(q) = nearest_ray_point(&reach, p, &back) {
                    let p1 = step_back_to_interval(&q, d, &prev_seg, inst)?;
                    return Ok((d.clone(), p1.clone(), vec![p.clone(), q, p1]));
                }
            }
        }
        // Two turns through a base interval: the back ray meets one of the
        // two once-turned sweeps flanking the interval's reverse direction.
        for j in 0..oset.len() {
            for d in prev.base.family(j) {
                let rev = oset.opposite(d.dir);
                let sweeps = [
                    turn_region(d, oset.succ(rev), inst),
                    turn_region(d, oset.pred(rev), inst),
                ];
                let mut v_best: Option<Point> = None;
                for sweep in &sweeps {
                    if let Some(v) = nearest_ray_point(sweep, p, &back) {
                        let better = match &v_best {
                            Some(cur) => {
                                p.squared_distance(&v) < p.squared_distance(cur)
                            }
                            None => true,
                        };
                        if better {
                            v_best = Some(v);
                        }
                    }
                }
                let Some(v) = v_best else {
                    continue;
                };
                let reach = extension_region(d, inst);
                let q = match nearest_ray_point(&reach, &v, &oset.dir(oset.succ(d.dir))) {
                    Some(q) => q,
                    None => match nearest_ray_point(&reach, &v, &oset.dir(oset.pred(d.dir))) {
                        Some(q) => q,
                        None => {
                            return inconsistent(
                                "neither flanking ray reaches back from the once-turned sweep",
                            )
                        }
                    },
                };
                let p1 = step_back_to_interval(&q, d, &prev_seg, inst)?;
                return Ok((d.clone(), p1.clone(), vec![p.clone(), v, q, p1]));
            }
        }
        return inconsistent("no interval explains a two-extra-link arrival");
    }

    inconsistent("interval link count out of range for its layer")
}

/// From `q` inside the straight region of `d`, walk back against `d`'s
/// direction onto the interval itself.
fn step_back_to_interval(
    q: &Point,
    d: &Interval,
    prev_seg: &SegmentGeom,
    inst: &Instance,
) -> Result<Point, RecoveryError> {
    let back = inst.oset.dir(d.dir).opposite();
    match land_on_family(q, &back, prev_seg, core::slice::from_ref(d)) {
        Some(p1) => Ok(p1),
        None => inconsistent("straight region point has no back ray onto its interval"),
    }
}

fn contains_point(iv: &Interval, seg: &SegmentGeom, p: &Point) -> bool {
    match seg.param_on_carrier(p) {
        Some(t) => iv.range.contains(&t),
        None => false,
    }
}

fn find_containing(family: &[Interval], seg: &SegmentGeom, p: &Point) -> Option<Interval> {
    family
        .iter()
        .find(|iv| contains_point(iv, seg, p))
        .cloned()
}

/// Reconstruct an optimal tour from a complete ledger.
pub fn run_stage_two(ledger: &Ledger, inst: &Instance) -> Result<Tour, RecoveryError> {
    let last = ledger.layers.len() - 1;
    let record = &ledger.layers[last];
    let Some(start) = (0..inst.oset.len())
        .flat_map(|j| record.base.family(j).first())
        .next()
        .cloned()
    else {
        return inconsistent("end layer has no reachable interval");
    };

    let mut a = start;
    let mut p = inst.t.clone();
    let mut backwards: Vec<Point> = vec![p.clone()];
    let mut visits: Vec<(usize, Point)> = Vec::new();
    for i in (1..=last).rev() {
        let (b, p1, sub) = recover_subpath(ledger, inst, i, &a, &p)?;
        backwards.extend(sub.into_iter().skip(1));
        if i > 1 {
            visits.push((i - 1, p1.clone()));
        }
        a = b;
        p = p1;
    }
    backwards.reverse();
    visits.reverse();
    let link_count = backwards.len().saturating_sub(1);
    Ok(simplify_tour(Tour {
        vertices: backwards,
        visit_points: visits,
        link_count,
    }))
}

/// Remove zero-length edges and interior vertices where consecutive edges
/// share a direction. The polyline as a point set is unchanged, visit points
/// are preserved, and the operation is idempotent.
pub fn simplify_tour(raw: Tour) -> Tour {
    let mut vertices: Vec<Point> = Vec::with_capacity(raw.vertices.len());
    for v in raw.vertices {
        if vertices.last() == Some(&v) {
            continue;
        }
        while vertices.len() >= 2 {
            let u = &vertices[vertices.len() - 2];
            let w = &vertices[vertices.len() - 1];
            let d1 = u.vector_to(w);
            let d2 = w.vector_to(&v);
            if d1.cross(&d2).is_zero() && d1.dot(&d2).is_positive() {
                vertices.pop();
            } else {
                break;
            }
        }
        vertices.push(v);
    }
    let link_count = vertices.len().saturating_sub(1);
    Tour {
        vertices,
        visit_points: raw.visit_points,
        link_count,
    }
}

/// Direction of every tour edge, as primitive-vector checks against the set.
pub fn link_matches_direction(u: &Point, w: &Point, d: &Direction) -> bool {
    let v: Vector = u.vector_to(w);
    d.matches_vector(&v)
}
