//! Stage one of the solver: propagate reachable interval families along the
//! segment sequence.
//!
//! For each layer `i` (the start point, then every segment, then the end
//! point) the engine records the minimum link count `l(i)` over paths from
//! the start that touch the first `i` segments in order, plus two families of
//! maximal intervals per arrival direction: the `base` family reachable with
//! exactly `l(i)` links and the `plus` family reachable with `l(i) + 1`
//! links. Each new layer is derived from the previous one by three kinds of
//! constructions: continuing straight (`plus_zero`), turning once
//! (`plus_one`), and turning twice (`plus_two`).
//!
//! Two facts keep the bookkeeping small: the link count can grow by at most
//! two per layer, and whenever it grows by exactly two, every point of the
//! new segment is reachable with one extra link in every direction, so the
//! `plus` families collapse to the whole segment.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{rat, side_of, ConvexRegion, ParamRange, Point, SegmentGeom, Side};
use crate::instance::Instance;
use crate::report::ValidationReport;

#[derive(Clone, Debug)]
pub enum EngineError {
    InvalidInstance(ValidationReport),
    /// A merge was attempted over intervals with differing layer, link count,
    /// or direction.
    MixedMergeInput,
    /// The propagation reached a state the underlying theory rules out.
    InternalConsistency(String),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::InvalidInstance(r) => match r.violations.first() {
                Some(v) => write!(f, "invalid instance: {v}"),
                None => write!(f, "invalid instance"),
            },
            EngineError::MixedMergeInput => {
                write!(f, "merge requires intervals with equal layer, links, and direction")
            }
            EngineError::InternalConsistency(msg) => write!(f, "internal consistency: {msg}"),
        }
    }
}

/// A closed sub-interval of a layer segment, reachable with `links` links,
/// the last of which travels in set direction `dir`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub layer: usize,
    pub range: ParamRange,
    pub links: u32,
    pub dir: usize,
}

impl Interval {
    pub fn endpoints(&self, inst: &Instance) -> (Point, Point) {
        let seg = inst.layer_segment(self.layer);
        (seg.point_at(&self.range.lo), seg.point_at(&self.range.hi))
    }

    /// Endpoint roles relative to the travel direction: the first returned
    /// point has the other endpoint on its right when looking along `dir`.
    /// When the direction is parallel to the carrier, the trailing endpoint
    /// (the one met first when travelling along `dir`) comes first.
    pub fn oriented_endpoints(&self, inst: &Instance) -> (Point, Point) {
        let (e1, e2) = self.endpoints(inst);
        let d = inst.oset.dir(self.dir);
        match side_of(&d, &e1.vector_to(&e2)) {
            Side::Right => (e1, e2),
            Side::Left => (e2, e1),
            Side::Collinear => {
                if d.dot_point(&e1) <= d.dot_point(&e2) {
                    (e1, e2)
                } else {
                    (e2, e1)
                }
            }
        }
    }
}

/// Per-direction lists of pairwise-disjoint, sorted, maximal intervals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Families {
    pub(crate) per_dir: Vec<Vec<Interval>>,
}

impl Families {
    pub fn new(dirs: usize) -> Self {
        Families {
            per_dir: vec![Vec::new(); dirs],
        }
    }

    pub fn family(&self, j: usize) -> &[Interval] {
        &self.per_dir[j]
    }

    pub fn set_family(&mut self, j: usize, intervals: Vec<Interval>) {
        self.per_dir[j] = intervals;
    }

    pub fn dirs(&self) -> usize {
        self.per_dir.len()
    }

    pub fn all_empty(&self) -> bool {
        self.per_dir.iter().all(|f| f.is_empty())
    }

    pub fn iter_all(&self) -> impl Iterator<Item = &Interval> {
        self.per_dir.iter().flatten()
    }

    /// Intervals of every direction except `j`.
    pub fn iter_except(&self, j: usize) -> impl Iterator<Item = &Interval> {
        self.per_dir
            .iter()
            .enumerate()
            .filter(move |(k, _)| *k != j)
            .flat_map(|(_, f)| f.iter())
    }

    pub fn max_family_len(&self) -> usize {
        self.per_dir.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Stage-one record for one layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LayerRecord {
    pub layer: usize,
    /// Minimum link count to reach this layer.
    pub links: u32,
    /// Families reachable with exactly `links` links.
    pub base: Families,
    /// Families reachable with `links + 1` links.
    pub plus: Families,
}

/// The full stage-one output, one record per layer, consumed by stage two.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ledger {
    pub layers: Vec<LayerRecord>,
}

impl Ledger {
    pub fn layer(&self, i: usize) -> &LayerRecord {
        &self.layers[i]
    }

    /// Minimum link count of a full tour.
    pub fn link_count(&self) -> u32 {
        self.layers.last().map(|l| l.links).unwrap_or(0)
    }

    pub fn max_family_len(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.base.max_family_len().max(l.plus.max_family_len()))
            .max()
            .unwrap_or(0)
    }
}

/// Per-iteration diagnostics: how the link count moved and how many merged
/// intervals each construction bucket produced, per direction.
#[derive(Clone, Debug)]
pub struct LayerTrace {
    pub layer: usize,
    pub jump: u32,
    /// Merged sizes of the one-extra-link buckets, per direction.
    pub one_extra_bucket: Vec<usize>,
    /// Merged sizes of the two-extra-link buckets, per direction (empty when
    /// the step was not needed).
    pub two_extra_bucket: Vec<usize>,
}

/// Region swept by continuing the arriving link of `a` forward.
pub fn extension_region(a: &Interval, inst: &Instance) -> ConvexRegion {
    let seg = inst.layer_segment(a.layer);
    ConvexRegion::from_span(&seg, &a.range).minkowski_ray(&inst.oset.dir(a.dir))
}

/// Region reachable from `a` by extending its arriving link and then turning
/// once into direction `j` (possibly immediately, possibly after travelling).
pub fn turn_region(a: &Interval, j: usize, inst: &Instance) -> ConvexRegion {
    extension_region(a, inst).minkowski_ray(&inst.oset.dir(j))
}

fn full_interval(seg: &SegmentGeom, layer: usize, links: u32, dir: usize) -> Interval {
    let range = if seg.is_point() {
        ParamRange::point(rat(0))
    } else {
        ParamRange::full()
    };
    Interval {
        layer,
        range,
        links,
        dir,
    }
}

fn clip_to_interval(
    region: &ConvexRegion,
    seg: &SegmentGeom,
    layer: usize,
    links: u32,
    dir: usize,
) -> Option<Interval> {
    region.clip_segment(seg).map(|range| Interval {
        layer,
        range,
        links,
        dir,
    })
}

/// Straight continuations: clip each source's extension region against the
/// next segment, keeping link count and direction.
pub fn plus_zero(
    fam: &[Interval],
    next_layer: usize,
    seg: &SegmentGeom,
    inst: &Instance,
) -> Vec<Interval> {
    fam.iter()
        .filter_map(|a| {
            clip_to_interval(&extension_region(a, inst), seg, next_layer, a.links, a.dir)
        })
        .collect()
}

/// Single turns into direction `j`. Callers exclude sources already
/// travelling in `j`.
pub fn plus_one<'a>(
    sources: impl IntoIterator<Item = &'a Interval>,
    j: usize,
    next_layer: usize,
    seg: &SegmentGeom,
    inst: &Instance,
) -> Vec<Interval> {
    sources
        .into_iter()
        .map(|a| {
            debug_assert_ne!(a.dir, j);
            a
        })
        .filter_map(|a| {
            clip_to_interval(&turn_region(a, j, inst), seg, next_layer, a.links + 1, j)
        })
        .collect()
}

/// Double turns ending in direction `j`, drawn from the whole base family.
///
/// If any source arrives in a direction that is not `j` or one of its two
/// angular neighbors, two free turns reach every point of the plane, so the
/// whole next segment is produced and the scan stops. Otherwise each source
/// contributes the regions swept through the two directions flanking the
/// reverse of its arrival direction.
pub fn plus_two(
    base: &Families,
    j: usize,
    next_layer: usize,
    seg: &SegmentGeom,
    inst: &Instance,
) -> Vec<Interval> {
    let oset = &inst.oset;
    let triple = [oset.pred(j), j, oset.succ(j)];
    let mut links = None;
    for a in base.iter_all() {
        links = Some(a.links + 2);
        if !triple.contains(&a.dir) {
            return vec![full_interval(seg, next_layer, a.links + 2, j)];
        }
    }
    let Some(links) = links else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for a in base.iter_all() {
        let back = oset.opposite(a.dir);
        for turn in [oset.succ(back), oset.pred(back)] {
            if let Some(iv) =
                clip_to_interval(&turn_region(a, turn, inst), seg, next_layer, links, j)
            {
                out.push(iv);
            }
        }
    }
    out
}

/// Sort and merge intervals that overlap or touch, producing the canonical
/// maximal form. All inputs must share layer, link count, and direction.
pub fn merge_intervals(mut list: Vec<Interval>) -> Result<Vec<Interval>, EngineError> {
    if list.is_empty() {
        return Ok(list);
    }
    let (layer, links, dir) = (list[0].layer, list[0].links, list[0].dir);
    if list
        .iter()
        .any(|iv| iv.layer != layer || iv.links != links || iv.dir != dir)
    {
        return Err(EngineError::MixedMergeInput);
    }
    list.sort_by(|a, b| a.range.lo.cmp(&b.range.lo).then(a.range.hi.cmp(&b.range.hi)));
    let mut out: Vec<Interval> = Vec::with_capacity(list.len());
    for iv in list {
        match out.last_mut() {
            Some(last) if last.range.touches(&iv.range) => {
                if iv.range.hi > last.range.hi {
                    last.range.hi = iv.range.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    Ok(out)
}

fn merged_families(
    buckets: Vec<Vec<Interval>>,
) -> Result<Families, EngineError> {
    let mut fams = Families::new(buckets.len());
    for (j, bucket) in buckets.into_iter().enumerate() {
        fams.set_family(j, merge_intervals(bucket)?);
    }
    Ok(fams)
}

/// Run stage one and return the ledger.
pub fn run_stage_one(inst: &Instance) -> Result<Ledger, EngineError> {
    stage_one_trace(inst).map(|(ledger, _)| ledger)
}

/// Stage one with per-layer diagnostics.
pub fn stage_one_trace(inst: &Instance) -> Result<(Ledger, Vec<LayerTrace>), EngineError> {
    let report = inst.check();
    if !report.ok() {
        return Err(EngineError::InvalidInstance(report));
    }
    let m = inst.oset.len();
    let n = inst.segments.len();

    // The recurrence counts turns: its layer-zero families stand for the
    // not-yet-started path, and the first real link is created by extending
    // them. Presented link counts for layers past the start are therefore
    // the recurrence values plus one. A coincident start and end with no
    // segments is the one case with no first link at all.
    if n == 0 && inst.s == inst.t {
        let layers = vec![start_layer(m), coincident_end_layer(m)];
        return Ok((
            Ledger { layers },
            vec![LayerTrace {
                layer: 1,
                jump: 0,
                one_extra_bucket: vec![0; m],
                two_extra_bucket: Vec::new(),
            }],
        ));
    }

    let mut layers = vec![start_layer(m)];
    let mut traces = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let next = i + 1;
        let seg = inst.layer_segment(next);
        let (record, trace) = advance_layer(&layers[i], next, &seg, inst)?;
        layers.push(record);
        traces.push(trace);
    }
    for rec in layers.iter_mut().skip(1) {
        rec.links += 1;
        for fam in rec.base.per_dir.iter_mut().chain(rec.plus.per_dir.iter_mut()) {
            for iv in fam.iter_mut() {
                iv.links += 1;
            }
        }
    }
    Ok((Ledger { layers }, traces))
}

pub(crate) fn start_layer(m: usize) -> LayerRecord {
    let mut base = Families::new(m);
    let mut plus = Families::new(m);
    for j in 0..m {
        base.set_family(
            j,
            vec![Interval {
                layer: 0,
                range: ParamRange::point(rat(0)),
                links: 0,
                dir: j,
            }],
        );
        plus.set_family(
            j,
            vec![Interval {
                layer: 0,
                range: ParamRange::point(rat(0)),
                links: 1,
                dir: j,
            }],
        );
    }
    LayerRecord {
        layer: 0,
        links: 0,
        base,
        plus,
    }
}

fn coincident_end_layer(m: usize) -> LayerRecord {
    let mut rec = start_layer(m);
    rec.layer = 1;
    for fam in rec.base.per_dir.iter_mut().chain(rec.plus.per_dir.iter_mut()) {
        for iv in fam.iter_mut() {
            iv.layer = 1;
        }
    }
    rec
}

/// Intervals of one family kind with their extension regions, built once per
/// layer pass and reused across the per-direction constructions.
struct Swept<'a> {
    items: Vec<(&'a Interval, ConvexRegion)>,
}

impl<'a> Swept<'a> {
    fn build(fams: &'a Families, inst: &Instance) -> Self {
        Swept {
            items: fams
                .iter_all()
                .map(|a| (a, extension_region(a, inst)))
                .collect(),
        }
    }

    fn straight(&self, j: usize, next: usize, seg: &SegmentGeom) -> Vec<Interval> {
        self.items
            .iter()
            .filter(|(a, _)| a.dir == j)
            .filter_map(|(a, region)| clip_to_interval(region, seg, next, a.links, a.dir))
            .collect()
    }

    fn turned(&self, j: usize, next: usize, seg: &SegmentGeom, inst: &Instance) -> Vec<Interval> {
        self.items
            .iter()
            .filter(|(a, _)| a.dir != j)
            .filter_map(|(a, region)| {
                clip_to_interval(
                    &region.minkowski_ray(&inst.oset.dir(j)),
                    seg,
                    next,
                    a.links + 1,
                    j,
                )
            })
            .collect()
    }
}

/// One iteration of the propagation, producing the next layer record with
/// recurrence-level link counts.
fn advance_layer(
    cur: &LayerRecord,
    next: usize,
    seg: &SegmentGeom,
    inst: &Instance,
) -> Result<(LayerRecord, LayerTrace), EngineError> {
    let m = inst.oset.len();
    let l = cur.links;
    let base_swept = Swept::build(&cur.base, inst);
    let plus_swept = Swept::build(&cur.plus, inst);

    // Straight continuations from the base families fix the link count at
    // its current value when any of them lands.
    let mut base_new = merged_families(
        (0..m)
            .map(|j| base_swept.straight(j, next, seg))
            .collect(),
    )?;
    let mut jump = if base_new.all_empty() { None } else { Some(0) };

    // One extra link: straight continuations from the plus families together
    // with single turns from the base families of every other direction.
    // The destination of the whole batch depends on whether the link count
    // is already fixed, decided across all directions at once.
    let mut one_extra = Vec::with_capacity(m);
    for j in 0..m {
        let mut bucket = plus_swept.straight(j, next, seg);
        bucket.extend(base_swept.turned(j, next, seg, inst));
        one_extra.push(merge_intervals(bucket)?);
    }
    let one_extra_sizes: Vec<usize> = one_extra.iter().map(Vec::len).collect();

    let mut plus_new = Families::new(m);
    match jump {
        Some(0) => {
            for (j, bucket) in one_extra.into_iter().enumerate() {
                plus_new.set_family(j, bucket);
            }
        }
        _ => {
            if one_extra.iter().any(|b| !b.is_empty()) {
                jump = Some(1);
            }
            for (j, bucket) in one_extra.into_iter().enumerate() {
                base_new.set_family(j, bucket);
            }
        }
    }

    // Two extra links, only needed when the count grew: double turns from
    // the base families plus single turns from the other plus families. The
    // two flanking sweeps of each base interval do not depend on the target
    // direction, so they are clipped once and reused for every direction.
    let mut two_extra_sizes = Vec::new();
    if jump != Some(0) {
        let flank_clips: Vec<(&Interval, [Option<ParamRange>; 2])> = base_swept
            .items
            .iter()
            .map(|(a, region)| {
                let back = inst.oset.opposite(a.dir);
                let clips = [inst.oset.succ(back), inst.oset.pred(back)].map(|turn| {
                    region
                        .minkowski_ray(&inst.oset.dir(turn))
                        .clip_segment(seg)
                });
                (*a, clips)
            })
            .collect();
        let mut two_extra = Vec::with_capacity(m);
        for j in 0..m {
            let triple = [inst.oset.pred(j), j, inst.oset.succ(j)];
            let shortcut = flank_clips
                .iter()
                .find(|(a, _)| !triple.contains(&a.dir))
                .map(|(a, _)| a.links);
            let mut bucket = match shortcut {
                Some(links) => {
                    vec![full_interval(seg, next, links + 2, j)]
                }
                None => flank_clips
                    .iter()
                    .flat_map(|(a, clips)| {
                        clips.iter().flatten().map(move |range| Interval {
                            layer: next,
                            range: range.clone(),
                            links: a.links + 2,
                            dir: j,
                        })
                    })
                    .collect(),
            };
            bucket.extend(plus_swept.turned(j, next, seg, inst));
            two_extra.push(merge_intervals(bucket)?);
        }
        two_extra_sizes = two_extra.iter().map(Vec::len).collect();
        match jump {
            Some(1) => {
                for (j, bucket) in two_extra.into_iter().enumerate() {
                    plus_new.set_family(j, bucket);
                }
            }
            _ => {
                if two_extra.iter().any(|b| !b.is_empty()) {
                    jump = Some(2);
                    for (j, bucket) in two_extra.into_iter().enumerate() {
                        base_new.set_family(j, bucket);
                    }
                }
            }
        }
    }

    let Some(jump) = jump else {
        return Err(EngineError::InternalConsistency(String::from(
            "no reachable interval on the next layer",
        )));
    };

    // A jump of two means one more link reaches every point of the next
    // segment in every direction.
    if jump == 2 {
        for j in 0..m {
            plus_new.set_family(j, vec![full_interval(seg, next, l + 3, j)]);
        }
    }

    Ok((
        LayerRecord {
            layer: next,
            links: l + jump,
            base: base_new,
            plus: plus_new,
        },
        LayerTrace {
            layer: next,
            jump,
            one_extra_bucket: one_extra_sizes,
            two_extra_bucket: two_extra_sizes,
        },
    ))
}

#[cfg(test)]
mod tests;
