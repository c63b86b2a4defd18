use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::geom::{ratio, Degeneracy, Direction, Rational};
use crate::instance::{Instance, OrientationSet};

fn c4() -> OrientationSet {
    OrientationSet::build(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap()
}

fn dir_index(oset: &OrientationSet, dx: i64, dy: i64) -> usize {
    oset.index_of(&Direction::new(dx, dy).unwrap()).unwrap()
}

fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> SegmentGeom {
    SegmentGeom::new(Point::from_ints(ax, ay), Point::from_ints(bx, by))
}

/// The staircase micro-instance: start (0,0), end (4,0), one vertical
/// segment (2,1)-(2,3) between them.
fn micro_instance() -> Instance {
    Instance::new(
        c4(),
        Point::from_ints(0, 0),
        Point::from_ints(4, 0),
        vec![seg(2, 1, 2, 3)],
    )
    .unwrap()
}

fn no_segment_instance() -> Instance {
    Instance::new(c4(), Point::from_ints(0, 0), Point::from_ints(4, 0), vec![]).unwrap()
}

fn interval(layer: usize, lo: Rational, hi: Rational, links: u32, dir: usize) -> Interval {
    Interval {
        layer,
        range: ParamRange::new(lo, hi),
        links,
        dir,
    }
}

#[test]
fn extension_region_of_horizontal_interval() {
    let inst = Instance::new(
        c4(),
        Point::from_ints(-5, -5),
        Point::from_ints(9, 9),
        vec![seg(0, 0, 2, 0)],
    )
    .unwrap();
    let north = dir_index(&inst.oset, 0, 1);
    let a = interval(1, rat(0), rat(1), 1, north);
    let r = extension_region(&a, &inst);
    assert_eq!(r.degeneracy(), Degeneracy::FullDim);
    assert!(r.contains(&Point::from_ints(1, 5)));
    assert!(r.contains(&Point::from_ints(0, 0)));
    assert!(!r.contains(&Point::from_ints(3, 1)));
    assert!(!r.contains(&Point::from_ints(1, -1)));
}

#[test]
fn extension_region_of_point_is_a_ray() {
    let inst = no_segment_instance();
    let north = dir_index(&inst.oset, 0, 1);
    let a = interval(0, rat(0), rat(0), 1, north);
    let r = extension_region(&a, &inst);
    assert_eq!(r.degeneracy(), Degeneracy::RayLike);
    assert!(r.contains(&Point::from_ints(0, 7)));
    assert!(!r.contains(&Point::from_ints(1, 7)));
}

#[test]
fn extension_region_parallel_to_carrier_is_a_ray() {
    let inst = micro_instance();
    let north = dir_index(&inst.oset, 0, 1);
    let a = interval(1, rat(0), rat(1), 2, north);
    let r = extension_region(&a, &inst);
    assert_eq!(r.degeneracy(), Degeneracy::RayLike);
    assert!(r.contains(&Point::from_ints(2, 1)));
    assert!(r.contains(&Point::from_ints(2, 9)));
    assert!(!r.contains(&Point::from_ints(2, 0)));
}

#[test]
fn turn_region_examples() {
    let inst = micro_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let south = dir_index(&inst.oset, 0, -1);
    // Vertical interval arriving east, then a turn south: {x >= 2, y <= 3}.
    let a = interval(1, rat(0), rat(1), 2, east);
    let r = turn_region(&a, south, &inst);
    for (p, inside) in [
        (Point::from_ints(4, 0), true),
        (Point::from_ints(2, 3), true),
        (Point::from_ints(9, -9), true),
        (Point::from_ints(1, 0), false),
        (Point::from_ints(4, 4), false),
    ] {
        assert_eq!(r.contains(&p), inside, "{p}");
    }

    let horizontal = Instance::new(
        c4(),
        Point::from_ints(-5, -5),
        Point::from_ints(9, 9),
        vec![seg(0, 0, 2, 0)],
    )
    .unwrap();
    let north = dir_index(&horizontal.oset, 0, 1);
    let a = interval(1, rat(0), rat(1), 1, north);
    // Reversing turn widens the semi-slab to the full slab {0 <= x <= 2}.
    let slab = turn_region(&a, south, &horizontal);
    assert!(slab.contains(&Point::from_ints(1, -9)));
    assert!(slab.contains(&Point::from_ints(1, 9)));
    assert!(!slab.contains(&Point::from_ints(3, 0)));
    // Turn east: the quadrant {x >= 0, y >= 0}.
    let quadrant = turn_region(&a, east, &horizontal);
    assert!(quadrant.contains(&Point::from_ints(5, 0)));
    assert!(quadrant.contains(&Point::from_ints(0, 5)));
    assert!(!quadrant.contains(&Point::from_ints(-1, 5)));
    assert!(!quadrant.contains(&Point::from_ints(5, -1)));
}

#[test]
fn plus_zero_clips_against_next_segment() {
    let inst = Instance::new(
        c4(),
        Point::from_ints(-5, -5),
        Point::from_ints(9, 9),
        vec![seg(0, 0, 2, 0)],
    )
    .unwrap();
    let north = dir_index(&inst.oset, 0, 1);
    let fam = vec![interval(1, rat(0), rat(1), 1, north)];

    let inside = SegmentGeom::new(
        Point::new(ratio(1, 2), rat(3)),
        Point::new(ratio(3, 2), rat(3)),
    );
    let got = plus_zero(&fam, 2, &inside, &inst);
    assert_eq!(got, vec![interval(2, rat(0), rat(1), 1, north)]);

    let outside = seg(3, 1, 3, 2);
    assert!(plus_zero(&fam, 2, &outside, &inst).is_empty());
}

#[test]
fn plus_zero_collinear_overlap() {
    let inst = no_segment_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let fam = vec![interval(0, rat(0), rat(0), 0, east)];
    let collinear = seg(-1, 0, 5, 0);
    let got = plus_zero(&fam, 1, &collinear, &inst);
    assert_eq!(got, vec![interval(1, ratio(1, 6), rat(1), 0, east)]);
}

#[test]
fn plus_one_reaches_end_point_southward_only() {
    let inst = micro_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let south = dir_index(&inst.oset, 0, -1);
    let north = dir_index(&inst.oset, 0, 1);
    let a = interval(1, rat(0), rat(1), 2, east);
    let t_seg = SegmentGeom::point(Point::from_ints(4, 0));

    let got = plus_one([&a], south, 2, &t_seg, &inst);
    assert_eq!(got, vec![interval(2, rat(0), rat(0), 3, south)]);

    assert!(plus_one([&a], north, 2, &t_seg, &inst).is_empty());
}

#[test]
fn plus_one_from_start_wedge_covers_segment() {
    let inst = micro_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let north = dir_index(&inst.oset, 0, 1);
    let a = interval(0, rat(0), rat(0), 1, north);
    let e1 = inst.layer_segment(1);
    let got = plus_one([&a], east, 1, &e1, &inst);
    assert_eq!(got, vec![interval(1, rat(0), rat(1), 2, east)]);
}

#[test]
fn plus_two_whole_segment_shortcut() {
    let inst = micro_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let west = dir_index(&inst.oset, -1, 0);
    let mut base = Families::new(4);
    base.set_family(east, vec![interval(1, rat(0), rat(1), 2, east)]);
    let t_seg = SegmentGeom::point(Point::from_ints(4, 0));
    // West is not adjacent to east: two free turns reach everything.
    let got = plus_two(&base, west, 2, &t_seg, &inst);
    assert_eq!(got, vec![interval(2, rat(0), rat(0), 4, west)]);
}

#[test]
fn plus_two_flanking_sweeps() {
    let inst = micro_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let mut base = Families::new(4);
    base.set_family(east, vec![interval(1, rat(0), rat(1), 2, east)]);
    let t_seg = SegmentGeom::point(Point::from_ints(4, 0));
    // Ending east again: only the two sweeps flanking west are examined.
    // The southern sweep {x >= 2, y <= 3} reaches (4,0); the northern one
    // {x >= 2, y >= 1} does not.
    let got = plus_two(&base, east, 2, &t_seg, &inst);
    assert_eq!(got, vec![interval(2, rat(0), rat(0), 4, east)]);
}

#[test]
fn plus_two_empty_base() {
    let inst = micro_instance();
    let base = Families::new(4);
    let t_seg = SegmentGeom::point(Point::from_ints(4, 0));
    assert!(plus_two(&base, 0, 2, &t_seg, &inst).is_empty());
}

#[test]
fn merge_overlapping_touching_disjoint() {
    let iv = |lo: Rational, hi: Rational| interval(1, lo, hi, 2, 0);
    let got = merge_intervals(vec![
        iv(ratio(2, 10), ratio(5, 10)),
        iv(ratio(4, 10), ratio(7, 10)),
    ])
    .unwrap();
    assert_eq!(got, vec![iv(ratio(2, 10), ratio(7, 10))]);

    let got = merge_intervals(vec![iv(rat(0), ratio(3, 10)), iv(ratio(3, 10), ratio(6, 10))])
        .unwrap();
    assert_eq!(got, vec![iv(rat(0), ratio(6, 10))]);

    let got = merge_intervals(vec![iv(rat(0), ratio(2, 10)), iv(ratio(5, 10), ratio(6, 10))])
        .unwrap();
    assert_eq!(got.len(), 2);
}

#[test]
fn merge_rejects_mixed_labels() {
    let a = interval(1, rat(0), rat(1), 2, 0);
    let b = interval(1, rat(0), rat(1), 3, 0);
    assert!(matches!(
        merge_intervals(vec![a, b]),
        Err(EngineError::MixedMergeInput)
    ));
}

#[test]
fn stage_one_on_micro_instance() {
    let inst = micro_instance();
    let ledger = run_stage_one(&inst).unwrap();
    assert_eq!(ledger.layers.len(), 3);

    let east = dir_index(&inst.oset, 1, 0);
    let north = dir_index(&inst.oset, 0, 1);
    let west = dir_index(&inst.oset, -1, 0);
    let south = dir_index(&inst.oset, 0, -1);

    let l1 = ledger.layer(1);
    assert_eq!(l1.links, 2);
    assert_eq!(
        l1.base.family(east),
        &[interval(1, rat(0), rat(1), 2, east)]
    );
    assert_eq!(
        l1.base.family(north),
        &[interval(1, rat(0), rat(1), 2, north)]
    );
    assert!(l1.base.family(west).is_empty());
    assert!(l1.base.family(south).is_empty());
    // Link count jumped by two: every spare family is the full segment.
    for j in 0..4 {
        assert_eq!(l1.plus.family(j), &[interval(1, rat(0), rat(1), 3, j)]);
    }

    let l2 = ledger.layer(2);
    assert_eq!(l2.links, 3);
    assert_eq!(
        l2.base.family(south),
        &[interval(2, rat(0), rat(0), 3, south)]
    );
    assert!(l2.base.family(east).is_empty());
    assert!(l2.base.family(west).is_empty());
    assert!(l2.base.family(north).is_empty());
    assert_eq!(ledger.link_count(), 3);
}

#[test]
fn stage_one_without_segments() {
    let inst = no_segment_instance();
    let ledger = run_stage_one(&inst).unwrap();
    let east = dir_index(&inst.oset, 1, 0);
    let l1 = ledger.layer(1);
    assert_eq!(l1.links, 1);
    assert_eq!(l1.base.family(east), &[interval(1, rat(0), rat(0), 1, east)]);
    for j in 0..4 {
        if j != east {
            assert!(l1.base.family(j).is_empty());
        }
    }
    assert_eq!(ledger.link_count(), 1);
}

#[test]
fn stage_one_coincident_endpoints() {
    let inst = Instance::new(c4(), Point::from_ints(0, 0), Point::from_ints(0, 0), vec![])
        .unwrap();
    let ledger = run_stage_one(&inst).unwrap();
    assert_eq!(ledger.link_count(), 0);
    for j in 0..4 {
        assert_eq!(
            ledger.layer(1).base.family(j),
            &[interval(1, rat(0), rat(0), 0, j)]
        );
    }
}

#[test]
fn stage_one_start_layer_shape() {
    let inst = micro_instance();
    let ledger = run_stage_one(&inst).unwrap();
    let l0 = ledger.layer(0);
    assert_eq!(l0.links, 0);
    for j in 0..4 {
        assert_eq!(l0.base.family(j), &[interval(0, rat(0), rat(0), 0, j)]);
        assert_eq!(l0.plus.family(j), &[interval(0, rat(0), rat(0), 1, j)]);
    }
}

#[test]
fn oriented_endpoint_roles() {
    let inst = micro_instance();
    let east = dir_index(&inst.oset, 1, 0);
    let north = dir_index(&inst.oset, 0, 1);
    // Vertical segment from (2,1) to (2,3), approached travelling east: the
    // upper endpoint sees the lower one on its right.
    let a = interval(1, rat(0), rat(1), 2, east);
    let (a1, a2) = a.oriented_endpoints(&inst);
    assert_eq!(a1, Point::from_ints(2, 3));
    assert_eq!(a2, Point::from_ints(2, 1));
    // Travelling north along the carrier: trailing endpoint first.
    let b = interval(1, rat(0), rat(1), 2, north);
    let (b1, b2) = b.oriented_endpoints(&inst);
    assert_eq!(b1, Point::from_ints(2, 1));
    assert_eq!(b2, Point::from_ints(2, 3));
}

proptest! {
    #[test]
    fn merge_is_canonical(ranges in proptest::collection::vec((0i64..=20, 0i64..=20), 0..8)) {
        let list: Vec<Interval> = ranges
            .iter()
            .map(|(a, b)| {
                let (lo, hi) = if a <= b { (*a, *b) } else { (*b, *a) };
                interval(1, ratio(lo, 20), ratio(hi, 20), 2, 0)
            })
            .collect();
        let merged = merge_intervals(list.clone()).unwrap();
        // Sorted, pairwise separated by a positive gap.
        for w in merged.windows(2) {
            prop_assert!(w[0].range.hi < w[1].range.lo);
        }
        // Union preserved: every input endpoint stays covered, every merged
        // endpoint comes from some input.
        for iv in &list {
            prop_assert!(merged.iter().any(|m| m.range.contains_range(&iv.range)));
        }
        for m in &merged {
            prop_assert!(list.iter().any(|iv| iv.range.lo == m.range.lo));
            prop_assert!(list.iter().any(|iv| iv.range.hi == m.range.hi));
        }
    }
}
