//! End-to-end guarantees of the solver, checked over a fixed generated
//! corpus and two timing sweeps. Each test prints a pass line with the
//! measured figures; run with `--nocapture` to see them.

use std::time::Instant;

use minlink_cli::bench::{log_log_slope, run_sweep, SweepSpec};
use minlink_cli::gen::{generate_instance, GenParams};
use minlink_core::engine::{extension_region, run_stage_one, stage_one_trace, Interval, Ledger};
use minlink_core::geom::{ParamRange, Point, SegmentGeom};
use minlink_core::instance::Instance;
use minlink_core::oracle::{
    compare_ledgers, oracle_min_links, oracle_reachable_sets, validate_tour, ORACLE_DEFAULT_TURNS,
};
use minlink_core::recovery::run_stage_two;

/// Fixed corpus: 500 seeds, segment counts up to 12, direction sets of size
/// 4, 6, and 8, coordinates bounded by 50.
fn corpus() -> Vec<Instance> {
    let mut out = Vec::with_capacity(500);
    for seed in 0..500u64 {
        let params = GenParams {
            n: (seed % 13) as usize,
            c_size: [4, 6, 8][(seed % 3) as usize],
            bound: 50,
            seed,
        };
        let (inst, _) = generate_instance(&params).expect("corpus generation");
        out.push(inst);
    }
    out
}

fn solve_ledger(inst: &Instance) -> Ledger {
    run_stage_one(inst).expect("stage one succeeds on valid instances")
}

#[test]
fn oracle_equivalence_on_corpus() {
    let start = Instant::now();
    let mut checked = 0usize;
    for (i, inst) in corpus().iter().enumerate() {
        let ledger = solve_ledger(inst);
        let brute = oracle_reachable_sets(inst, ORACLE_DEFAULT_TURNS)
            .unwrap_or_else(|e| panic!("oracle failed on instance {i}: {e}"));
        if let Some(diff) = compare_ledgers(&ledger, &brute) {
            panic!("instance {i}: {diff}");
        }
        let tour = run_stage_two(&ledger, inst).expect("recovery succeeds");
        let brute_links = oracle_min_links(inst).expect("oracle link count");
        assert_eq!(
            tour.link_count as u32, brute_links,
            "instance {i}: tour links vs oracle"
        );
        checked += 1;
    }
    println!(
        "PASS oracle equivalence: {checked} instances, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn tours_are_valid_on_corpus() {
    let mut checked = 0usize;
    for (i, inst) in corpus().iter().enumerate() {
        let ledger = solve_ledger(inst);
        let tour = run_stage_two(&ledger, inst).expect("recovery succeeds");
        let report = validate_tour(inst, &tour);
        assert!(report.ok(), "instance {i}: {report}");
        assert_eq!(
            tour.link_count as u32,
            ledger.link_count(),
            "instance {i}: tour links vs ledger"
        );
        checked += 1;
    }
    println!("PASS tour validity: {checked} instances");
}

#[test]
fn link_counts_and_family_sizes_are_bounded() {
    let mut checked = 0usize;
    for (i, inst) in corpus().iter().enumerate() {
        let ledger = solve_ledger(inst);
        for w in ledger.layers.windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            assert!(
                cur.links >= prev.links && cur.links <= prev.links + 2,
                "instance {i}: link count moved from {} to {} at layer {}",
                prev.links,
                cur.links,
                cur.layer
            );
        }
        for rec in &ledger.layers {
            let cap = 2 * rec.layer + 1;
            for j in 0..inst.oset.len() {
                assert!(
                    rec.base.family(j).len() <= cap,
                    "instance {i}: base family {j} at layer {} has {} intervals (cap {cap})",
                    rec.layer,
                    rec.base.family(j).len()
                );
                assert!(
                    rec.plus.family(j).len() <= cap,
                    "instance {i}: plus family {j} at layer {} has {} intervals (cap {cap})",
                    rec.layer,
                    rec.plus.family(j).len()
                );
            }
        }
        checked += 1;
    }
    println!("PASS link-count and family-size bounds: {checked} instances");
}

#[test]
fn construction_bucket_sizes_are_bounded() {
    let mut checked = 0usize;
    for (i, inst) in corpus().iter().enumerate() {
        let (ledger, traces) = stage_one_trace(inst).expect("stage one succeeds");
        for trace in &traces {
            let prev = &ledger.layers[trace.layer - 1];
            for j in 0..inst.oset.len() {
                let opp = inst.oset.opposite(j);
                let cap_one = prev.base.family(opp).len().max(prev.plus.family(j).len()) + 2;
                assert!(
                    trace.one_extra_bucket[j] <= cap_one,
                    "instance {i}: one-extra bucket for direction {j} at layer {} has {} intervals (cap {cap_one})",
                    trace.layer,
                    trace.one_extra_bucket[j]
                );
                if !trace.two_extra_bucket.is_empty() {
                    let cap_two = prev.plus.family(opp).len() + 2;
                    assert!(
                        trace.two_extra_bucket[j] <= cap_two,
                        "instance {i}: two-extra bucket for direction {j} at layer {} has {} intervals (cap {cap_two})",
                        trace.layer,
                        trace.two_extra_bucket[j]
                    );
                }
            }
        }
        checked += 1;
    }
    println!("PASS construction bucket bounds: {checked} instances");
}

#[test]
fn containment_and_exclusivity_hold_on_corpus() {
    let mut checked = 0usize;
    for (idx, inst) in corpus().iter().enumerate() {
        let ledger = solve_ledger(inst);
        let m = inst.oset.len();
        for rec in &ledger.layers {
            if rec.layer == 0 {
                continue;
            }
            // Containment: every base interval sits inside some plus
            // interval of every other direction.
            for a in rec.base.iter_all() {
                for j in 0..m {
                    if j == a.dir {
                        continue;
                    }
                    assert!(
                        rec.plus
                            .family(j)
                            .iter()
                            .any(|b| b.range.contains_range(&a.range)),
                        "instance {idx}: base interval on layer {} not inside any plus interval of direction {j}",
                        rec.layer
                    );
                }
            }
            // Exclusivity: opposite-direction families cannot both reach the
            // next segment by straight extension.
            if rec.layer + 1 < ledger.layers.len() {
                let next_seg = inst.layer_segment(rec.layer + 1);
                let hits = |j: usize| -> bool {
                    rec.base
                        .family(j)
                        .iter()
                        .chain(rec.plus.family(j))
                        .any(|a| extension_region(a, inst).clip_segment(&next_seg).is_some())
                };
                for j in 0..m {
                    let opp = inst.oset.opposite(j);
                    if j < opp {
                        assert!(
                            !(hits(j) && hits(opp)),
                            "instance {idx}: opposite directions {j}/{opp} both extend onto layer {}",
                            rec.layer + 1
                        );
                    }
                }
            }
        }
        checked += 1;
    }
    println!("PASS containment and exclusivity: {checked} instances");
}

#[test]
fn double_jumps_fill_the_plus_families() {
    let mut checked = 0usize;
    let mut jumps = 0usize;
    for (idx, inst) in corpus().iter().enumerate() {
        let ledger = solve_ledger(inst);
        for w in ledger.layers.windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            if cur.links != prev.links + 2 {
                continue;
            }
            jumps += 1;
            let seg = inst.layer_segment(cur.layer);
            let full = if seg.is_point() {
                ParamRange::point(minlink_core::geom::rat(0))
            } else {
                ParamRange::full()
            };
            for j in 0..inst.oset.len() {
                let fam = cur.plus.family(j);
                assert!(
                    fam.len() == 1 && fam[0].range == full,
                    "instance {idx}: plus family {j} at layer {} is not the whole segment",
                    cur.layer
                );
            }
        }
        checked += 1;
    }
    println!("PASS double-jump fullness: {checked} instances, {jumps} double jumps seen");
}

#[test]
fn worked_micro_instance() {
    let oset =
        minlink_core::instance::OrientationSet::build(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
            .unwrap();
    let inst = Instance::new(
        oset,
        Point::from_ints(0, 0),
        Point::from_ints(4, 0),
        vec![SegmentGeom::new(
            Point::from_ints(2, 1),
            Point::from_ints(2, 3),
        )],
    )
    .unwrap();
    let ledger = solve_ledger(&inst);
    let tour = run_stage_two(&ledger, &inst).expect("recovery succeeds");
    assert_eq!(tour.link_count, 3);
    assert_eq!(
        tour.vertices,
        vec![
            Point::from_ints(0, 0),
            Point::from_ints(0, 1),
            Point::from_ints(4, 1),
            Point::from_ints(4, 0),
        ]
    );
    assert_eq!(tour.visit_points.len(), 1);
    let (seg_idx, p1) = &tour.visit_points[0];
    assert_eq!(*seg_idx, 1);
    assert!(minlink_core::geom::point_on_segment(
        p1,
        &inst.segments[0].geom
    ));
    println!("PASS worked micro-instance: 3-link staircase with visit {p1}");
}

#[test]
fn scaling_general_direction_sets() {
    let spec = SweepSpec {
        ns: vec![100, 200, 400, 800],
        c_size: 6,
        seeds: vec![0, 1, 2, 3, 4],
        bound: 50,
    };
    let start = Instant::now();
    let rows = run_sweep(&spec).expect("sweep succeeds");
    let elapsed = start.elapsed().as_secs_f64();
    let slope = log_log_slope(&rows).expect("slope defined");
    println!(
        "PASS scaling (six directions): slope {slope:.3} (cap 2.3), sweep {elapsed:.1}s (cap 120s)"
    );
    assert!(
        slope <= 2.3,
        "log-log slope {slope:.3} exceeds 2.3; rows: {rows:?}"
    );
    assert!(elapsed < 120.0, "sweep took {elapsed:.1}s, over the 2 minute cap");
}

#[test]
fn scaling_rectilinear() {
    let spec = SweepSpec {
        ns: vec![1000, 2000, 4000, 8000],
        c_size: 4,
        seeds: vec![0, 1, 2],
        bound: 50,
    };
    let rows = run_sweep(&spec).expect("sweep succeeds");
    let slope = log_log_slope(&rows).expect("slope defined");
    let max_family = rows.iter().map(|r| r.max_family).max().unwrap_or(0);
    println!(
        "PASS rectilinear scaling: slope {slope:.3} (cap 1.3), max family size {max_family} (cap 4)"
    );
    assert!(
        max_family <= 4,
        "per-direction family size {max_family} exceeds the constant bound"
    );
    assert!(
        slope <= 1.3,
        "log-log slope {slope:.3} exceeds 1.3; rows: {rows:?}"
    );
}

/// Not an acceptance criterion by itself, but the stated oracle
/// self-consistency property: a larger per-hop budget never changes the
/// stored families on the corpus prefix.
#[test]
fn oracle_budget_is_stable() {
    for (i, inst) in corpus().iter().take(60).enumerate() {
        let two = oracle_reachable_sets(inst, 2).expect("budget two");
        let three = oracle_reachable_sets(inst, 3).expect("budget three");
        assert!(
            compare_ledgers(&two, &three).is_none(),
            "instance {i}: oracle families changed between budgets two and three"
        );
    }
    println!("PASS oracle budget stability: 60 instances");
}

#[allow(dead_code)]
fn debug_interval(iv: &Interval) -> String {
    format!(
        "layer {} dir {} links {} [{}, {}]",
        iv.layer, iv.dir, iv.links, iv.range.lo, iv.range.hi
    )
}
